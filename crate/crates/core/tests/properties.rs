use proptest::prelude::*;

use smorph_core::engine::generated_congruence_traced;
use smorph_core::oracle::{oracle_generated, oracle_is_least_closed};
use smorph_core::residuated::{
    check_axioms, congruence_to_filter, filter_to_congruence, filters, mv_skeleton_algebra, AlgebraClass,
    FilterMode, ResiduatedView,
};
use smorph_core::tnorm::{make_chain, residuum_from_table, tnorm_table, ChainKind, ChainSpec, ComponentKind};
use smorph_core::{
    cep_extension, congruence_lattice, enumerate_morphisms, eval_term, find_isomorphism, monolith, Caps,
    Congruence, FiniteAlgebra, MorphismMode, Signature, Term,
};

fn groupoid_signature() -> Signature {
    Signature::new([("f", 2), ("g", 1)]).unwrap()
}

/// Random algebras with one binary and one unary operation.
fn small_algebra(max: usize) -> impl Strategy<Value = FiniteAlgebra> {
    (1..=max).prop_flat_map(|n| {
        (
            prop::collection::vec(0..n, n * n),
            prop::collection::vec(0..n, n),
        )
            .prop_map(move |(f, g)| FiniteAlgebra::new(groupoid_signature(), n, vec![f, g]).unwrap())
    })
}

fn component() -> impl Strategy<Value = (ComponentKind, usize)> {
    (prop::bool::ANY, 1usize..=3).prop_map(|(l, k)| {
        (if l { ComponentKind::Lukasiewicz } else { ComponentKind::Goedel }, k)
    })
}

fn chain_spec() -> impl Strategy<Value = ChainSpec> {
    prop_oneof![
        (1usize..=7).prop_map(ChainSpec::lukasiewicz),
        (1usize..=7).prop_map(ChainSpec::goedel),
        prop::collection::vec(component(), 1..=3).prop_map(ChainSpec::ordinal_sum),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn variable_evaluates_to_environment_entry(alg in small_algebra(5), seed in prop::collection::vec(0usize..100, 3), v in 0usize..3) {
        let env: Vec<usize> = seed.iter().map(|s| s % alg.size()).collect();
        prop_assert_eq!(eval_term(&alg, &Term::var(v), &env).unwrap(), env[v]);
    }

    #[test]
    fn product_quotient_recovers_factor(a in small_algebra(3), b in small_algebra(3)) {
        let (prod, p1, p2) = a.product(&b).unwrap();
        for (factor, proj) in [(&a, &p1), (&b, &p2)] {
            let (q, _) = prod.quotient(&Congruence::kernel(proj.map())).unwrap();
            prop_assert!(find_isomorphism(&q, factor).unwrap().is_some());
        }
    }

    #[test]
    fn enumerated_morphisms_verify(a in small_algebra(4), b in small_algebra(3)) {
        for m in enumerate_morphisms(&a, &b, MorphismMode::All).unwrap() {
            prop_assert!(m.verify(&a, &b).is_ok());
        }
        for m in enumerate_morphisms(&a, &a, MorphismMode::IdempotentEndomorphisms).unwrap() {
            prop_assert!(m.verify(&a, &a).is_ok());
            prop_assert!((0..a.size()).all(|x| m.apply(m.apply(x)) == m.apply(x)));
        }
    }

    #[test]
    fn generated_subuniverse_is_least(alg in small_algebra(6), gens in prop::collection::vec(0usize..6, 0..3)) {
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g < alg.size()).collect();
        let set = alg.subuniverse_generated(&gens).unwrap();
        prop_assert!(oracle_is_least_closed(&alg, &gens, &set).unwrap());
    }

    #[test]
    fn generated_congruence_agrees_with_oracle(alg in small_algebra(6), raw in prop::collection::vec((0usize..6, 0usize..6), 0..3)) {
        let n = alg.size();
        let pairs: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let fast = smorph_core::generated_congruence(&alg, &pairs).unwrap();
        prop_assert_eq!(fast, oracle_generated(&alg, &pairs).unwrap());
    }

    #[test]
    fn malcev_witnesses_replay(alg in small_algebra(5), raw in prop::collection::vec((0usize..5, 0usize..5), 1..3)) {
        let n = alg.size();
        let pairs: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let traced = generated_congruence_traced(&alg, &pairs).unwrap();
        for (a, b) in traced.congruence().pairs() {
            let w = traced.witness(&alg, a, b).unwrap();
            prop_assert!(w.replay(&alg, &pairs).is_ok());
        }
    }

    #[test]
    fn monolith_below_every_nontrivial_congruence(alg in small_algebra(5)) {
        let lattice = congruence_lattice(&alg, &Caps::default()).unwrap();
        if let Some(m) = monolith(&alg).unwrap() {
            prop_assert!(!m.is_identity());
            for theta in lattice.iter().filter(|t| !t.is_identity()) {
                prop_assert!(m.le(theta));
            }
        } else if alg.size() > 1 {
            let atoms: Vec<&Congruence> = lattice.iter().filter(|t| !t.is_identity()).collect();
            let meet = atoms.iter().fold(Congruence::total(alg.size()), |acc, t| acc.meet(t));
            prop_assert!(meet.is_identity());
        }
    }

    #[test]
    fn lattice_join_laws(alg in small_algebra(5)) {
        let lattice = congruence_lattice(&alg, &Caps::default()).unwrap();
        let delta = Congruence::identity(alg.size());
        for x in &lattice {
            prop_assert_eq!(&x.join(&delta), x);
            prop_assert_eq!(&x.join(x), x);
            for y in &lattice {
                let xy = x.join(y);
                prop_assert_eq!(&xy, &y.join(x));
                prop_assert!(lattice.contains(&xy));
                for z in lattice.iter().take(6) {
                    prop_assert_eq!(xy.join(z), x.join(&y.join(z)));
                }
            }
        }
    }

    #[test]
    fn cep_extension_restricts_exactly(alg in small_algebra(5), gens in prop::collection::vec(0usize..5, 1..3)) {
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g < alg.size()).collect();
        prop_assume!(!gens.is_empty());
        let (_, sub, incl) = smorph_core::algebra::subuniverse_generated(&alg, &gens).unwrap();
        for theta in congruence_lattice(&sub, &Caps::default()).unwrap() {
            if let Some(phi) = cep_extension(&alg, &sub, &incl, &theta, &Caps::default()).unwrap() {
                prop_assert_eq!(phi.restrict(incl.map()), theta);
                prop_assert!(alg.is_compatible(&phi));
            }
        }
    }

    #[test]
    fn chains_pass_bl_and_residuation(spec in chain_spec()) {
        let chain = make_chain(&spec).unwrap();
        prop_assert!(check_axioms(&chain, AlgebraClass::Bl).unwrap().holds());
        let pure_lukasiewicz = match &spec.kind {
            ChainKind::Lukasiewicz => true,
            ChainKind::OrdinalSum(parts) => parts.len() == 1 && (parts[0].0 == ComponentKind::Lukasiewicz || parts[0].1 == 1),
            _ => spec.steps == 1,
        };
        prop_assert_eq!(check_axioms(&chain, AlgebraClass::Mv).unwrap().holds(), pure_lukasiewicz);
        let table = tnorm_table(&spec).unwrap();
        let r = residuum_from_table(&table);
        prop_assert_eq!(r.adjointness_failure, None);
        let n = table.size;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    prop_assert_eq!(table.get(z, x) <= y, z <= r.table[x * n + y]);
                }
                // divisibility
                prop_assert_eq!(x.min(y), table.get(x, r.table[x * n + y]));
            }
        }
    }

    #[test]
    fn single_component_sum_is_that_component(kind in prop::bool::ANY, steps in 1usize..=7) {
        let (component, plain) = if kind {
            (ComponentKind::Lukasiewicz, ChainSpec::lukasiewicz(steps))
        } else {
            (ComponentKind::Goedel, ChainSpec::goedel(steps))
        };
        let sum = ChainSpec::ordinal_sum(vec![(component, steps)]);
        prop_assert_eq!(tnorm_table(&sum).unwrap(), tnorm_table(&plain).unwrap());
    }

    #[test]
    fn filters_round_trip(spec in chain_spec(), square in prop::bool::ANY) {
        let chain = make_chain(&spec).unwrap();
        let alg = if square && chain.size() <= 4 { chain.product(&chain).unwrap().0 } else { chain };
        let v = ResiduatedView::new(&alg).unwrap();
        let all = filters(&v, FilterMode::All);
        let lattice = congruence_lattice(&alg, &Caps { lattice: 16, ..Caps::default() }).unwrap();
        prop_assert_eq!(all.len(), lattice.len());
        for f in &all {
            let theta = filter_to_congruence(&v, f).unwrap();
            prop_assert_eq!(&congruence_to_filter(&v, &theta).unwrap(), f);
        }
        for theta in &lattice {
            let f = congruence_to_filter(&v, theta).unwrap();
            prop_assert_eq!(&filter_to_congruence(&v, &f).unwrap(), theta);
        }
        let (skeleton, _) = mv_skeleton_algebra(&v).unwrap();
        prop_assert!(check_axioms(&skeleton, AlgebraClass::Mv).unwrap().holds());
    }
}
