use smorph_core::oracle::{oracle_filters, oracle_generated, oracle_lattice};
use smorph_core::residuated::{filters, FilterMode, ResiduatedView};
use smorph_core::tnorm::{boolean_algebra, goedel_chain, lukasiewicz_chain, make_chain, ChainSpec, ComponentKind};
use smorph_core::{congruence_lattice, generated_congruence, Caps, FiniteAlgebra};

fn small_bl() -> Vec<(String, FiniteAlgebra)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("luk{n}"), lukasiewicz_chain(n)));
    }
    for n in 2..=5 {
        out.push((format!("goedel{n}"), goedel_chain(n)));
    }
    let spec = ChainSpec::ordinal_sum(vec![(ComponentKind::Lukasiewicz, 2), (ComponentKind::Goedel, 2)]);
    out.push(("sum-l2-g2".into(), make_chain(&spec).unwrap()));
    let b = boolean_algebra();
    out.push(("bool-square".into(), b.product(&b).unwrap().0));
    out
}

#[test]
fn generated_congruence_matches_partition_oracle() {
    for (name, alg) in small_bl() {
        let n = alg.size();
        for a in 0..n {
            for b in 0..n {
                let fast = generated_congruence(&alg, &[(a, b)]).unwrap();
                let slow = oracle_generated(&alg, &[(a, b)]).unwrap();
                assert_eq!(fast, slow, "{name}: Θ({a},{b})");
            }
        }
        let fast = generated_congruence(&alg, &[(0, n - 1), (n / 2, n - 1)]).unwrap();
        let slow = oracle_generated(&alg, &[(0, n - 1), (n / 2, n - 1)]).unwrap();
        assert_eq!(fast, slow, "{name}: two pairs");
    }
}

#[test]
fn lattice_matches_partition_oracle() {
    for (name, alg) in small_bl() {
        let fast = congruence_lattice(&alg, &Caps::default()).unwrap();
        assert_eq!(fast, oracle_lattice(&alg).unwrap(), "{name}");
    }
}

#[test]
fn filters_match_subset_oracle_and_lattice_size() {
    for (name, alg) in small_bl() {
        let v = ResiduatedView::new(&alg).unwrap();
        let fast = filters(&v, FilterMode::All);
        assert_eq!(fast, oracle_filters(&v).unwrap(), "{name}");
        assert_eq!(fast.len(), congruence_lattice(&alg, &Caps::default()).unwrap().len(), "{name}");
    }
}

#[test]
fn oracle_rejects_large_universes() {
    assert!(oracle_lattice(&lukasiewicz_chain(7)).is_err());
}
