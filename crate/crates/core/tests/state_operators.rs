use smorph_core::residuated::{check_state_operator, enumerate_state_operators, ResiduatedView};
use smorph_core::tnorm::{boolean_algebra, goedel_chain, lukasiewicz_chain, make_chain, ChainSpec, ComponentKind};
use smorph_core::FiniteAlgebra;

/// Every map `n → n`, kept if all five state-operator axioms hold.
fn brute_force(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let v = ResiduatedView::new(alg).unwrap();
    let n = alg.size();
    let total = n.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut tau = vec![0; n];
        for t in tau.iter_mut().rev() {
            *t = c % n;
            c /= n;
        }
        if check_state_operator(&v, &tau).unwrap().is_state_operator() {
            out.push(tau);
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    let b = boolean_algebra();
    let mut algebras = vec![b.product(&b).unwrap().0];
    for n in 1..=4 {
        algebras.push(lukasiewicz_chain(n));
        algebras.push(goedel_chain(n));
    }
    algebras.push(make_chain(&ChainSpec::ordinal_sum(vec![(ComponentKind::Lukasiewicz, 2), (ComponentKind::Goedel, 2)])).unwrap());
    let g = goedel_chain(2);
    algebras.push(g.product(&b).unwrap().0);
    for alg in &algebras {
        let v = ResiduatedView::new(alg).unwrap();
        assert_eq!(enumerate_state_operators(&v), brute_force(alg), "size {}", alg.size());
    }
}
