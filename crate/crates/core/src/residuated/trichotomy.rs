use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::names::{IMP, MUL, TOP};
use super::{boolean_elements, disjunction_violation, ker_tau_bl, structure_probes, ResiduatedView};
use crate::algebra::FiniteAlgebra;
use crate::engine::{monolith, principal_congruence};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::state::StateMorphismAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrichotomyCase {
    /// τ is the identity.
    Identity,
    /// No nontrivial Boolean elements; the base is local.
    Local,
    /// Isomorphic to some `(A × B, τ_h)`.
    Product,
    NotSi,
}

impl TrichotomyCase {
    pub fn tag(self) -> &'static str {
        match self {
            TrichotomyCase::Identity => "i",
            TrichotomyCase::Local => "ii",
            TrichotomyCase::Product => "iii",
            TrichotomyCase::NotSi => "not-SI",
        }
    }
}

impl fmt::Display for TrichotomyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `(M, τ) ≅ (A × B, τ_h)` with `τ_h(a, b) = (a, h(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauHDecomposition {
    /// The Boolean element the factor congruences were taken from.
    pub boolean_element: usize,
    pub a: FiniteAlgebra,
    pub b: FiniteAlgebra,
    pub h: Morphism,
    /// `M → A × B`, in the product encoding.
    pub isomorphism: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrichotomyResult {
    pub case: TrichotomyCase,
    /// Named side conditions of the case, each recomputed directly.
    pub side_conditions: Vec<(&'static str, bool)>,
    pub decomposition: Option<TauHDecomposition>,
}

impl TrichotomyResult {
    pub fn side_conditions_hold(&self) -> bool {
        self.side_conditions.iter().all(|&(_, ok)| ok)
    }
}

/// Tries `M ≅ M/θ_a × M/θ_b` with τ transported to the form `(p, h(p))`.
fn try_decompose(
    m: &ResiduatedView<'_>,
    tau: &[usize],
    y: usize,
    collapse_a: usize,
    collapse_b: usize,
) -> Result<Option<TauHDecomposition>> {
    let alg = m.algebra();
    let n = alg.size();
    let theta_a = principal_congruence(alg, collapse_a, m.one())?;
    let theta_b = principal_congruence(alg, collapse_b, m.one())?;
    let (a, qa) = alg.quotient(&theta_a)?;
    let (b, qb) = alg.quotient(&theta_b)?;
    if a.size() * b.size() != n {
        return Ok(None);
    }
    let iso = Morphism::new((0..n).map(|x| qa.apply(x) * b.size() + qb.apply(x)).collect());
    if !iso.is_injective() {
        return Ok(None);
    }
    let mut h = vec![usize::MAX; a.size()];
    for x in 0..n {
        let (p, t) = (qa.apply(x), tau[x]);
        if qa.apply(t) != p {
            return Ok(None);
        }
        let hp = qb.apply(t);
        if h[p] != usize::MAX && h[p] != hp {
            return Ok(None);
        }
        h[p] = hp;
    }
    Ok(Some(TauHDecomposition {
        boolean_element: y,
        a,
        b,
        h: Morphism::new(h),
        isomorphism: iso,
    }))
}

/// Sorts a subdirectly irreducible state-morphism BL-algebra into one of the
/// three cases and recomputes the side conditions the case promises.
pub fn classify_trichotomy(s: &StateMorphismAlgebra) -> Result<TrichotomyResult> {
    let m = ResiduatedView::new(s.base())?;
    require_bl(s.base())?;
    let tau = s.tau();
    if !s.is_subdirectly_irreducible()? {
        return Ok(TrichotomyResult {
            case: TrichotomyCase::NotSi,
            side_conditions: Vec::new(),
            decomposition: None,
        });
    }
    let alg = s.base();
    if s.is_faithful() {
        return Ok(TrichotomyResult {
            case: TrichotomyCase::Identity,
            side_conditions: vec![
                ("linear", m.is_linear()),
                ("base-si", monolith(alg)?.is_some()),
            ],
            decomposition: None,
        });
    }
    let kernel = ker_tau_bl(&m, tau);
    let nontrivial: Vec<usize> = boolean_elements(&m)
        .into_iter()
        .filter(|&x| x != m.zero() && x != m.one())
        .collect();

    if let Some(&y) = nontrivial.first() {
        let yc = m.neg(y);
        let mut decomposition = try_decompose(&m, tau, y, yc, y)?;
        if decomposition.is_none() {
            decomposition = try_decompose(&m, tau, y, y, yc)?;
        }
        let mut side_conditions = vec![("not-faithful", kernel.len() > 1), ("tau-h-form", decomposition.is_some())];
        if let Some(d) = &decomposition {
            let a_view = ResiduatedView::new(&d.a)?;
            side_conditions.push(("a-linear", a_view.is_linear()));
            side_conditions.push(("b-si", monolith(&d.b)?.is_some()));
            side_conditions.push(("h-homomorphism", d.h.verify(&d.a, &d.b).is_ok()));
            side_conditions.push(("h-injective", d.h.is_injective()));
            let (prod, _, _) = d.a.product(&d.b)?;
            side_conditions.push(("isomorphism", d.isomorphism.verify(alg, &prod).is_ok()));
        }
        return Ok(TrichotomyResult {
            case: TrichotomyCase::Product,
            side_conditions,
            decomposition,
        });
    }

    let probes = structure_probes(&m);
    let (kernel_alg, _) = alg.reduct(&[IMP, MUL, TOP])?.subalgebra(&kernel)?;
    let radical = probes.radical.members().to_vec();
    let linear = m.is_linear();
    let mut image = tau.to_vec();
    image.sort_unstable();
    image.dedup();
    Ok(TrichotomyResult {
        case: TrichotomyCase::Local,
        side_conditions: vec![
            ("not-faithful", kernel.len() > 1),
            ("no-nontrivial-boolean", true),
            ("local", probes.is_local),
            ("kernel-si-hoop", monolith(&kernel_alg)?.is_some()),
            ("disjunction", disjunction_violation(&m, &kernel, &image).is_none()),
            ("radical-kernel-linear", radical != kernel || linear),
            ("linear-iff-radical-linear", linear == m.is_linear_on(&radical)),
        ],
        decomposition: None,
    })
}

/// Rejects algebras that are not state-morphism BL-algebras up front.
pub(crate) fn require_bl(alg: &FiniteAlgebra) -> Result<()> {
    let verdict = super::check_axioms(alg, super::AlgebraClass::Bl)?;
    match verdict.violation {
        None => Ok(()),
        Some(v) => Err(Error::Precondition(alloc::format!("not a BL-algebra: {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::diagonal;
    use crate::tnorm::{boolean_algebra, goedel_chain};

    #[test]
    fn identity_case() {
        let g = goedel_chain(3);
        let s = StateMorphismAlgebra::new(g, vec![0, 1, 2, 3]).unwrap();
        let r = classify_trichotomy(&s).unwrap();
        assert_eq!(r.case, TrichotomyCase::Identity);
        assert!(r.side_conditions_hold());
    }

    #[test]
    fn diagonal_of_two_is_product_case() {
        let d = diagonal(&boolean_algebra());
        let r = classify_trichotomy(&d).unwrap();
        assert_eq!(r.case, TrichotomyCase::Product);
        assert!(r.side_conditions_hold(), "{:?}", r.side_conditions);
        let dec = r.decomposition.unwrap();
        assert_eq!(dec.a.size(), 2);
        assert_eq!(dec.b.size(), 2);
    }

    #[test]
    fn collapse_onto_two_is_local_case() {
        let g = goedel_chain(2);
        let s = StateMorphismAlgebra::new(g, vec![0, 2, 2]).unwrap();
        let r = classify_trichotomy(&s).unwrap();
        assert_eq!(r.case, TrichotomyCase::Local);
        assert!(r.side_conditions_hold(), "{:?}", r.side_conditions);
    }
}
