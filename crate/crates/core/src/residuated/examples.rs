//! Standard constructions of state-morphism BL-algebras on products.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::filters::{filters, Filter, FilterMode};
use super::trichotomy::require_bl;
use super::{boolean_elements, ker_tau_bl, ResiduatedView};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::state::StateMorphismAlgebra;

/// `M × M` with `τ₁(a, b) = (a, a)` and `τ₂(a, b) = (b, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalPair {
    pub first: StateMorphismAlgebra,
    pub second: StateMorphismAlgebra,
    /// `(a, b) ↦ (b, a)`.
    pub swap: Morphism,
    /// The swap is an automorphism of `M × M` carrying `τ₁` to `τ₂`.
    pub swap_is_isomorphism: bool,
}

pub fn diagonal_pair(m: &FiniteAlgebra) -> Result<DiagonalPair> {
    require_bl(m)?;
    let (square, _, _) = m.product(m)?;
    let k = m.size();
    let tau1: Vec<usize> = (0..k * k).map(|p| (p / k) * k + p / k).collect();
    let tau2: Vec<usize> = (0..k * k).map(|p| (p % k) * k + p % k).collect();
    let swap = Morphism::new((0..k * k).map(|p| (p % k) * k + p / k).collect());
    let swap_is_isomorphism = swap.verify(&square, &square).is_ok()
        && swap.is_injective()
        && (0..k * k).all(|p| swap.apply(tau1[p]) == tau2[swap.apply(p)]);
    Ok(DiagonalPair {
        first: StateMorphismAlgebra::new(square.clone(), tau1)?,
        second: StateMorphismAlgebra::new(square, tau2)?,
        swap,
        swap_is_isomorphism,
    })
}

/// The subalgebra of `B × B` generated by `Rad₁(B) × Rad₁(B)` with
/// `τ(x, y) = (x, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalSquare {
    pub algebra: StateMorphismAlgebra,
    /// Elements of the subalgebra in the encoding of `B × B`.
    pub elements: Vec<usize>,
    pub radical: Vec<usize>,
    /// The carrier is `R² ∪ (R²)⁻` for `R = Rad₁(B)`.
    pub complement_form: bool,
    /// `Ker(τ) = {1} × R`.
    pub kernel_matches: bool,
    pub has_nontrivial_boolean: bool,
}

/// Needs a BL-algebra `B` whose filters are exactly `{1}`, `Rad₁(B) ≠ {1}`
/// and `B` itself.
pub fn radical_square(b: &FiniteAlgebra) -> Result<RadicalSquare> {
    require_bl(b)?;
    let v = ResiduatedView::new(b)?;
    let all = filters(&v, FilterMode::All);
    if all.len() != 3 {
        return Err(Error::Precondition(
            "expected exactly one nontrivial proper filter".to_string(),
        ));
    }
    let radical = all[1].members().to_vec();
    let maximal = filters(&v, FilterMode::Maximal);
    if maximal.len() != 1 || maximal[0].members() != radical.as_slice() {
        return Err(Error::Precondition("the middle filter is not the radical".to_string()));
    }
    let k = b.size();
    let (square, _, _) = b.product(b)?;
    let gens: Vec<usize> = radical
        .iter()
        .flat_map(|&x| radical.iter().map(move |&y| x * k + y))
        .collect();
    let elements = square.subuniverse_generated(&gens)?;
    let (sub, _) = square.subalgebra(&elements)?;
    let pos = |p: usize| elements.binary_search(&p).ok();
    let mut tau = Vec::with_capacity(elements.len());
    for &p in &elements {
        let d = (p / k) * k + p / k;
        tau.push(pos(d).ok_or_else(|| Error::NotClosed {
            symbol: super::names::TAU.to_string(),
            args: alloc::vec![p],
        })?);
    }
    let sq_view = ResiduatedView::new(&square)?;
    let mut form: Vec<usize> = gens.clone();
    form.extend(gens.iter().map(|&p| sq_view.neg(p)));
    form.sort_unstable();
    form.dedup();
    let algebra = StateMorphismAlgebra::new(sub, tau)?;
    let sub_view = ResiduatedView::new(algebra.base())?;
    let kernel: Vec<usize> = ker_tau_bl(&sub_view, algebra.tau())
        .into_iter()
        .map(|i| elements[i])
        .collect();
    let expected_kernel: Vec<usize> = radical.iter().map(|&y| v.one() * k + y).collect();
    let has_nontrivial_boolean = boolean_elements(&sub_view)
        .into_iter()
        .any(|x| x != sub_view.zero() && x != sub_view.one());
    Ok(RadicalSquare {
        complement_form: form == elements,
        kernel_matches: kernel == expected_kernel,
        has_nontrivial_boolean,
        algebra,
        elements,
        radical,
    })
}

/// `A × B` with `τ_h(a, b) = (a, h(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauH {
    pub algebra: StateMorphismAlgebra,
    /// `{a ∈ A : h(a) = 1}`.
    pub kernel_h: Vec<usize>,
    /// `Ker(τ_h)`, in the product encoding.
    pub kernel: Vec<usize>,
    /// The least nontrivial τ-filter, when the expansion is SI.
    pub least_tau_filter: Option<Filter>,
    /// `{1} × F_B` for the least nontrivial filter `F_B` of `B`.
    pub expected_least_filter: Option<Vec<usize>>,
}

impl TauH {
    pub fn kernel_h_trivial(&self) -> bool {
        self.kernel_h.len() == 1
    }
}

/// Needs `A` linear and nontrivial, `B` nontrivial and subdirectly
/// irreducible, and `h: A → B` a homomorphism.
pub fn tau_h(a: &FiniteAlgebra, b: &FiniteAlgebra, h: &[usize]) -> Result<TauH> {
    require_bl(a)?;
    require_bl(b)?;
    let av = ResiduatedView::new(a)?;
    let bv = ResiduatedView::new(b)?;
    if a.size() < 2 || b.size() < 2 {
        return Err(Error::Precondition("factors must be nontrivial".to_string()));
    }
    if !av.is_linear() {
        return Err(Error::Precondition("first factor must be linear".to_string()));
    }
    if crate::engine::monolith(b)?.is_none() {
        return Err(Error::NotSubdirectlyIrreducible);
    }
    Morphism::new(h.to_vec()).verify(a, b)?;
    let (prod, _, _) = a.product(b)?;
    let k = b.size();
    let tau: Vec<usize> = (0..prod.size()).map(|p| (p / k) * k + h[p / k]).collect();
    let algebra = StateMorphismAlgebra::new(prod, tau)?;
    let pv = ResiduatedView::new(algebra.base())?;
    let kernel = ker_tau_bl(&pv, algebra.tau());
    let kernel_h = (0..a.size()).filter(|&x| h[x] == bv.one()).collect();

    let least_tau_filter = match algebra.monolith()? {
        Some(mono) => Some(Filter::from_members(mono.block_of(pv.one()).collect())),
        None => None,
    };
    let b_filters = filters(&bv, FilterMode::All);
    let expected_least_filter = b_filters
        .get(1)
        .map(|f| f.members().iter().map(|&y| av.one() * k + y).collect());
    Ok(TauH {
        algebra,
        kernel_h,
        kernel,
        least_tau_filter,
        expected_least_filter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{boolean_algebra, goedel_chain};

    #[test]
    fn diagonal_pair_swap() {
        let p = diagonal_pair(&goedel_chain(2)).unwrap();
        assert!(p.swap_is_isomorphism);
    }

    #[test]
    fn radical_square_from_goedel_three() {
        let r = radical_square(&goedel_chain(2)).unwrap();
        assert_eq!(r.elements.len(), 5);
        assert!(r.complement_form);
        assert!(r.kernel_matches);
        assert!(!r.has_nontrivial_boolean);
        assert!(r.algebra.is_subdirectly_irreducible().unwrap());
    }

    #[test]
    fn tau_h_si_iff_kernel_trivial() {
        let b = boolean_algebra();
        let g = goedel_chain(2);
        let inj = tau_h(&b, &g, &[0, 2]).unwrap();
        assert!(inj.kernel_h_trivial());
        assert!(inj.algebra.is_subdirectly_irreducible().unwrap());
        assert_eq!(
            inj.least_tau_filter.as_ref().map(|f| f.members().to_vec()),
            inj.expected_least_filter
        );

        let collapse = tau_h(&g, &b, &[0, 1, 1]).unwrap();
        assert!(!collapse.kernel_h_trivial());
        assert!(!collapse.algebra.is_subdirectly_irreducible().unwrap());
    }
}
