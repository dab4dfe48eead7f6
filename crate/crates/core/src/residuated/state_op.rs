use alloc::vec;
use alloc::vec::Vec;

use super::names::{IMP, MUL, TAU, TOP};
use super::{disjunction_violation, ResiduatedView};
use crate::congruence::Congruence;
use crate::engine::monolith;
use crate::error::{Error, Result};

/// Which of the five state-operator axioms hold, and the first failure.
///
/// The axioms, numbered 1 to 5:
/// `τ(0) = 0`; `τ(x→y) = τ(x) → τ(x∧y)`; `τ(x⊙y) = τ(x) ⊙ τ(x → (x⊙y))`;
/// `τ(τ(x)⊙τ(y)) = τ(x)⊙τ(y)`; `τ(τ(x)→τ(y)) = τ(x)→τ(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateOperatorReport {
    pub holds: [bool; 5],
    /// `(axiom number, witness)` for the first failing axiom; the witness is
    /// the least failing `(x, y)`, or empty for axiom 1.
    pub violation: Option<(usize, Vec<usize>)>,
}

impl StateOperatorReport {
    pub fn is_state_operator(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

fn check_map(m: &ResiduatedView<'_>, tau: &[usize]) -> Result<()> {
    if tau.len() != m.size() {
        return Err(Error::SizeMismatch {
            expected: m.size(),
            found: tau.len(),
        });
    }
    if let Some(&bad) = tau.iter().find(|&&v| v >= m.size()) {
        return Err(Error::ElementOutOfRange {
            element: bad,
            size: m.size(),
        });
    }
    Ok(())
}

/// Axiom `k` (2..=5) at `(x, y)`, or `None` when some needed τ-value is
/// still unknown.
fn binary_axiom<F: Fn(usize) -> Option<usize>>(
    m: &ResiduatedView<'_>,
    t: &F,
    k: usize,
    x: usize,
    y: usize,
) -> Option<bool> {
    Some(match k {
        2 => t(m.imp(x, y))? == m.imp(t(x)?, t(m.meet(x, y))?),
        3 => t(m.mul(x, y))? == m.mul(t(x)?, t(m.imp(x, m.mul(x, y)))?),
        4 => {
            let p = m.mul(t(x)?, t(y)?);
            t(p)? == p
        }
        _ => {
            let p = m.imp(t(x)?, t(y)?);
            t(p)? == p
        }
    })
}

pub fn check_state_operator(m: &ResiduatedView<'_>, tau: &[usize]) -> Result<StateOperatorReport> {
    check_map(m, tau)?;
    let n = m.size();
    let t = |x: usize| Some(tau[x]);
    let mut holds = [true; 5];
    let mut violation = None;
    if tau[m.zero()] != m.zero() {
        holds[0] = false;
        violation = Some((1, Vec::new()));
    }
    for k in 2..=5 {
        'pairs: for x in 0..n {
            for y in 0..n {
                if binary_axiom(m, &t, k, x, y) == Some(false) {
                    holds[k - 1] = false;
                    if violation.is_none() {
                        violation = Some((k, vec![x, y]));
                    }
                    break 'pairs;
                }
            }
        }
    }
    Ok(StateOperatorReport { holds, violation })
}

/// Every state-operator on `m`, in lexicographic order.
pub fn enumerate_state_operators(m: &ResiduatedView<'_>) -> Vec<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let n = m.size();
    let mut order = vec![m.zero()];
    if m.one() != m.zero() {
        order.push(m.one());
    }
    order.extend((0..n).filter(|&x| x != m.zero() && x != m.one()));

    fn consistent(m: &ResiduatedView<'_>, tau: &[usize]) -> bool {
        let n = m.size();
        let t = |x: usize| (tau[x] != UNSET).then_some(tau[x]);
        if tau[m.zero()] != UNSET && tau[m.zero()] != m.zero() {
            return false;
        }
        for k in 2..=5 {
            for x in 0..n {
                for y in 0..n {
                    if binary_axiom(m, &t, k, x, y) == Some(false) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(
        m: &ResiduatedView<'_>,
        order: &[usize],
        depth: usize,
        tau: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == order.len() {
            out.push(tau.clone());
            return;
        }
        let x = order[depth];
        for v in 0..m.size() {
            tau[x] = v;
            if consistent(m, tau) {
                go(m, order, depth + 1, tau, out);
            }
        }
        tau[x] = UNSET;
    }

    let mut tau = vec![UNSET; n];
    let mut out = Vec::new();
    go(m, &order, 0, &mut tau, &mut out);
    out.sort();
    out
}

/// `{a : τ(a) = 1}`.
pub fn ker_tau_bl(m: &ResiduatedView<'_>, tau: &[usize]) -> Vec<usize> {
    (0..m.size()).filter(|&a| tau[a] == m.one()).collect()
}

/// The three conditions that characterize subdirectly irreducible state
/// BL-algebras, next to the direct answer from the τ-expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiStateReport {
    /// `Ker(τ) = {1}`.
    pub faithful: bool,
    pub kernel: Vec<usize>,
    pub image: Vec<usize>,
    pub image_si: bool,
    pub image_linear: bool,
    /// The `⟨imp, mul, top⟩` reduct on `Ker(τ)` is subdirectly irreducible.
    pub kernel_si: bool,
    pub kernel_linear: bool,
    pub disjunction_violation: Option<(usize, usize)>,
    /// Faithful implies the image is SI.
    pub condition_image: bool,
    /// The kernel is trivial or an SI hoop.
    pub condition_kernel: bool,
    /// Kernel and image have the disjunction property.
    pub condition_disjunction: bool,
    /// Monolith of the τ-expansion, if any.
    pub monolith: Option<Congruence>,
}

impl SiStateReport {
    pub fn conditions_hold(&self) -> bool {
        self.condition_image && self.condition_kernel && self.condition_disjunction
    }

    pub fn is_si(&self) -> bool {
        self.monolith.is_some()
    }

    /// The characterization and the direct computation give the same answer.
    pub fn agrees(&self) -> bool {
        self.conditions_hold() == self.is_si()
    }
}

pub fn si_state_bl_report(m: &ResiduatedView<'_>, tau: &[usize]) -> Result<SiStateReport> {
    let verdict = check_state_operator(m, tau)?;
    if !verdict.is_state_operator() {
        return Err(Error::Precondition(
            "map is not a state-operator".into(),
        ));
    }
    let alg = m.algebra();
    let kernel = ker_tau_bl(m, tau);
    let faithful = kernel.len() == 1;
    let mut image = tau.to_vec();
    image.sort_unstable();
    image.dedup();

    let (image_alg, _) = alg.subalgebra(&image)?;
    let image_si = monolith(&image_alg)?.is_some();
    let (kernel_alg, _) = alg.reduct(&[IMP, MUL, TOP])?.subalgebra(&kernel)?;
    let kernel_si = monolith(&kernel_alg)?.is_some();
    let disjunction = disjunction_violation(m, &kernel, &image);
    let expansion = alg.expand_unary(TAU, tau)?;

    Ok(SiStateReport {
        faithful,
        image_linear: m.is_linear_on(&image),
        kernel_linear: m.is_linear_on(&kernel),
        condition_image: !faithful || image_si,
        condition_kernel: kernel.len() == 1 || kernel_si,
        condition_disjunction: disjunction.is_none(),
        disjunction_violation: disjunction,
        kernel,
        image,
        image_si,
        kernel_si,
        monolith: monolith(&expansion)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{goedel_chain, lukasiewicz_chain};

    #[test]
    fn identity_is_state_operator() {
        let l = lukasiewicz_chain(3);
        let v = ResiduatedView::new(&l).unwrap();
        let r = check_state_operator(&v, &[0, 1, 2, 3]).unwrap();
        assert!(r.is_state_operator());
    }

    #[test]
    fn half_to_one_fails_product_axiom() {
        let l = lukasiewicz_chain(2);
        let v = ResiduatedView::new(&l).unwrap();
        let r = check_state_operator(&v, &[0, 2, 2]).unwrap();
        assert!(!r.holds[2]);
        assert!(!r.is_state_operator());
    }

    #[test]
    fn state_operators_of_goedel_three() {
        let g = goedel_chain(2);
        let v = ResiduatedView::new(&g).unwrap();
        let ops = enumerate_state_operators(&v);
        assert!(ops.contains(&vec![0, 1, 2]));
        assert!(ops.contains(&vec![0, 2, 2]));
        for op in &ops {
            assert!(check_state_operator(&v, op).unwrap().is_state_operator());
        }
    }

    #[test]
    fn report_on_identity() {
        let g = goedel_chain(3);
        let v = ResiduatedView::new(&g).unwrap();
        let r = si_state_bl_report(&v, &[0, 1, 2, 3]).unwrap();
        assert!(r.faithful && r.image_si && r.is_si() && r.agrees());
    }
}
