//! Residuated structures on finite algebras: BL, MV, MTL and
//! non-associative BL algebras, hoops, filters, state operators and the
//! classification of subdirectly irreducible state-morphism BL-algebras.
//!
//! Algebras in this module use the fixed signature
//! `meet/2 join/2 mul/2 imp/2 bot/0 top/0` (see [`names`]), in any order.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

mod examples;
mod filters;
mod state_op;
mod trichotomy;

pub use examples::{diagonal_pair, radical_square, tau_h, DiagonalPair, RadicalSquare, TauH};
pub use filters::{
    congruence_to_filter, disjunction_violation, filter_generated, filter_to_congruence, filters,
    mv_skeleton_algebra, structure_probes, Filter, FilterMode, StructureProbes,
};
pub use state_op::{
    check_state_operator, enumerate_state_operators, ker_tau_bl, si_state_bl_report,
    SiStateReport, StateOperatorReport,
};
pub use trichotomy::{classify_trichotomy, TrichotomyCase, TrichotomyResult, TauHDecomposition};

/// Symbol names of the residuated signature.
pub mod names {
    pub const MEET: &str = "meet";
    pub const JOIN: &str = "join";
    pub const MUL: &str = "mul";
    pub const IMP: &str = "imp";
    pub const BOT: &str = "bot";
    pub const TOP: &str = "top";
    /// Name of the extra unary symbol in a τ-expansion.
    pub const TAU: &str = "tau";
}

use names::*;

pub fn bl_signature() -> Signature {
    Signature::new([(MEET, 2), (JOIN, 2), (MUL, 2), (IMP, 2), (BOT, 0), (TOP, 0)])
        .expect("distinct names")
}

pub fn hoop_signature() -> Signature {
    Signature::new([(IMP, 2), (MUL, 2), (TOP, 0)]).expect("distinct names")
}

/// Read-only access to a residuated-signature algebra by role.
#[derive(Clone, Copy, Debug)]
pub struct ResiduatedView<'a> {
    alg: &'a FiniteAlgebra,
    meet: usize,
    join: usize,
    mul: usize,
    imp: usize,
    zero: usize,
    one: usize,
}

impl<'a> ResiduatedView<'a> {
    /// Accepts exactly the six residuated symbols, in any order.
    pub fn new(alg: &'a FiniteAlgebra) -> Result<Self> {
        const EXPECTED: &str = "meet/2 join/2 mul/2 imp/2 bot/0 top/0";
        let sig = alg.signature();
        if sig.len() != 6 {
            return Err(Error::WrongSignature { expected: EXPECTED });
        }
        let find = |name: &str, arity: usize| -> Result<usize> {
            match sig.index_of(name) {
                Some(op) if sig.arity(op) == arity => Ok(op),
                _ => Err(Error::WrongSignature { expected: EXPECTED }),
            }
        };
        let bot = find(BOT, 0)?;
        let top = find(TOP, 0)?;
        Ok(ResiduatedView {
            alg,
            meet: find(MEET, 2)?,
            join: find(JOIN, 2)?,
            mul: find(MUL, 2)?,
            imp: find(IMP, 2)?,
            zero: alg.table(bot)[0],
            one: alg.table(top)[0],
        })
    }

    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.alg
    }

    pub fn size(&self) -> usize {
        self.alg.size()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.alg.apply2(self.meet, x, y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.alg.apply2(self.join, x, y)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.alg.apply2(self.mul, x, y)
    }

    #[inline]
    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.alg.apply2(self.imp, x, y)
    }

    /// `x⁻ = x → 0`.
    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.imp(x, self.zero)
    }

    /// The lattice order: `x ≤ y` iff `x ∧ y = x`.
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    /// Checks that the derived relation is a partial order with bounds.
    pub fn check_order(&self) -> Result<()> {
        let n = self.size();
        for x in 0..n {
            if !self.le(x, x) {
                return Err(Error::NotAnOrder("not reflexive".to_string()));
            }
            if !self.le(self.zero, x) || !self.le(x, self.one) {
                return Err(Error::NotAnOrder("bot/top are not bounds".to_string()));
            }
            for y in 0..n {
                if x != y && self.le(x, y) && self.le(y, x) {
                    return Err(Error::NotAnOrder("not antisymmetric".to_string()));
                }
                for z in 0..n {
                    if self.le(x, y) && self.le(y, z) && !self.le(x, z) {
                        return Err(Error::NotAnOrder("not transitive".to_string()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `subset` is totally ordered.
    pub fn is_linear_on(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&x| subset.iter().all(|&y| self.le(x, y) || self.le(y, x)))
    }

    pub fn is_linear(&self) -> bool {
        let all: Vec<usize> = (0..self.size()).collect();
        self.is_linear_on(&all)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraClass {
    Bl,
    Mv,
    Mtl,
    NaBl,
    Hoop,
}

impl AlgebraClass {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraClass::Bl => "BL",
            AlgebraClass::Mv => "MV",
            AlgebraClass::Mtl => "MTL",
            AlgebraClass::NaBl => "naBL",
            AlgebraClass::Hoop => "hoop",
        }
    }

    pub fn parse(s: &str) -> Option<AlgebraClass> {
        match s {
            "BL" => Some(AlgebraClass::Bl),
            "MV" => Some(AlgebraClass::Mv),
            "MTL" => Some(AlgebraClass::Mtl),
            "naBL" => Some(AlgebraClass::NaBl),
            "hoop" => Some(AlgebraClass::Hoop),
            _ => None,
        }
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub class: AlgebraClass,
    pub violation: Option<AxiomViolation>,
}

impl AxiomVerdict {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Runs each law over all tuples of its arity in lexicographic order and
/// returns the first failure.
fn first_failure<F: Fn(&'static str, &[usize]) -> bool>(
    n: usize,
    laws: &[(&'static str, usize)],
    holds: F,
) -> Option<AxiomViolation> {
    for &(axiom, arity) in laws {
        let mut od = crate::odometer::Odometer::new(n, arity);
        while let Some(t) = od.next() {
            if !holds(axiom, t) {
                return Some(AxiomViolation {
                    axiom,
                    witness: t.to_vec(),
                });
            }
        }
    }
    None
}

fn residuated_law(m: &ResiduatedView<'_>, axiom: &str, t: &[usize]) -> bool {
    match axiom {
        "meet-commutative" => m.meet(t[0], t[1]) == m.meet(t[1], t[0]),
        "join-commutative" => m.join(t[0], t[1]) == m.join(t[1], t[0]),
        "meet-associative" => m.meet(m.meet(t[0], t[1]), t[2]) == m.meet(t[0], m.meet(t[1], t[2])),
        "join-associative" => m.join(m.join(t[0], t[1]), t[2]) == m.join(t[0], m.join(t[1], t[2])),
        "meet-absorption" => m.meet(t[0], m.join(t[0], t[1])) == t[0],
        "join-absorption" => m.join(t[0], m.meet(t[0], t[1])) == t[0],
        "bottom" => m.meet(m.zero(), t[0]) == m.zero(),
        "top" => m.join(t[0], m.one()) == m.one(),
        "mul-commutative" => m.mul(t[0], t[1]) == m.mul(t[1], t[0]),
        "mul-unit" => m.mul(t[0], m.one()) == t[0],
        "mul-associative" => m.mul(m.mul(t[0], t[1]), t[2]) == m.mul(t[0], m.mul(t[1], t[2])),
        // c ≤ a → b iff a ⊙ c ≤ b, over (a, b, c)
        "residuation" => m.le(t[2], m.imp(t[0], t[1])) == m.le(m.mul(t[0], t[2]), t[1]),
        "divisibility" => m.meet(t[0], t[1]) == m.mul(t[0], m.imp(t[0], t[1])),
        "prelinearity" => m.join(m.imp(t[0], t[1]), m.imp(t[1], t[0])) == m.one(),
        "involution" => m.neg(m.neg(t[0])) == t[0],
        // over (x, y, a, b): (x → y) ∨ γ(y → x) = 1 with
        // α(u) = (a·b) → (a·(b·u)) and β(u) = b → (a → ((a·b)·u))
        "alpha-prelinearity" => {
            let (x, y, a, b) = (t[0], t[1], t[2], t[3]);
            let u = m.imp(y, x);
            let g = m.imp(m.mul(a, b), m.mul(a, m.mul(b, u)));
            m.join(m.imp(x, y), g) == m.one()
        }
        "beta-prelinearity" => {
            let (x, y, a, b) = (t[0], t[1], t[2], t[3]);
            let u = m.imp(y, x);
            let g = m.imp(b, m.imp(a, m.mul(m.mul(a, b), u)));
            m.join(m.imp(x, y), g) == m.one()
        }
        _ => unreachable!("unknown law {axiom}"),
    }
}

fn check_residuated(m: &ResiduatedView<'_>, class: AlgebraClass) -> Option<AxiomViolation> {
    let mut laws: Vec<(&'static str, usize)> = vec![
        ("meet-commutative", 2),
        ("join-commutative", 2),
        ("meet-associative", 3),
        ("join-associative", 3),
        ("meet-absorption", 2),
        ("join-absorption", 2),
        ("bottom", 1),
        ("top", 1),
        ("mul-commutative", 2),
        ("mul-unit", 1),
    ];
    if class != AlgebraClass::NaBl {
        laws.push(("mul-associative", 3));
    }
    laws.push(("residuation", 3));
    if matches!(class, AlgebraClass::Bl | AlgebraClass::Mv | AlgebraClass::NaBl) {
        laws.push(("divisibility", 2));
    }
    if class == AlgebraClass::NaBl {
        laws.push(("alpha-prelinearity", 4));
        laws.push(("beta-prelinearity", 4));
    } else {
        laws.push(("prelinearity", 2));
    }
    if class == AlgebraClass::Mv {
        laws.push(("involution", 1));
    }
    first_failure(m.size(), &laws, |axiom, t| residuated_law(m, axiom, t))
}

fn check_hoop(alg: &FiniteAlgebra) -> Result<Option<AxiomViolation>> {
    const EXPECTED: &str = "imp/2 mul/2 top/0";
    let sig = alg.signature();
    let find = |name: &str, arity: usize| match sig.index_of(name) {
        Some(op) if sig.arity(op) == arity => Ok(op),
        _ => Err(Error::WrongSignature { expected: EXPECTED }),
    };
    if sig.len() != 3 {
        return Err(Error::WrongSignature { expected: EXPECTED });
    }
    let (imp, mul, top) = (find(IMP, 2)?, find(MUL, 2)?, find(TOP, 0)?);
    let one = alg.table(top)[0];
    let i = |x, y| alg.apply2(imp, x, y);
    let m = |x, y| alg.apply2(mul, x, y);
    let laws = [
        ("mul-commutative", 2),
        ("mul-associative", 3),
        ("mul-unit", 1),
        ("imp-reflexive", 1),
        ("hoop-divisibility", 2),
        ("currying", 3),
    ];
    Ok(first_failure(alg.size(), &laws, |axiom, t| match axiom {
        "mul-commutative" => m(t[0], t[1]) == m(t[1], t[0]),
        "mul-associative" => m(m(t[0], t[1]), t[2]) == m(t[0], m(t[1], t[2])),
        "mul-unit" => m(t[0], one) == t[0],
        "imp-reflexive" => i(t[0], t[0]) == one,
        "hoop-divisibility" => m(t[0], i(t[0], t[1])) == m(t[1], i(t[1], t[0])),
        _ => i(t[0], i(t[1], t[2])) == i(m(t[0], t[1]), t[2]),
    }))
}

/// Exhaustive axiom check for the given class. The reported witness is the
/// lexicographically least failing tuple of the first failing axiom.
pub fn check_axioms(alg: &FiniteAlgebra, class: AlgebraClass) -> Result<AxiomVerdict> {
    let violation = match class {
        AlgebraClass::Hoop => check_hoop(alg)?,
        _ => check_residuated(&ResiduatedView::new(alg)?, class),
    };
    Ok(AxiomVerdict { class, violation })
}

/// The algebra with `mul` and `imp` swapped in for the hoop reduct, i.e.
/// `⟨imp, mul, top⟩` restricted to `subset` (which must be closed).
pub fn hoop_subreduct(alg: &FiniteAlgebra, subset: &[usize]) -> Result<(FiniteAlgebra, Vec<usize>)> {
    let reduct = alg.reduct(&[IMP, MUL, TOP])?;
    let (sub, incl) = reduct.subalgebra(subset)?;
    Ok((sub, incl.into_map()))
}

/// Elements `x` with `x⁻⁻ = x`.
pub fn involutive_elements(m: &ResiduatedView<'_>) -> Vec<usize> {
    (0..m.size()).filter(|&x| m.neg(m.neg(x)) == x).collect()
}

/// Elements with `x⁻⁻ = x` and `x ⊙ x = x`.
pub fn boolean_elements(m: &ResiduatedView<'_>) -> Vec<usize> {
    (0..m.size())
        .filter(|&x| m.neg(m.neg(x)) == x && m.mul(x, x) == x)
        .collect()
}
