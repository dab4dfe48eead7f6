//! Finite residuated chains generated from t-norms on the uniform grid
//! `{0, 1/n, …, 1}`, stored by grid index `0..=n`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::residuated::{bl_signature, check_axioms, AlgebraClass, AxiomVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Lukasiewicz,
    Goedel,
}

impl ComponentKind {
    pub fn name(self) -> &'static str {
        match self {
            ComponentKind::Lukasiewicz => "lukasiewicz",
            ComponentKind::Goedel => "goedel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChainKind {
    Lukasiewicz,
    Goedel,
    Product,
    /// Consecutive components, each covering the given number of grid steps.
    OrdinalSum(Vec<(ComponentKind, usize)>),
}

/// A t-norm and a grid with `steps + 1` points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    pub kind: ChainKind,
    pub steps: usize,
}

impl ChainSpec {
    pub fn lukasiewicz(steps: usize) -> ChainSpec {
        ChainSpec {
            kind: ChainKind::Lukasiewicz,
            steps,
        }
    }

    pub fn goedel(steps: usize) -> ChainSpec {
        ChainSpec {
            kind: ChainKind::Goedel,
            steps,
        }
    }

    pub fn product(steps: usize) -> ChainSpec {
        ChainSpec {
            kind: ChainKind::Product,
            steps,
        }
    }

    pub fn ordinal_sum(components: Vec<(ComponentKind, usize)>) -> ChainSpec {
        let steps = components.iter().map(|c| c.1).sum();
        ChainSpec {
            kind: ChainKind::OrdinalSum(components),
            steps,
        }
    }

    pub fn points(&self) -> usize {
        self.steps + 1
    }

    fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidPartition("a chain needs at least one step".to_string()));
        }
        match &self.kind {
            ChainKind::Product if self.steps != 1 => Err(Error::GridNotClosed {
                formula: "product",
                points: self.points(),
            }),
            ChainKind::OrdinalSum(parts) => {
                if parts.is_empty() || parts.iter().any(|p| p.1 == 0) {
                    return Err(Error::InvalidPartition(
                        "ordinal-sum components must be non-empty".to_string(),
                    ));
                }
                let total: usize = parts.iter().map(|p| p.1).sum();
                if total != self.steps {
                    return Err(Error::InvalidPartition(format!(
                        "components cover {total} steps, grid has {}",
                        self.steps
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `t(i, j)` on grid indices.
    fn tnorm(&self, i: usize, j: usize) -> usize {
        let n = self.steps;
        match &self.kind {
            ChainKind::Lukasiewicz => (i + j).saturating_sub(n),
            ChainKind::Goedel => i.min(j),
            // only the two-point grid is admitted
            ChainKind::Product => i * j,
            ChainKind::OrdinalSum(parts) => {
                let mut start = 0;
                for &(kind, len) in parts {
                    let end = start + len;
                    if (start..=end).contains(&i) && (start..=end).contains(&j) {
                        return match kind {
                            ComponentKind::Goedel => i.min(j),
                            ComponentKind::Lukasiewicz => start + (i + j - 2 * start).saturating_sub(len),
                        };
                    }
                    start = end;
                }
                i.min(j)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupoidClass {
    TNorm,
    LeftContinuousSurrogate,
    NatNorm,
}

/// A binary operation on the chain `0..size`, top element `size - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupoidTable {
    pub size: usize,
    pub table: Vec<usize>,
    pub class: GroupoidClass,
}

impl GroupoidTable {
    pub fn new(size: usize, table: Vec<usize>, class: GroupoidClass) -> Result<GroupoidTable> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        if table.len() != size * size {
            return Err(Error::TableShape {
                symbol: "mul".to_string(),
                expected: size * size,
                found: table.len(),
            });
        }
        if let Some(pos) = table.iter().position(|&v| v >= size) {
            return Err(Error::EntryOutOfRange {
                symbol: "mul".to_string(),
                position: pos,
                value: table[pos],
                size,
            });
        }
        Ok(GroupoidTable { size, table, class })
    }

    pub fn from_fn<F: Fn(usize, usize) -> usize>(size: usize, class: GroupoidClass, f: F) -> Result<Self> {
        let table = (0..size * size).map(|p| f(p / size, p % size)).collect();
        GroupoidTable::new(size, table, class)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn top(&self) -> usize {
        self.size - 1
    }
}

/// The t-norm of a spec as a table.
pub fn tnorm_table(spec: &ChainSpec) -> Result<GroupoidTable> {
    spec.validate()?;
    GroupoidTable::from_fn(spec.points(), GroupoidClass::TNorm, |i, j| spec.tnorm(i, j))
}

/// `→(x, y)` = greatest `z` with `t(z, x) ≤ y`, and the first triple
/// `(x, y, z)` on which `t(z, x) ≤ y ⟺ z ≤ →(x, y)` fails, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residuum {
    pub table: Vec<usize>,
    pub adjointness_failure: Option<[usize; 3]>,
}

pub fn residuum_from_table(t: &GroupoidTable) -> Residuum {
    let n = t.size;
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = (0..n).rev().find(|&z| t.get(z, x) <= y).unwrap_or(0);
        }
    }
    let mut adjointness_failure = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if (t.get(z, x) <= y) != (z <= table[x * n + y]) {
                    adjointness_failure = Some([x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    Residuum {
        table,
        adjointness_failure,
    }
}

/// The residuated chain `(min, max, t, →_t, 0, 1)`.
pub fn chain_from_table(t: &GroupoidTable) -> Result<FiniteAlgebra> {
    let r = residuum_from_table(t);
    if let Some(witness) = r.adjointness_failure {
        return Err(Error::AdjointnessFailure { witness });
    }
    let n = t.size;
    FiniteAlgebra::from_fn(bl_signature(), n, |op, args| match op {
        0 => args[0].min(args[1]),
        1 => args[0].max(args[1]),
        2 => t.get(args[0], args[1]),
        3 => r.table[args[0] * n + args[1]],
        4 => 0,
        _ => n - 1,
    })
}

pub fn make_chain(spec: &ChainSpec) -> Result<FiniteAlgebra> {
    chain_from_table(&tnorm_table(spec)?)
}

/// `Ł_steps`, with `steps + 1` elements.
pub fn lukasiewicz_chain(steps: usize) -> FiniteAlgebra {
    make_chain(&ChainSpec::lukasiewicz(steps)).expect("Łukasiewicz grids are closed")
}

/// The Gödel chain with `steps + 1` elements.
pub fn goedel_chain(steps: usize) -> FiniteAlgebra {
    make_chain(&ChainSpec::goedel(steps)).expect("Gödel grids are closed")
}

/// The two-element Boolean algebra.
pub fn boolean_algebra() -> FiniteAlgebra {
    lukasiewicz_chain(1)
}

/// Nilpotent minimum on `steps + 1` points: `min(x, y)` when `x + y > 1`,
/// else 0. An MTL chain that is not BL once there are four or more points.
pub fn nilpotent_minimum_chain(steps: usize) -> Result<FiniteAlgebra> {
    let t = GroupoidTable::from_fn(steps + 1, GroupoidClass::LeftContinuousSurrogate, |i, j| {
        if i + j > steps {
            i.min(j)
        } else {
            0
        }
    })?;
    chain_from_table(&t)
}

/// Four-point Łukasiewicz table with the symmetric pair at `(1, 2)` raised
/// from 0 to 1. Still commutative and monotone with neutral top, but
/// `(1·2)·2 ≠ 1·(2·2)`.
pub fn perturbed_lukasiewicz() -> GroupoidTable {
    GroupoidTable::from_fn(4, GroupoidClass::NatNorm, |i, j| {
        if (i, j) == (1, 2) || (i, j) == (2, 1) {
            1
        } else {
            (i + j).saturating_sub(3)
        }
    })
    .expect("valid table")
}

/// Outcome of the nat-norm conditions and, when they pass, the naBL check
/// of the induced residuated chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatNormVerdict {
    pub commutativity: Option<(usize, usize)>,
    pub neutral_top: Option<usize>,
    /// `(x, y, z)` with `x ≤ y` but `t(x, z) > t(y, z)`.
    pub monotonicity: Option<(usize, usize, usize)>,
    /// Continuity has no content on a finite chain.
    pub continuity: &'static str,
    pub adjointness_failure: Option<[usize; 3]>,
    pub nabl: Option<AxiomVerdict>,
}

impl NatNormVerdict {
    pub fn is_nat_norm(&self) -> bool {
        self.commutativity.is_none() && self.neutral_top.is_none() && self.monotonicity.is_none()
    }

    pub fn passes(&self) -> bool {
        self.is_nat_norm()
            && self.adjointness_failure.is_none()
            && self.nabl.as_ref().is_some_and(|v| v.holds())
    }
}

pub fn validate_nat_norm(t: &GroupoidTable) -> Result<NatNormVerdict> {
    let n = t.size;
    let commutativity = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| t.get(x, y) != t.get(y, x));
    let neutral_top = (0..n).find(|&x| t.get(x, t.top()) != x);
    let mut monotonicity = None;
    'outer: for x in 0..n {
        for y in x..n {
            for z in 0..n {
                if t.get(x, z) > t.get(y, z) {
                    monotonicity = Some((x, y, z));
                    break 'outer;
                }
            }
        }
    }
    let mut verdict = NatNormVerdict {
        commutativity,
        neutral_top,
        monotonicity,
        continuity: "not applicable",
        adjointness_failure: None,
        nabl: None,
    };
    if verdict.is_nat_norm() {
        let r = residuum_from_table(t);
        verdict.adjointness_failure = r.adjointness_failure;
        if r.adjointness_failure.is_none() {
            let chain = chain_from_table(t)?;
            verdict.nabl = Some(check_axioms(&chain, AlgebraClass::NaBl)?);
        }
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TNormFormula {
    Lukasiewicz,
    Goedel,
    Product,
}

impl TNormFormula {
    pub fn parse(s: &str) -> Result<TNormFormula> {
        match s {
            "lukasiewicz" => Ok(TNormFormula::Lukasiewicz),
            "goedel" => Ok(TNormFormula::Goedel),
            "product" => Ok(TNormFormula::Product),
            other => Err(Error::UnknownFormula(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TNormFormula::Lukasiewicz => "lukasiewicz",
            TNormFormula::Goedel => "goedel",
            TNormFormula::Product => "product",
        }
    }
}

/// Whether the uniform grid with `points` points is closed under the
/// formula, decided with exact integer arithmetic.
pub fn grid_closure_check(formula: TNormFormula, points: usize) -> Result<bool> {
    if points < 2 {
        return Err(Error::InvalidPartition("a grid needs two points".to_string()));
    }
    let n = points - 1;
    Ok(match formula {
        TNormFormula::Lukasiewicz | TNormFormula::Goedel => true,
        // (i/n)(j/n) is on the grid iff n divides i·j
        TNormFormula::Product => (0..=n).all(|i| (0..=n).all(|j| (i * j) % n == 0)),
    })
}

/// Display labels `0, 1/n, …, 1`, reduced.
pub fn grid_labels(steps: usize) -> Vec<String> {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (0..=steps)
        .map(|i| match i {
            0 => "0".to_string(),
            _ if i == steps => "1".to_string(),
            _ => {
                let g = gcd(i, steps);
                format!("{}/{}", i / g, steps / g)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residuated::names::IMP;

    #[test]
    fn small_lukasiewicz_values() {
        let l2 = lukasiewicz_chain(2);
        let mul = l2.op("mul").unwrap();
        let imp = l2.op(IMP).unwrap();
        assert_eq!(l2.apply2(mul, 1, 1), 0);
        assert_eq!(l2.apply2(imp, 1, 0), 1);
        assert_eq!(boolean_algebra().size(), 2);
    }

    #[test]
    fn goedel_residuum() {
        let g = goedel_chain(2);
        let imp = g.op(IMP).unwrap();
        assert_eq!(g.apply2(imp, 1, 0), 0);
        assert_eq!(g.apply2(imp, 2, 0), 0);
        assert_eq!(g.apply2(imp, 1, 2), 2);
        assert_eq!(g.apply2(imp, 2, 1), 1);
    }

    #[test]
    fn ordinal_sums() {
        let spec = ChainSpec::ordinal_sum(vec![(ComponentKind::Goedel, 2), (ComponentKind::Lukasiewicz, 2)]);
        let c = make_chain(&spec).unwrap();
        assert_eq!(c.size(), 5);
        assert!(check_axioms(&c, AlgebraClass::Bl).unwrap().holds());
        assert!(!check_axioms(&c, AlgebraClass::Mv).unwrap().holds());

        let single = ChainSpec::ordinal_sum(vec![(ComponentKind::Lukasiewicz, 4)]);
        assert_eq!(make_chain(&single).unwrap(), lukasiewicz_chain(4));
        assert!(make_chain(&ChainSpec {
            kind: ChainKind::OrdinalSum(vec![(ComponentKind::Goedel, 2)]),
            steps: 3
        })
        .is_err());
    }

    #[test]
    fn product_grids() {
        assert!(grid_closure_check(TNormFormula::Product, 2).unwrap());
        assert!(!grid_closure_check(TNormFormula::Product, 3).unwrap());
        assert!(grid_closure_check(TNormFormula::Goedel, 7).unwrap());
        assert!(matches!(
            make_chain(&ChainSpec::product(2)),
            Err(Error::GridNotClosed { .. })
        ));
        assert_eq!(make_chain(&ChainSpec::product(1)).unwrap(), boolean_algebra());
        assert!(TNormFormula::parse("hamacher").is_err());
    }

    #[test]
    fn nilpotent_minimum_is_mtl_not_bl() {
        let nm = nilpotent_minimum_chain(3).unwrap();
        assert!(check_axioms(&nm, AlgebraClass::Mtl).unwrap().holds());
        assert!(!check_axioms(&nm, AlgebraClass::Bl).unwrap().holds());
    }

    #[test]
    fn nat_norms() {
        let l = tnorm_table(&ChainSpec::lukasiewicz(3)).unwrap();
        assert!(validate_nat_norm(&l).unwrap().passes());
        let bad = GroupoidTable::from_fn(3, GroupoidClass::NatNorm, |i, j| if (i, j) == (0, 1) { 1 } else { i.min(j) }).unwrap();
        assert_eq!(validate_nat_norm(&bad).unwrap().commutativity, Some((0, 1)));
    }

    #[test]
    fn labels() {
        assert_eq!(grid_labels(4), vec!["0", "1/4", "1/2", "3/4", "1"]);
    }
}
