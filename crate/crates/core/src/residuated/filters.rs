use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{bl_signature, ResiduatedView};
use crate::algebra::FiniteAlgebra;
use crate::congruence::Congruence;
use crate::error::{Error, Result};

/// A filter: contains 1, closed under `⊙`, upward closed. Members are kept
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    members: Vec<usize>,
}

impl Filter {
    /// Wraps a member list without checking it; see [`Filter::validate`].
    pub fn from_members(mut members: Vec<usize>) -> Filter {
        members.sort_unstable();
        members.dedup();
        Filter { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Filter) -> Filter {
        Filter {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// Checks the three filter conditions.
    pub fn validate(&self, m: &ResiduatedView<'_>) -> Result<()> {
        let n = m.size();
        if let Some(&bad) = self.members.iter().find(|&&x| x >= n) {
            return Err(Error::ElementOutOfRange { element: bad, size: n });
        }
        if !self.contains(m.one()) {
            return Err(Error::Precondition("filter does not contain top".into()));
        }
        for &x in &self.members {
            for &y in &self.members {
                if !self.contains(m.mul(x, y)) {
                    return Err(Error::Precondition(format!(
                        "filter not closed under mul at ({x}, {y})"
                    )));
                }
            }
            for y in 0..n {
                if m.le(x, y) && !self.contains(y) {
                    return Err(Error::Precondition(format!(
                        "filter not upward closed: {x} <= {y}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Least filter containing `generators`.
pub fn filter_generated(m: &ResiduatedView<'_>, generators: &[usize]) -> Filter {
    let n = m.size();
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    let push = |x: usize, inside: &mut Vec<bool>, members: &mut Vec<usize>| {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
        }
    };
    push(m.one(), &mut inside, &mut members);
    for &g in generators {
        push(g, &mut inside, &mut members);
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for y in 0..n {
            if m.le(x, y) {
                push(y, &mut inside, &mut members);
            }
        }
        for j in 0..=i {
            let p = m.mul(x, members[j]);
            push(p, &mut inside, &mut members);
        }
        i += 1;
    }
    Filter::from_members(members)
}

#[derive(Clone, Copy, Debug)]
pub enum FilterMode<'t> {
    All,
    /// Proper filters not strictly below another proper filter.
    Maximal,
    /// Filters with `τ(F) ⊆ F`.
    Tau(&'t [usize]),
}

/// Filters of `m`, ordered by size and then by members.
///
/// Computed as the closure of the principal filters under pairwise joins.
pub fn filters(m: &ResiduatedView<'_>, mode: FilterMode<'_>) -> Vec<Filter> {
    let n = m.size();
    let mut seen = BTreeSet::new();
    let mut list = Vec::new();
    let add = |f: Filter, seen: &mut BTreeSet<Filter>, list: &mut Vec<Filter>| {
        if seen.insert(f.clone()) {
            list.push(f);
        }
    };
    add(filter_generated(m, &[]), &mut seen, &mut list);
    for a in 0..n {
        add(filter_generated(m, &[a]), &mut seen, &mut list);
    }
    let principals = list.len();
    let mut i = 0;
    while i < list.len() {
        for j in 1..principals.min(i) {
            let mut gens = list[i].members.clone();
            gens.extend_from_slice(&list[j].members);
            let f = filter_generated(m, &gens);
            add(f, &mut seen, &mut list);
        }
        i += 1;
    }
    let mut all: Vec<Filter> = seen.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    match mode {
        FilterMode::All => all,
        FilterMode::Maximal => {
            let proper: Vec<&Filter> = all.iter().filter(|f| f.len() < n).collect();
            proper
                .iter()
                .filter(|f| !proper.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
                .map(|f| (*f).clone())
                .collect()
        }
        FilterMode::Tau(tau) => all
            .into_iter()
            .filter(|f| f.members.iter().all(|&x| f.contains(tau[x])))
            .collect(),
    }
}

/// `x ~ y` iff `x → y` and `y → x` lie in `f`.
pub fn filter_to_congruence(m: &ResiduatedView<'_>, f: &Filter) -> Result<Congruence> {
    f.validate(m)?;
    let n = m.size();
    let rel = |x: usize, y: usize| f.contains(m.imp(x, y)) && f.contains(m.imp(y, x));
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rel(x, y) {
                pairs.push((x, y));
            }
        }
    }
    let theta = Congruence::from_pairs(n, &pairs);
    for x in 0..n {
        for y in x + 1..n {
            if theta.related(x, y) && !rel(x, y) {
                return Err(Error::Precondition(format!(
                    "filter relation is not transitive at ({x}, {y})"
                )));
            }
        }
    }
    m.algebra().check_compatible(&theta)?;
    Ok(theta)
}

/// The block of 1.
pub fn congruence_to_filter(m: &ResiduatedView<'_>, theta: &Congruence) -> Result<Filter> {
    if theta.size() != m.size() {
        return Err(Error::SizeMismatch {
            expected: m.size(),
            found: theta.size(),
        });
    }
    m.algebra().check_compatible(theta)?;
    let f = Filter::from_members(theta.block_of(m.one()).collect());
    f.validate(m)?;
    Ok(f)
}

/// First `(x, y)` with `x ∈ h1`, `y ∈ h2`, both below 1 and `x ∨ y = 1`.
pub fn disjunction_violation(
    m: &ResiduatedView<'_>,
    h1: &[usize],
    h2: &[usize],
) -> Option<(usize, usize)> {
    let one = m.one();
    for &x in h1 {
        for &y in h2 {
            if x != one && y != one && m.join(x, y) == one {
                return Some((x, y));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureProbes {
    pub maximal_filters: Vec<Filter>,
    /// Intersection of the maximal filters (the whole algebra if there are none).
    pub radical: Filter,
    pub is_local: bool,
    pub boolean_elements: Vec<usize>,
    pub booleans_closed_under_complement: bool,
    pub mv_skeleton: Vec<usize>,
}

pub fn structure_probes(m: &ResiduatedView<'_>) -> StructureProbes {
    let maximal_filters = filters(m, FilterMode::Maximal);
    let mut radical = Filter::from_members((0..m.size()).collect());
    for f in &maximal_filters {
        radical = radical.intersection(f);
    }
    let boolean_elements = super::boolean_elements(m);
    let booleans_closed_under_complement = boolean_elements
        .iter()
        .all(|&x| boolean_elements.contains(&m.neg(x)));
    StructureProbes {
        is_local: maximal_filters.len() == 1,
        maximal_filters,
        radical,
        boolean_elements,
        booleans_closed_under_complement,
        mv_skeleton: super::involutive_elements(m),
    }
}

/// The MV-skeleton `{x : x⁻⁻ = x}` as an algebra, with `x ⊙ y` replaced by
/// `(x ⊙ y)⁻⁻` and the other operations restricted. Returns the algebra and
/// the list of original elements (position = new index).
pub fn mv_skeleton_algebra(m: &ResiduatedView<'_>) -> Result<(FiniteAlgebra, Vec<usize>)> {
    let skeleton = super::involutive_elements(m);
    let mut index = vec![usize::MAX; m.size()];
    for (i, &x) in skeleton.iter().enumerate() {
        index[x] = i;
    }
    let sig = bl_signature();
    let names: Vec<&str> = sig.symbols().iter().map(|s| s.name.as_str()).collect();
    let k = skeleton.len();
    let mut tables = Vec::with_capacity(names.len());
    for name in &names {
        let value = |x: usize, y: usize| -> usize {
            match *name {
                super::names::MEET => m.meet(x, y),
                super::names::JOIN => m.join(x, y),
                super::names::MUL => m.neg(m.neg(m.mul(x, y))),
                super::names::IMP => m.imp(x, y),
                super::names::BOT => m.zero(),
                _ => m.one(),
            }
        };
        let arity = sig.arity(sig.index_of(name).expect("own symbol"));
        let mut table = Vec::new();
        if arity == 0 {
            table.push(value(0, 0));
        } else {
            for &x in &skeleton {
                for &y in &skeleton {
                    table.push(value(x, y));
                }
            }
        }
        for (pos, v) in table.iter_mut().enumerate() {
            if index[*v] == usize::MAX {
                let args = if arity == 0 {
                    Vec::new()
                } else {
                    vec![skeleton[pos / k], skeleton[pos % k]]
                };
                return Err(Error::NotClosed {
                    symbol: (*name).into(),
                    args,
                });
            }
            *v = index[*v];
        }
        tables.push(table);
    }
    Ok((FiniteAlgebra::new(sig, k, tables)?, skeleton))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{boolean_algebra, goedel_chain, lukasiewicz_chain};

    fn members(fs: &[Filter]) -> Vec<Vec<usize>> {
        fs.iter().map(|f| f.members().to_vec()).collect()
    }

    #[test]
    fn filters_of_small_chains() {
        let b = boolean_algebra();
        let v = ResiduatedView::new(&b).unwrap();
        assert_eq!(members(&filters(&v, FilterMode::All)), vec![vec![1], vec![0, 1]]);
        assert_eq!(members(&filters(&v, FilterMode::Maximal)), vec![vec![1]]);

        let g = goedel_chain(2);
        let v = ResiduatedView::new(&g).unwrap();
        assert_eq!(
            members(&filters(&v, FilterMode::All)),
            vec![vec![2], vec![1, 2], vec![0, 1, 2]]
        );
        assert_eq!(structure_probes(&v).radical.members(), &[1, 2]);

        let l = lukasiewicz_chain(2);
        let v = ResiduatedView::new(&l).unwrap();
        assert_eq!(members(&filters(&v, FilterMode::All)), vec![vec![2], vec![0, 1, 2]]);
        assert_eq!(structure_probes(&v).radical.members(), &[2]);
    }

    #[test]
    fn goedel_filter_congruence() {
        let g = goedel_chain(2);
        let v = ResiduatedView::new(&g).unwrap();
        let theta = filter_to_congruence(&v, &Filter::from_members(vec![1, 2])).unwrap();
        assert_eq!(theta.blocks(), vec![vec![0], vec![1, 2]]);
        assert_eq!(congruence_to_filter(&v, &theta).unwrap().members(), &[1, 2]);
        assert!(filter_to_congruence(&v, &Filter::from_members(vec![1])).is_err());
    }

    #[test]
    fn square_probes() {
        let b = boolean_algebra();
        let sq = b.product(&b).unwrap().0;
        let v = ResiduatedView::new(&sq).unwrap();
        let p = structure_probes(&v);
        assert_eq!(p.boolean_elements, vec![0, 1, 2, 3]);
        assert_eq!(p.maximal_filters.len(), 2);
        assert!(!p.is_local);
        // (0,1) = 1 and (1,0) = 2 in the product encoding
        assert_eq!(disjunction_violation(&v, &[3, 1], &[3, 2]), Some((1, 2)));
        assert_eq!(disjunction_violation(&v, &[3], &[0, 1, 2]), None);
    }

    #[test]
    fn goedel_skeleton_is_two_element() {
        let g = goedel_chain(2);
        let v = ResiduatedView::new(&g).unwrap();
        let (sk, elems) = mv_skeleton_algebra(&v).unwrap();
        assert_eq!(elems, vec![0, 2]);
        assert!(super::super::check_axioms(&sk, super::super::AlgebraClass::Mv)
            .unwrap()
            .holds());
    }
}
