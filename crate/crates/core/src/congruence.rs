//! Equivalence relations on `0..n`, stored as canonical block labellings.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// An equivalence relation on `0..n`, each element labelled by the least
/// member of its block. Two congruences are equal iff their labellings are.
///
/// Whether the relation is compatible with some algebra is not part of the
/// type; see [`crate::FiniteAlgebra::check_compatible`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    /// Δ, the identity relation.
    pub fn identity(n: usize) -> Self {
        Congruence {
            labels: (0..n).collect(),
        }
    }

    /// ∇, the all relation.
    pub fn total(n: usize) -> Self {
        Congruence { labels: vec![0; n] }
    }

    /// Canonicalises an arbitrary labelling: elements with equal labels end up
    /// in one block.
    pub fn from_labels<T: Ord + Copy>(raw: &[T]) -> Self {
        let mut first = BTreeMap::new();
        let labels = raw
            .iter()
            .enumerate()
            .map(|(x, r)| *first.entry(*r).or_insert(x))
            .collect();
        Congruence { labels }
    }

    /// Kernel of a map: `x ~ y` iff `map[x] == map[y]`.
    pub fn kernel(map: &[usize]) -> Self {
        Self::from_labels(map)
    }

    /// Equivalence relation generated by the given pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        uf.into_congruence()
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut uf = UnionFind::new(n);
        for block in blocks {
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.into_congruence()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, x: usize) -> usize {
        self.labels[x]
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn block_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let l = self.labels[x];
        (0..self.labels.len()).filter(move |&y| self.labels[y] == l)
    }

    /// Least members of the blocks, increasing.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&x| self.labels[x] == x)
            .collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.representatives()
            .into_iter()
            .map(|r| self.block_of(r).collect())
            .collect()
    }

    pub fn block_count(&self) -> usize {
        self.labels
            .iter()
            .enumerate()
            .filter(|(x, &l)| *x == l)
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().enumerate().all(|(x, &l)| x == l)
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    /// Related pairs `(x, y)` with `x < y`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.labels.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if self.labels[x] == self.labels[y] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Pairs `(x, label(x))` for non-representatives: a small generating set.
    pub fn spanning_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.labels.len())
            .filter(|&x| self.labels[x] != x)
            .map(|x| (self.labels[x], x))
            .collect()
    }

    /// Inclusion as relations: every pair of `self` is a pair of `other`.
    pub fn le(&self, other: &Congruence) -> bool {
        self.labels.len() == other.labels.len()
            && (0..self.labels.len()).all(|x| other.related(x, self.labels[x]))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(usize, usize)> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&a, &b)| (a, b))
            .collect();
        Congruence::from_labels(&pairs)
    }

    /// Join in the lattice of equivalence relations. Congruence lattices are
    /// sublattices of it, so this is also the join of two congruences.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.labels.len();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, self.labels[x]);
            uf.union(x, other.labels[x]);
        }
        uf.into_congruence()
    }

    /// Restriction to a subset, re-indexed by position in `subset`.
    pub fn restrict(&self, subset: &[usize]) -> Congruence {
        let raw: Vec<usize> = subset.iter().map(|&x| self.labels[x]).collect();
        Congruence::from_labels(&raw)
    }

    /// Preimage along a map: `x ~ y` iff `map[x] ~ map[y]` here.
    pub fn preimage(&self, map: &[usize]) -> Congruence {
        let raw: Vec<usize> = map.iter().map(|&x| self.labels[x]).collect();
        Congruence::from_labels(&raw)
    }

    /// Image of a congruence on a subset given by `embedding`, as an
    /// equivalence relation on `0..n` (identity outside the image).
    pub fn push_forward(&self, embedding: &[usize], n: usize) -> Congruence {
        let mut uf = UnionFind::new(n);
        for x in 0..self.labels.len() {
            uf.union(embedding[x], embedding[self.labels[x]]);
        }
        uf.into_congruence()
    }
}

/// Order used for listing congruences: Δ first, then by decreasing number of
/// blocks, ties broken by the labelling.
pub fn listing_order(a: &Congruence, b: &Congruence) -> Ordering {
    b.block_count()
        .cmp(&a.block_count())
        .then_with(|| a.labels.cmp(&b.labels))
}

pub fn sort_congruences(list: &mut [Congruence]) {
    list.sort_by(listing_order);
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub(crate) fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let mut least = vec![usize::MAX; n];
        let mut roots = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            roots[x] = r;
            if least[r] == usize::MAX {
                least[r] = x;
            }
        }
        Congruence {
            labels: roots.iter().map(|&r| least[r]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_labels() {
        let c = Congruence::from_labels(&[5, 3, 5, 3, 9]);
        assert_eq!(c.labels(), &[0, 1, 0, 1, 4]);
        assert_eq!(c.blocks(), vec![vec![0, 2], vec![1, 3], vec![4]]);
        assert_eq!(c.block_count(), 3);
    }

    #[test]
    fn identity_and_total() {
        assert!(Congruence::identity(4).is_identity());
        assert!(Congruence::total(4).is_total());
        assert!(Congruence::identity(4).le(&Congruence::total(4)));
        assert!(!Congruence::total(4).le(&Congruence::identity(4)));
    }

    #[test]
    fn restrict_and_push_forward() {
        let c = Congruence::from_blocks(5, &[vec![0, 3], vec![1, 4]]);
        let r = c.restrict(&[0, 1, 3]);
        assert_eq!(r.labels(), &[0, 1, 0]);
        let back = r.push_forward(&[0, 1, 3], 5);
        assert_eq!(back, Congruence::from_pairs(5, &[(0, 3)]));
    }

    fn labelling(n: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0..n, n)
    }

    proptest! {
        #[test]
        fn labels_are_canonical(raw in labelling(7)) {
            let c = Congruence::from_labels(&raw);
            for x in 0..7 {
                prop_assert_eq!(c.label(c.label(x)), c.label(x));
                prop_assert!(c.label(x) <= x);
            }
        }

        #[test]
        fn join_and_meet_are_bounds(a in labelling(6), b in labelling(6)) {
            let (a, b) = (Congruence::from_labels(&a), Congruence::from_labels(&b));
            let j = a.join(&b);
            let m = a.meet(&b);
            prop_assert!(a.le(&j) && b.le(&j));
            prop_assert!(m.le(&a) && m.le(&b));
            prop_assert_eq!(a.join(&b), b.join(&a));
            prop_assert_eq!(a.join(&a), a.clone());
            prop_assert_eq!(a.join(&Congruence::identity(6)), a.clone());
            prop_assert_eq!(a.meet(&j), a);
        }
    }
}
