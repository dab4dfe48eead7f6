//! Finite algebras of arbitrary signature and the basic constructions on
//! them: direct products, generated subalgebras, quotients and expansions.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::odometer::Odometer;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols. The order fixes the order of the
/// tables inside a [`FiniteAlgebra`] and inside algebra files.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<Symbol> = Vec::new();
        for (name, arity) in symbols {
            let name = name.into();
            if out.iter().any(|s| s.name == name) {
                return Err(Error::DuplicateSymbol(name));
            }
            out.push(Symbol { name, arity });
        }
        Ok(Signature { symbols: out })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.symbols[op].arity
    }

    pub fn name(&self, op: usize) -> &str {
        &self.symbols[op].name
    }

    /// The signature with one more symbol appended at the end.
    pub fn extended(&self, name: &str, arity: usize) -> Result<Signature> {
        if self.index_of(name).is_some() {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        let mut symbols = self.symbols.clone();
        symbols.push(Symbol {
            name: name.to_string(),
            arity,
        });
        Ok(Signature { symbols })
    }
}

/// A total algebra on the universe `0..size`.
///
/// The table of an operation of arity `k` has `size^k` entries; the entry for
/// `(a_1, …, a_k)` sits at index `((a_1·n + a_2)·n + …)·n + a_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

fn checked_pow(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..k {
        acc = acc.checked_mul(n)?;
    }
    Some(acc)
}

impl FiniteAlgebra {
    pub fn new(signature: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        if tables.len() != signature.len() {
            return Err(Error::SizeMismatch {
                expected: signature.len(),
                found: tables.len(),
            });
        }
        for (sym, table) in signature.symbols().iter().zip(&tables) {
            let expected = checked_pow(size, sym.arity).ok_or(Error::CapExceeded {
                what: "operation table entries",
                size: u64::MAX,
                cap: usize::MAX as u64,
            })?;
            if table.len() != expected {
                return Err(Error::TableShape {
                    symbol: sym.name.clone(),
                    expected,
                    found: table.len(),
                });
            }
            if let Some((position, &value)) = table.iter().enumerate().find(|(_, &v)| v >= size) {
                return Err(Error::EntryOutOfRange {
                    symbol: sym.name.clone(),
                    position,
                    value,
                    size,
                });
            }
        }
        Ok(FiniteAlgebra {
            signature,
            size,
            tables,
        })
    }

    /// Builds every table by calling `f(op, args)` on each argument tuple.
    pub fn from_fn<F>(signature: Signature, size: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, &[usize]) -> usize,
    {
        let mut tables = Vec::with_capacity(signature.len());
        for op in 0..signature.len() {
            let mut table = Vec::new();
            let mut od = Odometer::new(size, signature.arity(op));
            while let Some(args) = od.next() {
                table.push(f(op, args));
            }
            tables.push(table);
        }
        FiniteAlgebra::new(signature, size, tables)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn op(&self, name: &str) -> Option<usize> {
        self.signature.index_of(name)
    }

    pub fn tuple_index(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.size + a)
    }

    /// Applies operation `op` to `args`. Panics on an arity mismatch.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.signature.arity(op));
        self.tables[op][self.tuple_index(args)]
    }

    #[inline]
    pub fn apply2(&self, op: usize, x: usize, y: usize) -> usize {
        self.tables[op][x * self.size + y]
    }

    #[inline]
    pub fn apply1(&self, op: usize, x: usize) -> usize {
        self.tables[op][x]
    }

    /// Values of the nullary operations, in signature order.
    pub fn constants(&self) -> Vec<usize> {
        (0..self.signature.len())
            .filter(|&op| self.signature.arity(op) == 0)
            .map(|op| self.tables[op][0])
            .collect()
    }

    /// Replaces one table entry, keeping the result a valid algebra.
    pub fn with_entry(&self, op: usize, position: usize, value: usize) -> Result<Self> {
        let mut tables = self.tables.clone();
        if op >= tables.len() || position >= tables[op].len() {
            return Err(Error::Precondition("table position out of range".to_string()));
        }
        tables[op][position] = value;
        FiniteAlgebra::new(self.signature.clone(), self.size, tables)
    }

    /// The algebra with an extra unary operation `name` given by `map`.
    pub fn expand_unary(&self, name: &str, map: &[usize]) -> Result<Self> {
        if map.len() != self.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                found: map.len(),
            });
        }
        let signature = self.signature.extended(name, 1)?;
        let mut tables = self.tables.clone();
        tables.push(map.to_vec());
        FiniteAlgebra::new(signature, self.size, tables)
    }

    /// The reduct keeping only the named operations, in the given order.
    pub fn reduct(&self, names: &[&str]) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut tables = Vec::new();
        for &name in names {
            let op = self
                .op(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            symbols.push((name, self.signature.arity(op)));
            tables.push(self.tables[op].clone());
        }
        FiniteAlgebra::new(Signature::new(symbols)?, self.size, tables)
    }

    /// First tuple on which `rel` fails to be compatible with an operation,
    /// where `rel` is any equivalence given as a block labelling.
    pub fn compatibility_violation(&self, theta: &Congruence) -> Option<(usize, Vec<usize>, Vec<usize>)> {
        let n = self.size;
        for op in 0..self.signature.len() {
            let k = self.signature.arity(op);
            // Changing one coordinate at a time within a block suffices.
            let mut od = Odometer::new(n, k);
            while let Some(args) = od.next() {
                let base = self.apply(op, args);
                for pos in 0..k {
                    let x = args[pos];
                    for y in theta.block_of(x) {
                        if y <= x {
                            continue;
                        }
                        let mut other = args.to_vec();
                        other[pos] = y;
                        let img = self.apply(op, &other);
                        if !theta.related(base, img) {
                            return Some((op, args.to_vec(), other));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_compatible(&self, theta: &Congruence) -> bool {
        theta.size() == self.size && self.compatibility_violation(theta).is_none()
    }

    pub fn check_compatible(&self, theta: &Congruence) -> Result<()> {
        if theta.size() != self.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                found: theta.size(),
            });
        }
        match self.compatibility_violation(theta) {
            None => Ok(()),
            Some((op, left, right)) => Err(Error::NotCompatible {
                symbol: self.signature.name(op).to_string(),
                left,
                right,
            }),
        }
    }

    /// Quotient by a congruence. Blocks are numbered in order of their least
    /// member, which is also the order of their canonical labels.
    pub fn quotient(&self, theta: &Congruence) -> Result<(FiniteAlgebra, Morphism)> {
        self.check_compatible(theta)?;
        let reps = theta.representatives();
        let mut index = vec![0usize; self.size];
        for x in 0..self.size {
            index[x] = reps.binary_search(&theta.label(x)).unwrap_or(0);
        }
        let m = reps.len();
        let mut buf = Vec::new();
        let quotient = FiniteAlgebra::from_fn(self.signature.clone(), m, |op, args| {
            buf.clear();
            buf.extend(args.iter().map(|&b| reps[b]));
            index[self.apply(op, &buf)]
        })?;
        Ok((quotient, Morphism::new(index)))
    }

    /// Least subuniverse containing `generators` (and every constant).
    pub fn subuniverse_generated(&self, generators: &[usize]) -> Result<Vec<usize>> {
        let n = self.size;
        let mut member = vec![false; n];
        let mut elems: Vec<usize> = Vec::new();
        for &g in generators {
            if g >= n {
                return Err(Error::ElementOutOfRange { element: g, size: n });
            }
            if !member[g] {
                member[g] = true;
                elems.push(g);
            }
        }
        for c in self.constants() {
            if !member[c] {
                member[c] = true;
                elems.push(c);
            }
        }
        // Semi-naive closure: only tuples touching an element added in the
        // previous round can produce something new.
        let mut old_len = 0;
        let mut args = Vec::new();
        while old_len < elems.len() {
            let snapshot = elems.len();
            for op in 0..self.signature.len() {
                let k = self.signature.arity(op);
                if k == 0 {
                    continue;
                }
                let mut od = Odometer::new(snapshot, k);
                while let Some(idx) = od.next() {
                    if idx.iter().all(|&i| i < old_len) {
                        continue;
                    }
                    args.clear();
                    args.extend(idx.iter().map(|&i| elems[i]));
                    let v = self.apply(op, &args);
                    if !member[v] {
                        member[v] = true;
                        elems.push(v);
                    }
                }
            }
            old_len = snapshot;
        }
        elems.sort_unstable();
        Ok(elems)
    }

    /// First operation/tuple under which `subset` is not closed.
    pub fn closure_violation(&self, subset: &[usize]) -> Option<(usize, Vec<usize>)> {
        let member: BTreeSet<usize> = subset.iter().copied().collect();
        let elems: Vec<usize> = member.iter().copied().collect();
        let mut args = Vec::new();
        for op in 0..self.signature.len() {
            let mut od = Odometer::new(elems.len(), self.signature.arity(op));
            while let Some(idx) = od.next() {
                args.clear();
                args.extend(idx.iter().map(|&i| elems[i]));
                if !member.contains(&self.apply(op, &args)) {
                    return Some((op, args.clone()));
                }
            }
        }
        None
    }

    /// The subalgebra induced on a subuniverse, re-indexed in increasing
    /// order. Returns it with the inclusion map.
    pub fn subalgebra(&self, subuniverse: &[usize]) -> Result<(FiniteAlgebra, Morphism)> {
        let mut elems: Vec<usize> = subuniverse.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if let Some(&bad) = elems.iter().find(|&&x| x >= self.size) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                size: self.size,
            });
        }
        if elems.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if let Some((op, args)) = self.closure_violation(&elems) {
            return Err(Error::NotClosed {
                symbol: self.signature.name(op).to_string(),
                args,
            });
        }
        let mut buf = Vec::new();
        let sub = FiniteAlgebra::from_fn(self.signature.clone(), elems.len(), |op, args| {
            buf.clear();
            buf.extend(args.iter().map(|&i| elems[i]));
            let v = self.apply(op, &buf);
            elems.binary_search(&v).expect("closed subset")
        })?;
        Ok((sub, Morphism::new(elems)))
    }

    /// Direct product `self × other`. The pair `(i, j)` is encoded as
    /// `i·|other| + j`. Also returns both projections.
    pub fn product(&self, other: &FiniteAlgebra) -> Result<(FiniteAlgebra, Morphism, Morphism)> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch);
        }
        let m = other.size;
        let size = self.size.checked_mul(m).ok_or(Error::CapExceeded {
            what: "product size",
            size: u64::MAX,
            cap: usize::MAX as u64,
        })?;
        let mut left = Vec::new();
        let mut right = Vec::new();
        let prod = FiniteAlgebra::from_fn(self.signature.clone(), size, |op, args| {
            left.clear();
            right.clear();
            left.extend(args.iter().map(|&p| p / m));
            right.extend(args.iter().map(|&p| p % m));
            self.apply(op, &left) * m + other.apply(op, &right)
        })?;
        let p1 = Morphism::new((0..size).map(|p| p / m).collect());
        let p2 = Morphism::new((0..size).map(|p| p % m).collect());
        Ok((prod, p1, p2))
    }

    /// The one-element algebra of this signature.
    pub fn trivial(signature: Signature) -> FiniteAlgebra {
        FiniteAlgebra::from_fn(signature, 1, |_, _| 0).expect("trivial algebra is valid")
    }
}

/// Free-standing form of [`FiniteAlgebra::product`].
pub fn direct_product(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<(FiniteAlgebra, Morphism, Morphism)> {
    a.product(b)
}

/// Free-standing form of [`FiniteAlgebra::subuniverse_generated`], also
/// returning the induced subalgebra and its inclusion.
pub fn subuniverse_generated(
    a: &FiniteAlgebra,
    generators: &[usize],
) -> Result<(Vec<usize>, FiniteAlgebra, Morphism)> {
    let set = a.subuniverse_generated(generators)?;
    let (sub, incl) = a.subalgebra(&set)?;
    Ok((set, sub, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{boolean_algebra, lukasiewicz_chain};

    #[test]
    fn duplicate_symbols_rejected() {
        let err = Signature::new([("f", 2), ("f", 1)]).unwrap_err();
        assert_eq!(err, Error::DuplicateSymbol("f".into()));
    }

    #[test]
    fn table_entries_validated() {
        let sig = Signature::new([("f", 1)]).unwrap();
        let err = FiniteAlgebra::new(sig.clone(), 2, vec![vec![0, 2]]).unwrap_err();
        assert!(matches!(err, Error::EntryOutOfRange { value: 2, .. }));
        let err = FiniteAlgebra::new(sig, 2, vec![vec![0]]).unwrap_err();
        assert!(matches!(err, Error::TableShape { expected: 2, .. }));
    }

    #[test]
    fn product_sizes_and_projections() {
        let b = boolean_algebra();
        let l2 = lukasiewicz_chain(2);
        let (p, p1, p2) = l2.product(&b).unwrap();
        assert_eq!(p.size(), 6);
        for x in 0..3 {
            for y in 0..2 {
                let e = x * 2 + y;
                assert_eq!((p1.apply(e), p2.apply(e)), (x, y));
            }
        }
        p1.verify(&p, &l2).unwrap();
        p2.verify(&p, &b).unwrap();
    }

    #[test]
    fn generated_subuniverse_cases() {
        let b = boolean_algebra();
        assert_eq!(b.subuniverse_generated(&[]).unwrap(), vec![0, 1]);
        let l4 = lukasiewicz_chain(4);
        assert_eq!(l4.subuniverse_generated(&[0, 1, 2, 3, 4]).unwrap(), vec![0, 1, 2, 3, 4]);
        // ½ generates {0, ½, 1}: every operation maps {0, ½, 1} into itself.
        assert_eq!(l4.subuniverse_generated(&[2]).unwrap(), vec![0, 2, 4]);
        assert_eq!(l4.subuniverse_generated(&[1]).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn quotient_by_identity_and_total() {
        let l2 = lukasiewicz_chain(2);
        let (q, map) = l2.quotient(&Congruence::identity(3)).unwrap();
        assert_eq!(q, l2);
        assert_eq!(map.map(), &[0, 1, 2]);
        let (q, _) = l2.quotient(&Congruence::total(3)).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn quotient_rejects_incompatible_partition() {
        let l2 = lukasiewicz_chain(2);
        let theta = Congruence::from_labels(&[0, 1, 1]);
        assert!(matches!(l2.quotient(&theta), Err(Error::NotCompatible { .. })));
    }

    #[test]
    fn subalgebra_rejects_non_closed() {
        let l2 = lukasiewicz_chain(2);
        assert!(matches!(l2.subalgebra(&[1, 2]), Err(Error::NotClosed { .. })));
    }
}
