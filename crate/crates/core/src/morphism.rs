//! Maps between finite algebras and the backtracking homomorphism search.

use alloc::collections::VecDeque;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::odometer::Odometer;

/// A map between universes, `map[x]` being the image of `x`.
///
/// Construction does not check anything; [`Morphism::verify`] checks the
/// homomorphism property against a concrete domain and codomain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    map: Vec<usize>,
}

impl Morphism {
    pub fn new(map: Vec<usize>) -> Self {
        Morphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Morphism {
            map: (0..n).collect(),
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Morphism) -> Morphism {
        Morphism::new(self.map.iter().map(|&x| other.map[x]).collect())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<usize> = self.map.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_surjective(&self, codomain_size: usize) -> bool {
        let mut hit = vec![false; codomain_size];
        for &y in &self.map {
            if y < codomain_size {
                hit[y] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.iter().all(|&y| y < self.map.len() && self.map[y] == y)
    }

    /// Checks `f(g^dom(x̄)) = g^cod(f(x̄))` for every symbol and tuple.
    pub fn verify(&self, domain: &FiniteAlgebra, codomain: &FiniteAlgebra) -> Result<()> {
        if domain.signature() != codomain.signature() {
            return Err(Error::SignatureMismatch);
        }
        if self.map.len() != domain.size() {
            return Err(Error::SizeMismatch {
                expected: domain.size(),
                found: self.map.len(),
            });
        }
        if let Some(&bad) = self.map.iter().find(|&&y| y >= codomain.size()) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                size: codomain.size(),
            });
        }
        let sig = domain.signature();
        let mut image = Vec::new();
        for op in 0..sig.len() {
            let mut od = Odometer::new(domain.size(), sig.arity(op));
            while let Some(args) = od.next() {
                image.clear();
                image.extend(args.iter().map(|&a| self.map[a]));
                if self.map[domain.apply(op, args)] != codomain.apply(op, &image) {
                    return Err(Error::NotAHomomorphism {
                        symbol: sig.name(op).to_string(),
                        args: args.to_vec(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismMode {
    All,
    Endomorphisms,
    IdempotentEndomorphisms,
    Embeddings,
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    dom: &'a FiniteAlgebra,
    cod: &'a FiniteAlgebra,
    mode: MorphismMode,
    img: Vec<usize>,
    /// Preimage count per codomain element, for the injectivity check.
    hits: Vec<usize>,
    trail: Vec<usize>,
    /// Elements in assignment order; propagation walks it front to back.
    order: Vec<usize>,
    queue: VecDeque<usize>,
    args: Vec<usize>,
    image_args: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(dom: &'a FiniteAlgebra, cod: &'a FiniteAlgebra, mode: MorphismMode) -> Self {
        Search {
            dom,
            cod,
            mode,
            img: vec![UNSET; dom.size()],
            hits: vec![0; cod.size()],
            trail: Vec::new(),
            order: Vec::new(),
            queue: VecDeque::new(),
            args: Vec::new(),
            image_args: Vec::new(),
        }
    }

    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.img[x] != UNSET {
            return self.img[x] == y;
        }
        if self.mode == MorphismMode::Embeddings && self.hits[y] > 0 {
            return false;
        }
        self.img[x] = y;
        self.hits[y] += 1;
        self.trail.push(x);
        self.order.push(x);
        self.queue.push_back(self.order.len() - 1);
        if self.mode == MorphismMode::IdempotentEndomorphisms && x != y && !self.assign(y, y) {
            return false;
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail entry");
            self.hits[self.img[x]] -= 1;
            self.img[x] = UNSET;
            self.order.pop();
        }
        self.queue.clear();
    }

    /// Forces images of every tuple whose newest member is the dequeued one.
    fn propagate(&mut self) -> bool {
        let sig = self.dom.signature();
        while let Some(pos) = self.queue.pop_front() {
            for op in 0..sig.len() {
                let k = sig.arity(op);
                if k == 0 {
                    continue;
                }
                let mut od = Odometer::new(pos + 1, k);
                while let Some(idx) = od.next() {
                    if !idx.contains(&pos) {
                        continue;
                    }
                    self.args.clear();
                    self.image_args.clear();
                    for &i in idx {
                        let e = self.order[i];
                        self.args.push(e);
                        self.image_args.push(self.img[e]);
                    }
                    let r = self.dom.apply(op, &self.args);
                    let v = self.cod.apply(op, &self.image_args);
                    if !self.assign(r, v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run<F: FnMut(&[usize]) -> bool>(&mut self, visit: &mut F) -> bool {
        let next = match self.img.iter().position(|&v| v == UNSET) {
            None => return visit(&self.img),
            Some(x) => x,
        };
        for y in 0..self.cod.size() {
            let mark = self.trail.len();
            if self.assign(next, y) && self.propagate() && !self.run(visit) {
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// Calls `visit` on every homomorphism of the requested kind, in
/// lexicographic order of the maps. Stops early when `visit` returns `false`.
pub fn search_morphisms<F>(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    mode: MorphismMode,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[usize]) -> bool,
{
    if dom.signature() != cod.signature() {
        return Err(Error::SignatureMismatch);
    }
    let endo = matches!(
        mode,
        MorphismMode::Endomorphisms | MorphismMode::IdempotentEndomorphisms
    );
    if endo && dom != cod {
        return Err(Error::Precondition(
            "endomorphism search needs identical domain and codomain".to_string(),
        ));
    }
    if mode == MorphismMode::Embeddings && dom.size() > cod.size() {
        return Ok(());
    }
    let mut search = Search::new(dom, cod, mode);
    let sig = dom.signature();
    for op in 0..sig.len() {
        if sig.arity(op) == 0 {
            let (c, d) = (dom.table(op)[0], cod.table(op)[0]);
            if !search.assign(c, d) {
                return Ok(());
            }
        }
    }
    if !search.propagate() {
        return Ok(());
    }
    search.run(&mut visit);
    Ok(())
}

/// All homomorphisms of the requested kind, sorted lexicographically.
pub fn enumerate_morphisms(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    mode: MorphismMode,
) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    search_morphisms(dom, cod, mode, |m| {
        out.push(Morphism::new(m.to_vec()));
        true
    })?;
    out.sort();
    Ok(out)
}

/// Some isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Morphism>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    let mut found = None;
    search_morphisms(a, b, MorphismMode::Embeddings, |m| {
        found = Some(Morphism::new(m.to_vec()));
        false
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{boolean_algebra, goedel_chain};

    #[test]
    fn boolean_algebra_has_only_identity() {
        let b = boolean_algebra();
        let idem = enumerate_morphisms(&b, &b, MorphismMode::IdempotentEndomorphisms).unwrap();
        assert_eq!(idem, vec![Morphism::identity(2)]);
    }

    #[test]
    fn two_chain_embeds_once_into_three_chain() {
        let b = boolean_algebra();
        let g3 = goedel_chain(2);
        let emb = enumerate_morphisms(&b, &g3, MorphismMode::Embeddings).unwrap();
        assert_eq!(emb, vec![Morphism::new(vec![0, 2])]);
    }

    #[test]
    fn endo_modes_need_same_algebra() {
        let b = boolean_algebra();
        let g3 = goedel_chain(2);
        assert!(enumerate_morphisms(&b, &g3, MorphismMode::Endomorphisms).is_err());
    }

    #[test]
    fn verify_reports_violation() {
        let b = boolean_algebra();
        let err = Morphism::new(vec![0, 0]).verify(&b, &b).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism { .. }));
    }
}
