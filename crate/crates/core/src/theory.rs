//! Identity comparison between the diagonal algebra `D(2)` and all
//! state-morphism Boolean algebras with at most eight elements.
//!
//! Every Boolean algebra of that size is `2^k` for `k ≤ 3`, and its
//! idempotent endomorphisms are the maps `x ↦ (x_{σ(0)}, …, x_{σ(k-1)})` for
//! idempotent `σ: k → k`. A term function in three variables is stored as
//! bit planes: for each algebra, for each coordinate, one bit per
//! assignment. The basic operations then act word by word, and τ copies
//! planes. [`GeneratorReport::representation_matches`] records that this
//! encoding agrees with the ordinary operation tables.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::error::Result;
use crate::morphism::{enumerate_morphisms, MorphismMode};
use crate::residuated::bl_signature;
use crate::residuated::names::{BOT, IMP, JOIN, MEET, MUL, TAU, TOP};
use crate::term::Term;
use crate::tnorm::boolean_algebra;

const VARS: usize = 3;

/// `2^k`, coordinates ordered so that coordinate 0 is the most significant
/// bit of the product encoding.
pub fn boolean_power(k: usize) -> FiniteAlgebra {
    if k == 0 {
        return FiniteAlgebra::trivial(bl_signature());
    }
    let two = boolean_algebra();
    let mut acc = two.clone();
    for _ in 1..k {
        acc = acc.product(&two).expect("same signature").0;
    }
    acc
}

/// Idempotent self-maps of `0..k`, lexicographically.
fn idempotent_maps(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = k.pow(k as u32);
    for code in 0..total.max(1) {
        let mut sigma = vec![0; k];
        let mut c = code;
        for j in (0..k).rev() {
            sigma[j] = c % k;
            c /= k;
        }
        if (0..k).all(|j| sigma[sigma[j]] == sigma[j]) {
            out.push(sigma);
        }
    }
    out
}

fn coordinate(e: usize, k: usize, j: usize) -> usize {
    (e >> (k - 1 - j)) & 1
}

/// τ on `2^k` induced by σ.
fn tau_of(sigma: &[usize], k: usize) -> Vec<usize> {
    (0..1usize << k)
        .map(|e| {
            (0..k).fold(0, |acc, j| (acc << 1) | coordinate(e, k, sigma[j]))
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Instance {
    k: usize,
    sigma: Vec<usize>,
    /// First word of plane 0.
    offset: usize,
    plane_words: usize,
}

#[derive(Clone, Debug)]
struct Layout {
    instances: Vec<Instance>,
    words: usize,
    mask: Vec<u64>,
    diagonal: usize,
}

type Key = Vec<u64>;

impl Layout {
    fn new() -> Layout {
        let mut instances = Vec::new();
        let mut offset = 0;
        let mut diagonal = usize::MAX;
        for k in 0..=3 {
            for sigma in idempotent_maps(k) {
                let bits = 1usize << (VARS * k);
                let plane_words = bits.div_ceil(64);
                if k == 2 && sigma == [0, 0] {
                    diagonal = instances.len();
                }
                instances.push(Instance {
                    k,
                    sigma,
                    offset,
                    plane_words,
                });
                offset += k * plane_words;
            }
        }
        let mut mask = vec![u64::MAX; offset];
        for inst in &instances {
            let bits = 1usize << (VARS * inst.k);
            if bits < 64 {
                for j in 0..inst.k {
                    mask[inst.offset + j * inst.plane_words] = (1u64 << bits) - 1;
                }
            }
        }
        Layout {
            instances,
            words: offset,
            mask,
            diagonal,
        }
    }

    fn variable(&self, v: usize) -> Key {
        let mut key = vec![0; self.words];
        for inst in &self.instances {
            let k = inst.k;
            for a in 0..1usize << (VARS * k) {
                let e = (a >> (k * (VARS - 1 - v))) & ((1 << k) - 1);
                for j in 0..k {
                    if coordinate(e, k, j) == 1 {
                        key[inst.offset + j * inst.plane_words + a / 64] |= 1 << (a % 64);
                    }
                }
            }
        }
        key
    }

    fn constant(&self, top: bool) -> Key {
        if top {
            self.mask.clone()
        } else {
            vec![0; self.words]
        }
    }

    fn binary(&self, op: BinOp, a: &[u64], b: &[u64], out: &mut Key) {
        out.clear();
        match op {
            BinOp::Meet | BinOp::Mul => out.extend(a.iter().zip(b).map(|(x, y)| x & y)),
            BinOp::Join => out.extend(a.iter().zip(b).map(|(x, y)| x | y)),
            BinOp::Imp => out.extend(
                a.iter()
                    .zip(b)
                    .zip(&self.mask)
                    .map(|((x, y), m)| (!x | y) & m),
            ),
        }
    }

    fn tau(&self, a: &[u64]) -> Key {
        let mut out = vec![0; self.words];
        for inst in &self.instances {
            let w = inst.plane_words;
            for j in 0..inst.k {
                let src = inst.offset + inst.sigma[j] * w;
                let dst = inst.offset + j * w;
                out[dst..dst + w].copy_from_slice(&a[src..src + w]);
            }
        }
        out
    }

    fn diagonal_part(&self, key: &[u64]) -> u128 {
        let inst = &self.instances[self.diagonal];
        (key[inst.offset] as u128) | ((key[inst.offset + 1] as u128) << 64)
    }

    /// Value of the function at assignment `a` in instance `i`.
    fn decode(&self, key: &[u64], i: usize, a: usize) -> usize {
        let inst = &self.instances[i];
        (0..inst.k).fold(0, |acc, j| {
            let word = key[inst.offset + j * inst.plane_words + a / 64];
            (acc << 1) | ((word >> (a % 64)) & 1) as usize
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BinOp {
    Meet,
    Join,
    Mul,
    Imp,
}

const BINOPS: [(BinOp, &str); 4] = [
    (BinOp::Meet, MEET),
    (BinOp::Join, JOIN),
    (BinOp::Mul, MUL),
    (BinOp::Imp, IMP),
];

/// Term functions up to some depth, one representative term per function.
struct Classes {
    keys: Vec<Key>,
    terms: Vec<Term>,
    index: BTreeMap<Key, usize>,
}

impl Classes {
    fn new() -> Classes {
        Classes {
            keys: Vec::new(),
            terms: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: Key, term: impl FnOnce() -> Term) {
        if !self.index.contains_key(&key) {
            self.index.insert(key.clone(), self.keys.len());
            self.keys.push(key);
            self.terms.push(term());
        }
    }

    fn grow(&self, layout: &Layout) -> Classes {
        let mut next = Classes::new();
        for (key, term) in self.keys.iter().zip(&self.terms) {
            next.add(key.clone(), || term.clone());
        }
        let mut buf = Vec::new();
        for i in 0..self.keys.len() {
            next.add(layout.tau(&self.keys[i]), || Term::unary(TAU, self.terms[i].clone()));
            for j in 0..self.keys.len() {
                for &(op, name) in &BINOPS {
                    layout.binary(op, &self.keys[i], &self.keys[j], &mut buf);
                    let key = core::mem::take(&mut buf);
                    next.add(key, || {
                        Term::binary(name, self.terms[i].clone(), self.terms[j].clone())
                    });
                }
            }
        }
        next
    }
}

/// Result of the comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorReport {
    /// `(size, τ)` of every state-morphism Boolean algebra compared.
    pub algebras: Vec<(usize, Vec<usize>)>,
    /// The σ-maps are exactly the idempotent endomorphisms found by search.
    pub endomorphisms_match: bool,
    /// The bit-plane operations agree with the operation tables.
    pub representation_matches: bool,
    /// Distinct term functions (over all algebras) at depth 0, ≤1, ≤2.
    pub classes_by_depth: [usize; 3],
    /// Depth-3 combinations examined.
    pub candidates: u64,
    /// Distinct term functions on `D(2)` at depth ≤ 3.
    pub diagonal_functions: usize,
    /// Pairs of terms equal on `D(2)` but different somewhere else.
    pub discrepancies: Vec<(Term, Term)>,
}

impl GeneratorReport {
    pub fn passes(&self) -> bool {
        self.endomorphisms_match && self.representation_matches && self.discrepancies.is_empty()
    }
}

fn check_representation(layout: &Layout) -> Result<(bool, bool)> {
    let mut endos_ok = true;
    let mut ops_ok = true;
    for k in 0..=3 {
        let alg = boolean_power(k);
        let sigmas = idempotent_maps(k);
        let mut expected: Vec<Vec<usize>> = sigmas.iter().map(|s| tau_of(s, k)).collect();
        expected.sort();
        let found: Vec<Vec<usize>> = enumerate_morphisms(&alg, &alg, MorphismMode::IdempotentEndomorphisms)?
            .into_iter()
            .map(|m| m.into_map())
            .collect();
        endos_ok &= found == expected;
        let size = 1usize << k;
        let mask = size - 1;
        for &(op, name) in &BINOPS {
            let code = alg.op(name).expect("bl symbol");
            for x in 0..size {
                for y in 0..size {
                    let plane = match op {
                        BinOp::Meet | BinOp::Mul => x & y,
                        BinOp::Join => x | y,
                        BinOp::Imp => (!x | y) & mask,
                    };
                    ops_ok &= alg.apply2(code, x, y) == plane;
                }
            }
        }
        ops_ok &= alg.table(alg.op(BOT).expect("bot"))[0] == 0;
        ops_ok &= alg.table(alg.op(TOP).expect("top"))[0] == mask;
    }
    // decoding a variable returns the assigned value
    for v in 0..VARS {
        let key = layout.variable(v);
        for (i, inst) in layout.instances.iter().enumerate() {
            let k = inst.k;
            for a in 0..1usize << (VARS * k) {
                let e = (a >> (k * (VARS - 1 - v))) & ((1 << k) - 1);
                ops_ok &= layout.decode(&key, i, a) == e;
                ops_ok &= layout.decode(&layout.tau(&key), i, a) == tau_of(&inst.sigma, k)[e];
            }
        }
    }
    Ok((endos_ok, ops_ok))
}

/// Compares all identities in at most three variables whose sides have
/// depth at most `max_depth` (operation nesting above variables and
/// constants; `max_depth ≥ 1`), and keeps at most `keep` discrepancies.
pub fn generator_spot_check(max_depth: usize, keep: usize) -> Result<GeneratorReport> {
    let layout = Layout::new();
    let (endomorphisms_match, representation_matches) = check_representation(&layout)?;
    let algebras = layout
        .instances
        .iter()
        .map(|inst| (1usize << inst.k, tau_of(&inst.sigma, inst.k)))
        .collect();

    let mut level = Classes::new();
    for v in 0..VARS {
        level.add(layout.variable(v), || Term::var(v));
    }
    level.add(layout.constant(false), || Term::constant(BOT));
    level.add(layout.constant(true), || Term::constant(TOP));
    let mut classes_by_depth = [level.keys.len(), 0, 0];
    let mut depth = 0;
    while depth + 1 < max_depth.max(1) {
        level = level.grow(&layout);
        depth += 1;
        if depth < 3 {
            classes_by_depth[depth] = level.keys.len();
        }
    }

    // Last level: stream the combinations, remembering for each function on
    // D(2) how its first representative was built.
    #[derive(Clone, Copy)]
    enum Recipe {
        Class(usize),
        Tau(usize),
        Bin(usize, usize, usize),
    }
    let build = |r: Recipe, buf: &mut Key| match r {
        Recipe::Class(i) => *buf = level.keys[i].clone(),
        Recipe::Tau(i) => *buf = layout.tau(&level.keys[i]),
        Recipe::Bin(o, i, j) => layout.binary(BINOPS[o].0, &level.keys[i], &level.keys[j], buf),
    };
    let term_of = |r: Recipe| match r {
        Recipe::Class(i) => level.terms[i].clone(),
        Recipe::Tau(i) => Term::unary(TAU, level.terms[i].clone()),
        Recipe::Bin(o, i, j) => {
            Term::binary(BINOPS[o].1, level.terms[i].clone(), level.terms[j].clone())
        }
    };

    let mut seen: BTreeMap<u128, Recipe> = BTreeMap::new();
    let mut discrepancies = Vec::new();
    let mut candidates = 0u64;
    let mut key = Vec::new();
    let mut other = Vec::new();
    let mut visit = |r: Recipe, key: &mut Key, other: &mut Key| {
        build(r, key);
        let d = layout.diagonal_part(key);
        match seen.get(&d) {
            None => {
                seen.insert(d, r);
            }
            Some(&first) => {
                build(first, other);
                if key != other && discrepancies.len() < keep.max(1) {
                    discrepancies.push((term_of(first), term_of(r)));
                }
            }
        }
    };
    let n = level.keys.len();
    for i in 0..n {
        visit(Recipe::Class(i), &mut key, &mut other);
    }
    for i in 0..n {
        candidates += 1;
        visit(Recipe::Tau(i), &mut key, &mut other);
        for j in 0..n {
            for o in 0..BINOPS.len() {
                candidates += 1;
                visit(Recipe::Bin(o, i, j), &mut key, &mut other);
            }
        }
    }
    let diagonal_functions = seen.len();
    Ok(GeneratorReport {
        algebras,
        endomorphisms_match,
        representation_matches,
        classes_by_depth,
        candidates,
        diagonal_functions,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateMorphismAlgebra;
    use crate::term::eval_term;

    #[test]
    fn idempotent_map_counts() {
        assert_eq!(idempotent_maps(0).len(), 1);
        assert_eq!(idempotent_maps(1).len(), 1);
        assert_eq!(idempotent_maps(2).len(), 3);
        assert_eq!(idempotent_maps(3).len(), 10);
    }

    #[test]
    fn representation_agrees_with_tables() {
        let layout = Layout::new();
        assert_eq!(check_representation(&layout).unwrap(), (true, true));
    }

    #[test]
    fn term_keys_match_evaluation() {
        let layout = Layout::new();
        let x = |v| Term::var(v);
        let t = Term::binary(
            IMP,
            Term::unary(TAU, Term::binary(JOIN, x(0), x(1))),
            Term::binary(MEET, x(2), Term::unary(TAU, x(0))),
        );
        let mut a = Vec::new();
        layout.binary(BinOp::Join, &layout.variable(0), &layout.variable(1), &mut a);
        let left = layout.tau(&a);
        let mut b = Vec::new();
        layout.binary(BinOp::Meet, &layout.variable(2), &layout.tau(&layout.variable(0)), &mut b);
        let mut key = Vec::new();
        layout.binary(BinOp::Imp, &left, &b, &mut key);
        for (i, inst) in layout.instances.iter().enumerate() {
            let k = inst.k;
            let s = StateMorphismAlgebra::new(boolean_power(k), tau_of(&inst.sigma, k)).unwrap();
            let size = 1usize << k;
            for a in 0..size.pow(3) {
                let env = [a / (size * size), (a / size) % size, a % size];
                let value = eval_term(s.expansion(), &t, &env).unwrap();
                assert_eq!(layout.decode(&key, i, a), value);
            }
        }
    }

    #[test]
    fn shallow_spot_check_passes() {
        let r = generator_spot_check(2, 4).unwrap();
        assert!(r.passes(), "{:?}", r.discrepancies);
        assert_eq!(r.algebras.len(), 15);
    }
}
