//! Generated congruences, Mal'cev chains, congruence lattices and monoliths.
//!
//! The workhorse is [`Closure`]: a union-find seeded with the generating
//! pairs, where every pair that actually merges two classes is pushed
//! through all basic translations `x ↦ f(c_1, …, x, …, c_k)`. The pairs that
//! merged classes generate the equivalence, and each of them is closed under
//! translations, so the fixpoint is the least congruence containing the
//! seeds. A pair `(a, b)` lands in it exactly when a Mal'cev chain of unary
//! polynomials links `a` to `b`; the optional trace records such a chain.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::congruence::{sort_congruences, Congruence, UnionFind};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::odometer::Odometer;
use crate::term::{eval_term, Term};
use crate::Caps;

/// How a merging pair was obtained.
#[derive(Clone, Debug)]
enum Origin {
    /// Seed pair number `index`, as given by the caller.
    Seed { index: usize },
    /// Image of merging pair `parent` under the translation that puts the
    /// variable at `position` of `op` and fills the rest with `params`.
    Translated {
        parent: usize,
        op: usize,
        position: usize,
        params: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
struct Edge {
    from: usize,
    to: usize,
    origin: Origin,
}

struct Closure<'a> {
    alg: &'a FiniteAlgebra,
    uf: UnionFind,
    queue: VecDeque<(usize, usize, usize)>,
    edges: Option<Vec<Edge>>,
}

impl<'a> Closure<'a> {
    fn new(alg: &'a FiniteAlgebra, record: bool) -> Self {
        Closure {
            alg,
            uf: UnionFind::new(alg.size()),
            queue: VecDeque::new(),
            edges: if record { Some(Vec::new()) } else { None },
        }
    }

    fn merge(&mut self, from: usize, to: usize, origin: impl FnOnce() -> Origin) {
        if self.uf.union(from, to) {
            let id = match &mut self.edges {
                Some(edges) => {
                    edges.push(Edge {
                        from,
                        to,
                        origin: origin(),
                    });
                    edges.len() - 1
                }
                None => usize::MAX,
            };
            self.queue.push_back((from, to, id));
        }
    }

    fn run(&mut self) {
        let alg = self.alg;
        let n = alg.size();
        let sig = alg.signature();
        let mut args = Vec::new();
        while let Some((u, v, id)) = self.queue.pop_front() {
            for op in 0..sig.len() {
                let k = sig.arity(op);
                if k == 0 {
                    continue;
                }
                if k == 1 {
                    let (fu, fv) = (alg.apply1(op, u), alg.apply1(op, v));
                    self.merge(fu, fv, || Origin::Translated {
                        parent: id,
                        op,
                        position: 0,
                        params: Vec::new(),
                    });
                    continue;
                }
                if k == 2 {
                    for c in 0..n {
                        let (fu, fv) = (alg.apply2(op, u, c), alg.apply2(op, v, c));
                        self.merge(fu, fv, || Origin::Translated {
                            parent: id,
                            op,
                            position: 0,
                            params: vec![c],
                        });
                        let (fu, fv) = (alg.apply2(op, c, u), alg.apply2(op, c, v));
                        self.merge(fu, fv, || Origin::Translated {
                            parent: id,
                            op,
                            position: 1,
                            params: vec![c],
                        });
                    }
                    continue;
                }
                for position in 0..k {
                    let mut od = Odometer::new(n, k - 1);
                    while let Some(params) = od.next() {
                        args.clear();
                        args.extend_from_slice(&params[..position]);
                        args.push(u);
                        args.extend_from_slice(&params[position..]);
                        let fu = alg.apply(op, &args);
                        args[position] = v;
                        let fv = alg.apply(op, &args);
                        let params = params.to_vec();
                        self.merge(fu, fv, || Origin::Translated {
                            parent: id,
                            op,
                            position,
                            params,
                        });
                    }
                }
            }
        }
    }
}

fn check_pairs(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<()> {
    for &(a, b) in pairs {
        for e in [a, b] {
            if e >= alg.size() {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    size: alg.size(),
                });
            }
        }
    }
    Ok(())
}

/// Θ(pairs): the least congruence of `alg` containing every pair.
pub fn generated_congruence(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence> {
    check_pairs(alg, pairs)?;
    let mut closure = Closure::new(alg, false);
    for &(a, b) in pairs {
        closure.merge(a, b, || Origin::Seed { index: 0 });
    }
    closure.run();
    Ok(closure.uf.into_congruence())
}

/// Θ(a, b).
pub fn principal_congruence(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<Congruence> {
    generated_congruence(alg, &[(a, b)])
}

/// The least congruence containing `theta` and the extra pairs. Cheaper than
/// [`generated_congruence`] on the union since `theta`'s own classes are
/// already closed.
pub fn join_with_pairs(
    alg: &FiniteAlgebra,
    theta: &Congruence,
    pairs: &[(usize, usize)],
) -> Result<Congruence> {
    let mut all = theta.spanning_pairs();
    all.extend_from_slice(pairs);
    generated_congruence(alg, &all)
}

/// A generated congruence together with the merge history needed to
/// produce Mal'cev chains.
pub struct TracedCongruence {
    congruence: Congruence,
    seeds: Vec<(usize, usize)>,
    edges: Vec<Edge>,
    size: usize,
}

/// Same as [`generated_congruence`], keeping the merge trace.
pub fn generated_congruence_traced(
    alg: &FiniteAlgebra,
    pairs: &[(usize, usize)],
) -> Result<TracedCongruence> {
    check_pairs(alg, pairs)?;
    let mut closure = Closure::new(alg, true);
    for (index, &(a, b)) in pairs.iter().enumerate() {
        closure.merge(a, b, || Origin::Seed { index });
    }
    closure.run();
    let edges = closure.edges.take().unwrap_or_default();
    Ok(TracedCongruence {
        congruence: closure.uf.into_congruence(),
        seeds: pairs.to_vec(),
        edges,
        size: alg.size(),
    })
}

/// One link `endpoints.0 ~ endpoints.1` of a Mal'cev chain: the endpoints are
/// `term(parameters, g.0)` and `term(parameters, g.1)` for the generating
/// pair `g`. The term's last variable is the distinguished one; the first
/// `parameters.len()` variables take the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalcevStep {
    pub term: Term,
    pub parameters: Vec<usize>,
    /// A generating pair, possibly used in reverse orientation.
    pub generator_pair: (usize, usize),
    pub endpoints: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalcevWitness {
    pub target: (usize, usize),
    pub steps: Vec<MalcevStep>,
}

impl MalcevWitness {
    /// Re-evaluates every step and checks the chaining.
    pub fn replay(&self, alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<()> {
        let fail = |msg: &str| Err(Error::Precondition(msg.to_string()));
        let (a, b) = self.target;
        if self.steps.is_empty() {
            return if a == b { Ok(()) } else { fail("empty chain between distinct elements") };
        }
        let mut current = a;
        for step in &self.steps {
            let (c, d) = step.generator_pair;
            if !pairs.contains(&(c, d)) && !pairs.contains(&(d, c)) {
                return fail("step uses a pair outside the generators");
            }
            if step.endpoints.0 != current {
                return fail("chain is broken");
            }
            let mut env = step.parameters.clone();
            env.push(c);
            let left = eval_term(alg, &step.term, &env)?;
            *env.last_mut().expect("non-empty env") = d;
            let right = eval_term(alg, &step.term, &env)?;
            if (left, right) != step.endpoints {
                return fail("step endpoints do not match the term values");
            }
            current = step.endpoints.1;
        }
        if current != b {
            return fail("chain does not end at the target");
        }
        Ok(())
    }
}

impl TracedCongruence {
    pub fn congruence(&self) -> &Congruence {
        &self.congruence
    }

    /// Unary polynomial behind a merging pair, innermost translation first.
    fn unfold(&self, mut edge: usize) -> (usize, Vec<(usize, usize, Vec<usize>)>) {
        let mut chain = Vec::new();
        loop {
            match &self.edges[edge].origin {
                Origin::Seed { index } => {
                    chain.reverse();
                    return (*index, chain);
                }
                Origin::Translated {
                    parent,
                    op,
                    position,
                    params,
                } => {
                    chain.push((*op, *position, params.clone()));
                    edge = *parent;
                }
            }
        }
    }

    fn step_for(&self, alg: &FiniteAlgebra, edge: usize, forward: bool) -> MalcevStep {
        let (seed, chain) = self.unfold(edge);
        let param_count: usize = chain.iter().map(|(_, _, p)| p.len()).sum();
        let mut term = Term::Var(param_count);
        let mut parameters = Vec::with_capacity(param_count);
        for (op, position, params) in chain {
            let base = parameters.len();
            let mut args: Vec<Term> = (0..params.len()).map(|i| Term::Var(base + i)).collect();
            args.insert(position, term);
            term = Term::App(alg.signature().name(op).to_string(), args);
            parameters.extend(params);
        }
        let (c, d) = self.seeds[seed];
        let e = &self.edges[edge];
        if forward {
            MalcevStep {
                term,
                parameters,
                generator_pair: (c, d),
                endpoints: (e.from, e.to),
            }
        } else {
            MalcevStep {
                term,
                parameters,
                generator_pair: (d, c),
                endpoints: (e.to, e.from),
            }
        }
    }

    /// A chain from `a` to `b`, found by breadth-first search over the merge
    /// graph.
    pub fn witness(&self, alg: &FiniteAlgebra, a: usize, b: usize) -> Result<MalcevWitness> {
        if a >= self.size || b >= self.size {
            return Err(Error::ElementOutOfRange {
                element: a.max(b),
                size: self.size,
            });
        }
        if !self.congruence.related(a, b) {
            return Err(Error::NotInCongruence { a, b });
        }
        let mut adjacency: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); self.size];
        for (i, e) in self.edges.iter().enumerate() {
            adjacency[e.from].push((e.to, i, true));
            adjacency[e.to].push((e.from, i, false));
        }
        let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; self.size];
        let mut seen = vec![false; self.size];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &(y, edge, forward) in &adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, edge, forward));
                    queue.push_back(y);
                }
            }
        }
        let mut steps = Vec::new();
        let mut cur = b;
        while cur != a {
            let (x, edge, forward) = prev[cur].ok_or(Error::NotInCongruence { a, b })?;
            steps.push(self.step_for(alg, edge, forward));
            cur = x;
        }
        steps.reverse();
        Ok(MalcevWitness {
            target: (a, b),
            steps,
        })
    }
}

/// A Mal'cev chain certifying `(a, b) ∈ Θ(pairs)`.
pub fn malcev_witness(
    alg: &FiniteAlgebra,
    pairs: &[(usize, usize)],
    target: (usize, usize),
) -> Result<MalcevWitness> {
    generated_congruence_traced(alg, pairs)?.witness(alg, target.0, target.1)
}

/// Every congruence of `alg`, Δ first, by decreasing number of blocks.
///
/// Computed as the join-closure of the principal congruences; every
/// congruence of a finite algebra is a finite join of principal ones.
pub fn congruence_lattice(alg: &FiniteAlgebra, caps: &Caps) -> Result<Vec<Congruence>> {
    let n = alg.size();
    if n > caps.lattice {
        return Err(Error::CapExceeded {
            what: "congruence lattice universe",
            size: n as u64,
            cap: caps.lattice as u64,
        });
    }
    let mut seen: BTreeSet<Congruence> = BTreeSet::new();
    let mut list: Vec<Congruence> = Vec::new();
    let delta = Congruence::identity(n);
    seen.insert(delta.clone());
    list.push(delta);
    for a in 0..n {
        for b in a + 1..n {
            let theta = principal_congruence(alg, a, b)?;
            if seen.insert(theta.clone()) {
                list.push(theta);
            }
        }
    }
    let principals = list.len();
    let mut i = 1;
    while i < list.len() {
        for j in 1..principals.min(i) {
            let joined = list[i].join(&list[j]);
            if seen.insert(joined.clone()) {
                list.push(joined);
            }
        }
        i += 1;
    }
    sort_congruences(&mut list);
    Ok(list)
}

/// Intersection of all principal congruences Θ(a, b) with `a ≠ b`; `None`
/// as soon as it collapses to Δ.
fn principal_meet(alg: &FiniteAlgebra) -> Result<Option<Congruence>> {
    let n = alg.size();
    if n < 2 {
        return Ok(None);
    }
    let mut meet = Congruence::total(n);
    for a in 0..n {
        for b in a + 1..n {
            let theta = principal_congruence(alg, a, b)?;
            meet = meet.meet(&theta);
            if meet.is_identity() {
                return Ok(None);
            }
        }
    }
    Ok(Some(meet))
}

/// The least non-identity congruence, when it exists (the algebra is then
/// subdirectly irreducible). The one-element algebra has none.
///
/// Every non-identity congruence contains a principal Θ(a, b) with `a ≠ b`,
/// so the monolith is the meet of those, and no lattice enumeration is
/// needed.
pub fn monolith(alg: &FiniteAlgebra) -> Result<Option<Congruence>> {
    principal_meet(alg)
}

pub fn is_subdirectly_irreducible(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(monolith(alg)?.is_some())
}

/// Looks for a congruence φ of `ambient` with `φ ∩ B² = theta`, where
/// `embedding` maps the subalgebra `sub` into `ambient`. Returns the least
/// such φ.
///
/// Any such φ contains Θ(θ) computed in the ambient algebra, so either that
/// congruence restricts to θ or no extension exists.
pub fn cep_extension(
    ambient: &FiniteAlgebra,
    sub: &FiniteAlgebra,
    embedding: &Morphism,
    theta: &Congruence,
    caps: &Caps,
) -> Result<Option<Congruence>> {
    if ambient.size() > caps.search {
        return Err(Error::CapExceeded {
            what: "congruence extension ambient size",
            size: ambient.size() as u64,
            cap: caps.search as u64,
        });
    }
    embedding.verify(sub, ambient)?;
    if !embedding.is_injective() {
        return Err(Error::Precondition("subalgebra map is not injective".to_string()));
    }
    sub.check_compatible(theta)?;
    let pairs: Vec<(usize, usize)> = theta
        .spanning_pairs()
        .into_iter()
        .map(|(x, y)| (embedding.apply(x), embedding.apply(y)))
        .collect();
    let phi = generated_congruence(ambient, &pairs)?;
    if phi.restrict(embedding.map()) == *theta {
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{boolean_algebra, goedel_chain, lukasiewicz_chain};

    fn square() -> FiniteAlgebra {
        let b = boolean_algebra();
        b.product(&b).unwrap().0
    }

    #[test]
    fn empty_generation_is_identity() {
        let l2 = lukasiewicz_chain(2);
        assert!(generated_congruence(&l2, &[]).unwrap().is_identity());
    }

    #[test]
    fn collapsing_boolean_algebra() {
        let b = boolean_algebra();
        assert!(principal_congruence(&b, 0, 1).unwrap().is_total());
    }

    #[test]
    fn goedel_three_chain_principal() {
        let g = goedel_chain(2);
        let theta = principal_congruence(&g, 1, 2).unwrap();
        assert_eq!(theta.blocks(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn malcev_trivial_cases() {
        let g = goedel_chain(2);
        let w = malcev_witness(&g, &[(1, 2)], (1, 1)).unwrap();
        assert!(w.steps.is_empty());
        let w = malcev_witness(&g, &[(1, 2)], (1, 2)).unwrap();
        assert_eq!(w.steps.len(), 1);
        assert_eq!(w.steps[0].term, Term::Var(0));
        assert_eq!(w.steps[0].endpoints, (1, 2));
        w.replay(&g, &[(1, 2)]).unwrap();
        assert!(matches!(
            malcev_witness(&g, &[(1, 2)], (0, 1)),
            Err(Error::NotInCongruence { .. })
        ));
    }

    #[test]
    fn malcev_chains_replay_on_square() {
        let s = square();
        let pairs = [(1, 3)];
        let traced = generated_congruence_traced(&s, &pairs).unwrap();
        for (a, b) in traced.congruence().pairs() {
            let w = traced.witness(&s, a, b).unwrap();
            w.replay(&s, &pairs).unwrap();
            let w = traced.witness(&s, b, a).unwrap();
            w.replay(&s, &pairs).unwrap();
        }
    }

    #[test]
    fn lattices_of_small_algebras() {
        let caps = Caps::default();
        assert_eq!(congruence_lattice(&boolean_algebra(), &caps).unwrap().len(), 2);
        assert_eq!(congruence_lattice(&square(), &caps).unwrap().len(), 4);
        assert_eq!(congruence_lattice(&lukasiewicz_chain(2), &caps).unwrap().len(), 2);
        let big = lukasiewicz_chain(12);
        assert!(matches!(
            congruence_lattice(&big, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn monoliths() {
        assert!(monolith(&boolean_algebra()).unwrap().unwrap().is_total());
        assert!(monolith(&square()).unwrap().is_none());
        assert!(monolith(&lukasiewicz_chain(2)).unwrap().unwrap().is_total());
        let trivial = FiniteAlgebra::trivial(boolean_algebra().signature().clone());
        assert!(monolith(&trivial).unwrap().is_none());
    }

    #[test]
    fn cep_on_goedel_chain() {
        let g = goedel_chain(2);
        let b = boolean_algebra();
        let emb = Morphism::new(vec![0, 2]);
        let caps = Caps::default();
        let phi = cep_extension(&g, &b, &emb, &Congruence::total(2), &caps)
            .unwrap()
            .unwrap();
        assert!(phi.is_total());
        let phi = cep_extension(&g, &b, &emb, &Congruence::identity(2), &caps)
            .unwrap()
            .unwrap();
        assert!(phi.is_identity());
    }
}
