//! Brute-force reference implementations, kept deliberately naive.
//!
//! These scan every partition or every subset of the universe and are only
//! meant for small universes. Tests compare the real algorithms against
//! them.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::congruence::{sort_congruences, Congruence};
use crate::error::{Error, Result};
use crate::residuated::{Filter, ResiduatedView};

/// Largest universe the oracles accept.
pub const ORACLE_LIMIT: usize = 6;

fn check_limit(n: usize, what: &'static str) -> Result<()> {
    if n > ORACLE_LIMIT {
        return Err(Error::CapExceeded {
            what,
            size: n as u64,
            cap: ORACLE_LIMIT as u64,
        });
    }
    Ok(())
}

/// Every partition of `0..n`, via restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Congruence> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Congruence::identity(0));
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Congruence::from_labels(&rgs));
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let max_before = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_before {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// The congruence lattice, by filtering all partitions for compatibility.
pub fn oracle_lattice(alg: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    check_limit(alg.size(), "oracle universe")?;
    let mut list: Vec<Congruence> = all_partitions(alg.size())
        .into_iter()
        .filter(|p| alg.is_compatible(p))
        .collect();
    sort_congruences(&mut list);
    Ok(list)
}

/// The least compatible partition containing `pairs`.
pub fn oracle_generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let lattice = oracle_lattice(alg)?;
    let containing: Vec<&Congruence> = lattice
        .iter()
        .filter(|c| pairs.iter().all(|&(a, b)| c.related(a, b)))
        .collect();
    let mut least = Congruence::total(alg.size());
    for c in containing {
        least = least.meet(c);
    }
    Ok(least)
}

/// Every filter, found by testing all subsets containing the top element.
/// Sorted by size, then by members.
pub fn oracle_filters(m: &ResiduatedView<'_>) -> Result<Vec<Filter>> {
    let n = m.size();
    check_limit(n, "oracle universe")?;
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let inside = |x: usize| mask >> x & 1 == 1;
        if !inside(m.one()) {
            continue;
        }
        let upward = members
            .iter()
            .all(|&x| (0..n).all(|y| !m.le(x, y) || inside(y)));
        let closed = members
            .iter()
            .all(|&x| members.iter().all(|&y| inside(m.mul(x, y))));
        if upward && closed {
            out.push(Filter::from_members(members));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members().cmp(b.members())));
    Ok(out)
}

/// Whether `subset` is closed and no proper closed subset contains
/// `generators`, by testing every subset between the two.
pub fn oracle_is_least_closed(alg: &FiniteAlgebra, generators: &[usize], subset: &[usize]) -> Result<bool> {
    check_limit(alg.size(), "oracle universe")?;
    if alg.closure_violation(subset).is_some() || !generators.iter().all(|g| subset.contains(g)) {
        return Ok(false);
    }
    let free: Vec<usize> = subset.iter().copied().filter(|x| !generators.contains(x)).collect();
    for mask in 0u32..(1 << free.len()) - 1 {
        let mut candidate: Vec<usize> = generators.to_vec();
        candidate.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
        candidate.sort_unstable();
        candidate.dedup();
        if alg.closure_violation(&candidate).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(all_partitions(n).len(), b);
        }
    }
}
