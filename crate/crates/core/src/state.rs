//! State-morphism algebras: an algebra together with an idempotent
//! endomorphism τ, treated as an extra unary operation named `tau`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::congruence::Congruence;
use crate::engine::{congruence_lattice, generated_congruence, monolith};
use crate::error::{Error, Result};
use crate::morphism::{enumerate_morphisms, Morphism, MorphismMode};
use crate::residuated::names::TAU;
use crate::Caps;

/// Why a map fails to be a state-morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateMorphismViolation {
    Homomorphism { symbol: String, args: Vec<usize> },
    Idempotence { element: usize },
}

/// Checks that `tau` is an endomorphism of `alg` with `τ∘τ = τ`. Only a
/// malformed map is an error; a failing map yields `Ok(Some(violation))`.
pub fn verify_state_morphism(
    alg: &FiniteAlgebra,
    tau: &[usize],
) -> Result<Option<StateMorphismViolation>> {
    match Morphism::new(tau.to_vec()).verify(alg, alg) {
        Ok(()) => {}
        Err(Error::NotAHomomorphism { symbol, args }) => {
            return Ok(Some(StateMorphismViolation::Homomorphism { symbol, args }))
        }
        Err(e) => return Err(e),
    }
    Ok((0..tau.len())
        .find(|&x| tau[tau[x]] != tau[x])
        .map(|element| StateMorphismViolation::Idempotence { element }))
}

/// An algebra with a verified state-morphism. The expansion by `tau` is
/// built once on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMorphismAlgebra {
    base: FiniteAlgebra,
    tau: Vec<usize>,
    expansion: FiniteAlgebra,
}

impl StateMorphismAlgebra {
    pub fn new(base: FiniteAlgebra, tau: Vec<usize>) -> Result<Self> {
        match verify_state_morphism(&base, &tau)? {
            None => {}
            Some(StateMorphismViolation::Homomorphism { symbol, args }) => {
                return Err(Error::NotAHomomorphism { symbol, args })
            }
            Some(StateMorphismViolation::Idempotence { element }) => {
                return Err(Error::NotIdempotent { element })
            }
        }
        let expansion = base.expand_unary(TAU, &tau)?;
        Ok(StateMorphismAlgebra {
            base,
            tau,
            expansion,
        })
    }

    pub fn base(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// The base algebra with `tau` appended as a unary operation.
    pub fn expansion(&self) -> &FiniteAlgebra {
        &self.expansion
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn is_faithful(&self) -> bool {
        self.tau.iter().enumerate().all(|(x, &t)| x == t)
    }

    /// `θ_τ = {(x, y) : τ(x) = τ(y)}`.
    pub fn theta_tau(&self) -> Congruence {
        Congruence::kernel(&self.tau)
    }

    /// The kernel of τ as a relation; the same relation as
    /// [`Self::theta_tau`]. For the set `{a : τ(a) = 1}` of a BL-algebra see
    /// [`crate::residuated::ker_tau_bl`].
    pub fn kernel_congruence(&self) -> Congruence {
        self.theta_tau()
    }

    /// `τ(A)`, increasing. These are exactly the fixed points of τ.
    pub fn image(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.tau[x] == x).collect()
    }

    /// The subalgebra of the base on `τ(A)` and its inclusion.
    pub fn image_algebra(&self) -> Result<(FiniteAlgebra, Morphism)> {
        self.base.subalgebra(&self.image())
    }

    /// `θ_φ = {(x, y) : (τ(x), τ(y)) ∈ φ}` for a congruence φ of the image
    /// subalgebra (indexed by position in [`Self::image`]).
    pub fn lift_congruence(&self, phi: &Congruence) -> Result<Congruence> {
        let (image_alg, incl) = self.image_algebra()?;
        image_alg.check_compatible(phi)?;
        let mut position = vec![usize::MAX; self.size()];
        for (i, &x) in incl.map().iter().enumerate() {
            position[x] = i;
        }
        let labels: Vec<usize> = self.tau.iter().map(|&t| phi.label(position[t])).collect();
        let theta = Congruence::from_labels(&labels);
        self.expansion.check_compatible(&theta)?;
        Ok(theta)
    }

    /// Congruence lattice of the expansion.
    pub fn con_sma(&self, caps: &Caps) -> Result<Vec<Congruence>> {
        congruence_lattice(&self.expansion, caps)
    }

    /// `Θ_τ(pairs)`: generated congruence in the expansion.
    pub fn generated_congruence_tau(&self, pairs: &[(usize, usize)]) -> Result<Congruence> {
        generated_congruence(&self.expansion, pairs)
    }

    pub fn monolith(&self) -> Result<Option<Congruence>> {
        monolith(&self.expansion)
    }

    pub fn is_subdirectly_irreducible(&self) -> Result<bool> {
        Ok(self.monolith()?.is_some())
    }
}

/// `D(B)`: the square `B × B` with `τ(i, j) = (i, i)`.
pub fn diagonal(b: &FiniteAlgebra) -> StateMorphismAlgebra {
    let (square, _, _) = b.product(b).expect("same signature");
    let m = b.size();
    let tau = (0..m * m).map(|p| (p / m) * m + p / m).collect();
    StateMorphismAlgebra::new(square, tau).expect("diagonal map is a state-morphism")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateChecks {
    pub injective: bool,
    pub homomorphic: bool,
    pub tau_commuting: bool,
    pub target_si: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.injective && self.homomorphic && self.tau_commuting && self.target_si
    }
}

/// An embedding of a subdirectly irreducible `(A, τ)` into the diagonal
/// algebra `D(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdiagonalCertificate {
    pub target: FiniteAlgebra,
    /// Map from `A` into `B × B` (product encoding).
    pub embedding: Morphism,
    /// Δ when the base is itself subdirectly irreducible and `B = A`.
    pub theta_star: Congruence,
    pub checks: CertificateChecks,
}

/// Builds the embedding into `D(B)`.
///
/// If the base is subdirectly irreducible, `B = A` and `a ↦ (τ(a), a)`.
/// Otherwise `θ*` is a maximal congruence of the base meeting `θ_τ` in Δ
/// (the first maximal one in listing order), `B = A/θ*` and
/// `x ↦ (τ(x)/θ*, x/θ*)`.
pub fn subdiagonal_embedding(s: &StateMorphismAlgebra, caps: &Caps) -> Result<SubdiagonalCertificate> {
    if !s.is_subdirectly_irreducible()? {
        return Err(Error::NotSubdirectlyIrreducible);
    }
    let a = s.base();
    let n = a.size();
    let (target, quotient_map, theta_star) = if monolith(a)?.is_some() {
        (a.clone(), Morphism::identity(n), Congruence::identity(n))
    } else {
        let lattice = congruence_lattice(a, caps)?;
        let theta_tau = s.theta_tau();
        let disjoint: Vec<&Congruence> = lattice
            .iter()
            .filter(|c| c.meet(&theta_tau).is_identity())
            .collect();
        let star = disjoint
            .iter()
            .copied()
            .find(|&c| !disjoint.iter().any(|&d| d != c && c.le(d)))
            .cloned()
            .ok_or_else(|| Error::Precondition("no congruence disjoint from the kernel".to_string()))?;
        let (q, map) = a.quotient(&star)?;
        (q, map, star)
    };
    let m = target.size();
    let tau = s.tau();
    let embedding = Morphism::new(
        (0..n)
            .map(|x| quotient_map.apply(tau[x]) * m + quotient_map.apply(x))
            .collect(),
    );
    let diag = diagonal(&target);
    let checks = CertificateChecks {
        injective: embedding.is_injective(),
        homomorphic: embedding.verify(a, diag.base()).is_ok(),
        tau_commuting: (0..n).all(|x| embedding.apply(tau[x]) == diag.tau()[embedding.apply(x)]),
        target_si: monolith(&target)?.is_some(),
    };
    Ok(SubdiagonalCertificate {
        target,
        embedding,
        theta_star,
        checks,
    })
}

/// One idempotent endomorphism of an SI algebra and the monolith of the
/// resulting expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferEntry {
    pub tau: Vec<usize>,
    pub monolith: Option<Congruence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiTransferReport {
    pub entries: Vec<TransferEntry>,
}

impl SiTransferReport {
    pub fn all_si(&self) -> bool {
        self.entries.iter().all(|e| e.monolith.is_some())
    }
}

/// Expands an SI algebra by each of its idempotent endomorphisms and
/// records whether each expansion is SI.
pub fn si_transfer_check(a: &FiniteAlgebra) -> Result<SiTransferReport> {
    if monolith(a)?.is_none() {
        return Err(Error::NotSubdirectlyIrreducible);
    }
    let mut entries = Vec::new();
    for tau in enumerate_morphisms(a, a, MorphismMode::IdempotentEndomorphisms)? {
        let s = StateMorphismAlgebra::new(a.clone(), tau.into_map())?;
        entries.push(TransferEntry {
            monolith: s.monolith()?,
            tau: s.tau,
        });
    }
    Ok(SiTransferReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnorm::{boolean_algebra, goedel_chain, lukasiewicz_chain};

    #[test]
    fn verification_verdicts() {
        let b = boolean_algebra();
        assert_eq!(verify_state_morphism(&b, &[0, 1]).unwrap(), None);
        assert!(matches!(
            verify_state_morphism(&b, &[0, 0]).unwrap(),
            Some(StateMorphismViolation::Homomorphism { .. })
        ));
        assert!(verify_state_morphism(&b, &[0]).is_err());
        let sq = b.product(&b).unwrap().0;
        assert_eq!(verify_state_morphism(&sq, &[0, 0, 3, 3]).unwrap(), None);
    }

    #[test]
    fn diagonal_of_two() {
        let d = diagonal(&boolean_algebra());
        assert_eq!(d.tau(), &[0, 0, 3, 3]);
        assert_eq!(d.theta_tau().blocks(), vec![vec![0, 1], vec![2, 3]]);
        let con = d.con_sma(&Caps::default()).unwrap();
        assert_eq!(con.len(), 3);
        assert!(d.is_subdirectly_irreducible().unwrap());
    }

    #[test]
    fn lift_of_identity_and_total() {
        let d = diagonal(&boolean_algebra());
        let k = d.image().len();
        assert_eq!(d.lift_congruence(&Congruence::identity(k)).unwrap(), d.theta_tau());
        assert!(d.lift_congruence(&Congruence::total(k)).unwrap().is_total());
    }

    #[test]
    fn certificates() {
        let g = goedel_chain(2);
        let s = StateMorphismAlgebra::new(g.clone(), vec![0, 1, 2]).unwrap();
        let c = subdiagonal_embedding(&s, &Caps::default()).unwrap();
        assert!(c.checks.all());
        assert_eq!(c.embedding.map(), &[0, 4, 8]);

        let d = diagonal(&boolean_algebra());
        let c = subdiagonal_embedding(&d, &Caps::default()).unwrap();
        assert!(c.checks.all());
    }

    #[test]
    fn transfer_on_chains() {
        let r = si_transfer_check(&lukasiewicz_chain(2)).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert!(r.all_si());
        let r = si_transfer_check(&goedel_chain(2)).unwrap();
        assert!(r.all_si());
        let sq = boolean_algebra().product(&boolean_algebra()).unwrap().0;
        assert!(matches!(si_transfer_check(&sq), Err(Error::NotSubdirectlyIrreducible)));
    }
}
