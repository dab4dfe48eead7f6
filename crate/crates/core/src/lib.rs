//! Finite-model kernel for state-morphism algebras.
//!
//! Everything here works over finite algebras whose universe is the dense
//! index range `0..n`. Operation tables are flat row-major arrays, so an
//! element is just a `usize` and a tuple is a slice of them.
//!
//! The crate is `no_std` (it needs `alloc`). IO, file formats and the
//! command line live in the companion `smorph` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod congruence;
pub mod engine;
pub mod error;
pub mod morphism;
pub mod oracle;
pub mod residuated;
pub mod state;
pub mod term;
pub mod theory;
pub mod tnorm;

mod odometer;

pub use algebra::{FiniteAlgebra, Signature, Symbol};
pub use congruence::Congruence;
pub use engine::{
    cep_extension, congruence_lattice, generated_congruence, malcev_witness, monolith,
    principal_congruence, MalcevStep, MalcevWitness,
};
pub use error::{Error, Result};
pub use morphism::{enumerate_morphisms, find_isomorphism, MorphismMode, Morphism};
pub use state::{diagonal, StateMorphismAlgebra, SubdiagonalCertificate};
pub use term::{eval_term, holds_identity, Identity, IdentityVerdict, Term};

/// Size limits for the exhaustive searches.
///
/// Every search that can blow up combinatorially checks one of these and
/// fails with [`Error::CapExceeded`] instead of running away.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest universe for which a full congruence lattice is enumerated.
    pub lattice: usize,
    /// Largest ambient algebra accepted by the congruence-extension search.
    pub search: usize,
    /// Maximum number of assignments evaluated when checking one identity.
    pub identity_evaluations: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            lattice: 12,
            search: 10,
            identity_evaluations: 10_000_000,
        }
    }
}
