//! File formats, the bundled corpus and the verification suite behind the
//! `smorph` command.

pub mod corpus;
pub mod format;
pub mod suite;

use smorph_core::{FiniteAlgebra, Result};

use crate::format::AlgebraDocument;

/// A copy of `doc` with one table entry replaced.
pub fn mutate_entry(doc: &AlgebraDocument, op: usize, position: usize, value: usize) -> Result<AlgebraDocument> {
    let algebra: FiniteAlgebra = doc.algebra.with_entry(op, position, value)?;
    Ok(AlgebraDocument {
        algebra,
        ..doc.clone()
    })
}
