use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    EmptyUniverse,
    DuplicateSymbol(String),
    UnknownSymbol(String),
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    VariableOutOfRange {
        index: usize,
        len: usize,
    },
    TableShape {
        symbol: String,
        expected: usize,
        found: usize,
    },
    EntryOutOfRange {
        symbol: String,
        position: usize,
        value: usize,
        size: usize,
    },
    ElementOutOfRange {
        element: usize,
        size: usize,
    },
    SizeMismatch {
        expected: usize,
        found: usize,
    },
    SignatureMismatch,
    /// A relation that should be a congruence breaks compatibility: the two
    /// argument tuples are related componentwise but their images are not.
    NotCompatible {
        symbol: String,
        left: Vec<usize>,
        right: Vec<usize>,
    },
    /// A subset that should be a subuniverse is not closed under `symbol`.
    NotClosed {
        symbol: String,
        args: Vec<usize>,
    },
    NotAHomomorphism {
        symbol: String,
        args: Vec<usize>,
    },
    NotIdempotent {
        element: usize,
    },
    NotInCongruence {
        a: usize,
        b: usize,
    },
    NotSubdirectlyIrreducible,
    CapExceeded {
        what: &'static str,
        size: u64,
        cap: u64,
    },
    WrongSignature {
        expected: &'static str,
    },
    NotAnOrder(String),
    Precondition(String),
    GridNotClosed {
        formula: &'static str,
        points: usize,
    },
    InvalidPartition(String),
    UnknownFormula(String),
    AdjointnessFailure {
        witness: [usize; 3],
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyUniverse => write!(f, "universe must have at least one element"),
            Error::DuplicateSymbol(s) => write!(f, "duplicate symbol `{s}`"),
            Error::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            Error::ArityMismatch {
                symbol,
                expected,
                found,
            } => write!(
                f,
                "symbol `{symbol}` has arity {expected} but was given {found} arguments"
            ),
            Error::VariableOutOfRange { index, len } => {
                write!(f, "variable x{index} out of range (environment has {len} entries)")
            }
            Error::TableShape {
                symbol,
                expected,
                found,
            } => write!(
                f,
                "table for `{symbol}` has {found} entries, expected {expected}"
            ),
            Error::EntryOutOfRange {
                symbol,
                position,
                value,
                size,
            } => write!(
                f,
                "entry out of range in `{symbol}` at position {position}: {value} >= {size}"
            ),
            Error::ElementOutOfRange { element, size } => {
                write!(f, "element {element} out of range for universe of size {size}")
            }
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            Error::SignatureMismatch => write!(f, "signatures differ"),
            Error::NotCompatible {
                symbol,
                left,
                right,
            } => write!(
                f,
                "relation not compatible with `{symbol}` at {left:?} ~ {right:?}"
            ),
            Error::NotClosed { symbol, args } => {
                write!(f, "subset not closed under `{symbol}` at {args:?}")
            }
            Error::NotAHomomorphism { symbol, args } => {
                write!(f, "map does not preserve `{symbol}` at {args:?}")
            }
            Error::NotIdempotent { element } => {
                write!(f, "map is not idempotent at element {element}")
            }
            Error::NotInCongruence { a, b } => {
                write!(f, "pair ({a}, {b}) is not in the generated congruence")
            }
            Error::NotSubdirectlyIrreducible => write!(f, "algebra is not subdirectly irreducible"),
            Error::CapExceeded { what, size, cap } => {
                write!(f, "too large: {what} needs {size}, cap is {cap}")
            }
            Error::WrongSignature { expected } => write!(f, "wrong signature, expected {expected}"),
            Error::NotAnOrder(msg) => write!(f, "derived relation is not a bounded order: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::GridNotClosed { formula, points } => write!(
                f,
                "the {points}-point uniform grid is not closed under the {formula} t-norm"
            ),
            Error::InvalidPartition(msg) => write!(f, "invalid ordinal-sum partition: {msg}"),
            Error::UnknownFormula(s) => write!(f, "unknown t-norm formula `{s}`"),
            Error::AdjointnessFailure { witness } => write!(
                f,
                "residuation fails at (z, x, y) = ({}, {}, {})",
                witness[0], witness[1], witness[2]
            ),
        }
    }
}

impl core::error::Error for Error {}
