use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

/// Errors reported by every module of the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A matrix or vector had the wrong shape.
    Dimension { expected: String, found: String },
    /// A quantity that should vanish exceeded its tolerance.
    NumericConsistency { what: String, residue: f64, tol: f64 },
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// A documented precondition of a bound or formula does not hold.
    Precondition(String),
    /// The requested work exceeds a configured cap.
    ResourceLimit { what: String, requested: u64, cap: u64 },
    /// A division by a zero PTM diagonal entry.
    Singularity { t: usize, pauli: crate::Pauli },
    /// A channel failed the pure Z-coherence gate.
    Purity { location: String, detail: String },
    /// The replacement formula has no real root.
    NoRealRoot { base: f64, w: usize },
    /// An error raised while processing one spacetime location.
    At { location: String, source: Box<Error> },
}

impl Error {
    pub(crate) fn at(location: impl Into<String>, source: Error) -> Error {
        Error::At { location: location.into(), source: Box::new(source) }
    }

    /// The innermost error, skipping location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { expected, found } => {
                write!(f, "dimension error: expected {expected}, found {found}")
            }
            Error::NumericConsistency { what, residue, tol } => {
                write!(f, "numeric consistency error: {what} residue {residue:e} exceeds {tol:e}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::ResourceLimit { what, requested, cap } => {
                write!(f, "resource limit: {what} needs {requested}, cap is {cap}")
            }
            Error::Singularity { t, pauli } => {
                write!(f, "singular ratio: diagonal entry ({pauli:?},{pauli:?}) of the error at t={t} is zero")
            }
            Error::Purity { location, detail } => {
                write!(f, "channel at {location} is not pure Z-coherent: {detail}")
            }
            Error::NoRealRoot { base, w } => {
                write!(f, "no real {w}-th root of 1-2|beta|^2 = {base}")
            }
            Error::At { location, source } => write!(f, "at {location}: {source}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
