use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Entries of a vector that must be primitive share a factor.
    NonPrimitive,
    ArityMismatch { expected: usize, found: usize },
    LengthMismatch { left: usize, right: usize },
    /// The torus has no solutions.
    EmptyTorus,
    /// The torus has more than one irreducible component.
    Reducible,
    EmptySet,
    /// No component was found with kernel offsets inside the bound.
    EmptyWithinBound,
    NotMember,
    NotSpecialization,
    PreconditionViolated(String),
    WitnessVerificationFailed(String),
    InvalidArgument(String),
}

impl Error {
    /// Stable kebab-case identifier used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrimitive => "non-primitive",
            Error::ArityMismatch { .. } => "arity-mismatch",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::EmptyTorus => "empty-torus",
            Error::Reducible => "reducible",
            Error::EmptySet => "empty-set",
            Error::EmptyWithinBound => "empty-within-bound",
            Error::NotMember => "not-member",
            Error::NotSpecialization => "not-specialization",
            Error::PreconditionViolated(_) => "precondition-violated",
            Error::WitnessVerificationFailed(_) => "witness-verification-failed",
            Error::InvalidArgument(_) => "invalid-argument",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimitive => f.write_str("vector entries have a common factor"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {}, found {}", expected, found)
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "tuple lengths differ: {} vs {}", left, right)
            }
            Error::EmptyTorus => f.write_str("torus has no points"),
            Error::Reducible => f.write_str("torus is reducible"),
            Error::EmptySet => f.write_str("linear set is empty"),
            Error::EmptyWithinBound => f.write_str("no component within the kernel bound"),
            Error::NotMember => f.write_str("point does not lie in the set"),
            Error::NotSpecialization => f.write_str("target is not a specialization of the source"),
            Error::PreconditionViolated(msg) => write!(f, "precondition violated: {}", msg),
            Error::WitnessVerificationFailed(msg) => write!(f, "witness failed verification: {}", msg),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
