use core::fmt;

use crate::state::Label;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `d` outside `[2, max]`.
    InvalidDimension { d: usize, max: usize },
    DimensionMismatch { left: usize, right: usize },
    /// A value that should live in `[0, d)` does not.
    OutOfRange { value: usize, d: usize },
    DuplicateLabel(Label),
    UnknownLabel(Label),
    /// Two registers were combined whose label sets or orders are incompatible.
    RegisterMismatch,
    /// Amplitude vector length is not `d^n`.
    LengthMismatch { expected: usize, actual: usize },
    /// The register would exceed the amplitude guard.
    RegisterTooLarge { amplitudes: usize, max: usize },
    NotNormalized { norm_sqr: f64 },
    NonFinite,
    ZeroNorm,
    /// A coefficient required to be unit-modulus is not.
    NonUnitCoefficient { index: usize, modulus: f64 },
    InvalidArity { n: usize },
    /// A measurement branch with vanishing Born probability was requested.
    ZeroProbability { probability: f64 },
    InvalidSlot { slot: usize, n: usize },
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension { d, max } => {
                write!(f, "invalid dimension d={d}; expected 2 <= d <= {max}")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::OutOfRange { value, d } => write!(f, "value {value} outside [0, {d})"),
            Error::DuplicateLabel(l) => write!(f, "duplicate qudit label {l}"),
            Error::UnknownLabel(l) => write!(f, "unknown qudit label {l}"),
            Error::RegisterMismatch => f.write_str("registers do not match"),
            Error::LengthMismatch { expected, actual } => {
                write!(f, "expected {expected} entries, got {actual}")
            }
            Error::RegisterTooLarge { amplitudes, max } => {
                write!(f, "register of {amplitudes} amplitudes exceeds limit {max}")
            }
            Error::NotNormalized { norm_sqr } => {
                write!(f, "coefficients not normalized (sum of squares {norm_sqr})")
            }
            Error::NonFinite => f.write_str("non-finite amplitude"),
            Error::ZeroNorm => f.write_str("state has zero norm"),
            Error::NonUnitCoefficient { index, modulus } => {
                write!(f, "coefficient {index} has modulus {modulus}, expected 1")
            }
            Error::InvalidArity { n } => write!(f, "invalid number of qudits n={n}"),
            Error::ZeroProbability { probability } => {
                write!(f, "measurement branch has zero probability ({probability:e})")
            }
            Error::InvalidSlot { slot, n } => write!(f, "slot {slot} outside 1..={n}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
