use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra routines.
///
/// Every operation that can fail validates its inputs up front; the
/// algorithms themselves are total once the preconditions hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// A vertex index outside `0..n`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// The consecutive-d multiplier reduced to zero modulo `n`.
    ZeroMultiplier { n: u64 },
    /// The closed forms need `|d| >= 2`.
    DegenerateMultiplier { d: i64 },
    /// Two quantities that must be coprime share a factor.
    NotCoprime { a: i64, b: u64 },
    /// A prime was required.
    NotPrime(u64),
    /// A prime power was required.
    NotPrimePower(u64),
    /// `v` is not a minimal orbit representative modulo `m`.
    NotRepresentative { v: u64, m: u64 },
    /// A cyclic order of zero or a negative order.
    InvalidOrder,
    /// `nu_p` of zero is undefined.
    ZeroValuation,
    /// Torsion counts do not describe an abelian p-group.
    InconsistentTorsionCounts(String),
    /// Brute-force enumeration would exceed the configured cap.
    EnumerationCap { size: u128, cap: u64 },
    /// Field too large for the table-driven arithmetic.
    FieldTooLarge(u64),
    /// A field element index outside `0..q`.
    CoefficientOutOfRange { value: u64, q: u64 },
    /// A ring element of the wrong length for its ring.
    LengthMismatch { expected: usize, found: usize },
    /// No multiplier `mu` solves the generator congruence; indicates a bug.
    NoLambda { p: u64, t: u32 },
    /// A closed-form quantity failed an internal divisibility check.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            Error::ZeroMultiplier { n } => write!(f, "multiplier is 0 modulo {n}"),
            Error::DegenerateMultiplier { d } => write!(f, "need |d| >= 2, got d = {d}"),
            Error::NotCoprime { a, b } => write!(f, "{a} and {b} are not coprime"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::NotRepresentative { v, m } => {
                write!(f, "{v} is not an orbit representative modulo {m}")
            }
            Error::InvalidOrder => write!(f, "cyclic orders must be positive"),
            Error::ZeroValuation => write!(f, "valuation of zero is undefined"),
            Error::InconsistentTorsionCounts(msg) => {
                write!(f, "inconsistent torsion counts: {msg}")
            }
            Error::EnumerationCap { size, cap } => write!(
                f,
                "enumeration of {size} ring elements exceeds the cap of {cap}"
            ),
            Error::FieldTooLarge(q) => write!(f, "field of order {q} exceeds 256"),
            Error::CoefficientOutOfRange { value, q } => {
                write!(f, "coefficient {value} is not an element of F_{q}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} coefficients, found {found}")
            }
            Error::NoLambda { p, t } => {
                write!(f, "no generator multiplier for p = {p}, t = {t}")
            }
            Error::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
