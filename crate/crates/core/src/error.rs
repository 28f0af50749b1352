use std::fmt;

/// Errors shared by the arithmetic, field, and dynamics layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A modulus that must be prime is not.
    NotPrime(u64),
    /// Operands live over different primes or have incompatible shapes.
    Mismatch(String),
    /// Degree or valuation was requested for the zero polynomial.
    ZeroPolynomial,
    /// `det(G^n - Z^k)` vanishes, so the exact counting formula does not
    /// apply to this instance.
    SingularInstance { n: u64, k: i64 },
    /// The operation is only defined for confined rules.
    NotConfined,
    /// Multiplicative order of the zero element was requested.
    ZeroElement,
    /// `sub` does not divide `sup`, so there is no such subfield.
    NotSubfield { sub: usize, sup: usize },
    /// A field modulus is rejected (wrong degree, not monic, reducible).
    BadModulus(String),
    /// A randomized search gave up after its attempt budget.
    SearchExhausted(&'static str),
    /// An enumeration or table would exceed the configured bound.
    BoundExceeded { needed: u128, bound: u128 },
    /// An element does not lie in the requested subfield.
    NotInSubfield,
    /// An argument violates a documented precondition.
    InvalidArgument(String),
    /// A cross-check that must hold by theory failed; this indicates a bug
    /// or a genuinely inconsistent input, never a recoverable condition.
    Inconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::Mismatch(msg) => write!(f, "incompatible operands: {msg}"),
            Error::ZeroPolynomial => write!(f, "degree/valuation of the zero polynomial"),
            Error::SingularInstance { n, k } => {
                write!(f, "det(G^{n} - Z^{k}) = 0: counting formula does not apply")
            }
            Error::NotConfined => write!(f, "rule is not confined"),
            Error::ZeroElement => write!(f, "multiplicative order of zero"),
            Error::NotSubfield { sub, sup } => {
                write!(f, "F_p^{sub} is not a subfield of F_p^{sup}")
            }
            Error::BadModulus(msg) => write!(f, "bad modulus: {msg}"),
            Error::SearchExhausted(what) => write!(f, "search exhausted: {what}"),
            Error::BoundExceeded { needed, bound } => {
                write!(f, "size {needed} exceeds configured bound {bound}")
            }
            Error::NotInSubfield => write!(f, "element does not lie in the requested subfield"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Inconsistency(msg) => write!(f, "internal consistency check failed: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
