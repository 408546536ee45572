use alloc::string::String;
use core::fmt;

/// Everything that can go wrong inside the algebra core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    MixedFieldSpec,
    NotPrime(u64),
    Syntax { position: usize, message: String },
    UnknownVariable { position: usize, name: String },
    InvalidLiteral { position: usize, literal: String },
    MixedRing,
    DegreeRange { shift_degree: u32, order: u32 },
    InvalidOrder,
    EmptyIdeal,
    MultiGenerator(usize),
    DimensionMismatch { expected: usize, found: usize },
    ZeroModulus,
    /// The witness minor of a rank computation modulo `f` turned out to be
    /// divisible by `f`, which only happens when `A/<f>` is not a domain.
    NotADomain,
    TooLarge { limit: usize, found: usize },
    ResourceLimit(ResourceKind),
    AmbientMismatch,
    ConstantPolynomial,
    PointOffHypersurface,
    AllPartialsZero,
}

/// Which Gröbner budget was exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResourceKind {
    Degree { limit: u32, reached: u32 },
    Steps { limit: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::MixedFieldSpec => f.write_str("operands belong to different coefficient fields"),
            Error::NotPrime(p) => write!(f, "characteristic {p} is neither 0 nor a prime"),
            Error::Syntax { position, message } => {
                write!(f, "syntax error at position {position}: {message}")
            }
            Error::UnknownVariable { position, name } => {
                write!(f, "unknown variable `{name}` at position {position}")
            }
            Error::InvalidLiteral { position, literal } => {
                write!(f, "invalid literal `{literal}` at position {position}")
            }
            Error::MixedRing => f.write_str("operands belong to different polynomial rings"),
            Error::DegreeRange { shift_degree, order } => write!(
                f,
                "shift of degree {shift_degree} is out of range for order {order} (need |beta| <= n-1)"
            ),
            Error::InvalidOrder => f.write_str("the order n must be at least 1"),
            Error::EmptyIdeal => f.write_str("at least one generator is required"),
            Error::MultiGenerator(r) => {
                write!(f, "operation needs a single generator, got {r}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroModulus => f.write_str("cannot work modulo the zero polynomial"),
            Error::NotADomain => f.write_str(
                "witness minor is divisible by f; the quotient ring is not a domain (is f reducible?)",
            ),
            Error::TooLarge { limit, found } => {
                write!(f, "matrix dimension {found} exceeds the brute-force cap {limit}")
            }
            Error::ResourceLimit(ResourceKind::Degree { limit, reached }) => write!(
                f,
                "resource limit: Gröbner degree budget {limit} exceeded (reached {reached})"
            ),
            Error::ResourceLimit(ResourceKind::Steps { limit }) => {
                write!(f, "resource limit: Gröbner step budget {limit} exhausted")
            }
            Error::AmbientMismatch => f.write_str("vector does not live in the basis' free module"),
            Error::ConstantPolynomial => f.write_str("polynomial must be nonconstant"),
            Error::PointOffHypersurface => f.write_str("point does not lie on the hypersurface"),
            Error::AllPartialsZero => f.write_str(
                "every first Hasse partial of f vanishes (f is a p-th power in characteristic p)",
            ),
        }
    }
}

impl core::error::Error for Error {}
