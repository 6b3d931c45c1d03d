use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two jets expanded at different points were combined.
    MismatchedExpansion {
        left: f64,
        right: f64,
    },
    /// Two jets of different truncation order were combined.
    MismatchedOrder {
        left: usize,
        right: usize,
    },
    /// Division by a jet whose leading coefficient is zero or E-dependent.
    SingularDivision,
    /// Differentiating an order-0 jet; the jet order budget is too small for the requested k.
    OrderExhausted,
    /// The potential is not representable at this coordinate.
    Overflow {
        x: f64,
    },
    /// Root extraction requested for a constant polynomial.
    NoRoots,
    /// The discriminant vanished identically at this iteration.
    DegenerateDiscriminant {
        k: usize,
    },
    InvalidConfig(String),
    /// Non-positive energy difference or similar out-of-domain input.
    Domain(String),
    /// The finite-difference oracle cannot represent the problem.
    OracleInapplicable(String),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MismatchedExpansion { left, right } => {
                write!(f, "jets expanded at different points ({left} vs {right})")
            }
            Error::MismatchedOrder { left, right } => {
                write!(f, "jets truncated at different orders ({left} vs {right})")
            }
            Error::SingularDivision => f.write_str("division by a non-invertible jet"),
            Error::OrderExhausted => f.write_str("jet order exhausted; increase the jet order budget"),
            Error::Overflow { x } => write!(f, "potential overflows at x = {x}"),
            Error::NoRoots => f.write_str("constant polynomial has no roots"),
            Error::DegenerateDiscriminant { k } => {
                write!(
                    f,
                    "discriminant vanishes identically at k = {k}; try another expansion point"
                )
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::OracleInapplicable(msg) => write!(f, "oracle inapplicable: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
