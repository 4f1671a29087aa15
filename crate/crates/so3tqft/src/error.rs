use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} must be a prime at least 5")]
    InvalidPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} is not in the ring")]
    NotInRing(String),
    #[error("color {color} is outside [0, {max}]")]
    ColorOutOfRange { color: i64, max: i64 },
    #[error("sweep width {width} exceeds the cap {cap}")]
    WidthCap { width: usize, cap: usize },
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("coefficient overflow in the planar engine")]
    Overflow,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("singular matrix")]
    Singular,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
