use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Grassmannian context: k = {k}, n = {n}")]
    InvalidContext { k: u32, n: u32 },

    #[error("invalid diagram {rows:?} for Gr({k},{n})")]
    InvalidDiagram { rows: Vec<u32>, k: u32, n: u32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {p}^{m} is too large")]
    FieldTooLarge { p: u64, m: u32 },

    #[error("characteristic {p} divides {n}; roots of unity of order {n} are not separable")]
    UnsupportedCharacteristic { p: u64, n: u64 },

    #[error("field of order {order} has no primitive {n}-th root of unity")]
    MissingRootsOfUnity { order: u64, n: u64 },

    #[error("degree {degree} exceeds the supported bound {limit}")]
    DegreeLimit { degree: usize, limit: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("gcd({a}, {b}) != 1")]
    NotCoprime { a: u64, b: u64 },

    #[error("search exhausted below {0}")]
    SearchExhausted(u64),

    #[error("frame columns are not orthonormal (defect {0:e})")]
    NotOrthonormal(f64),

    #[error("nonpositive coordinate at ({0},{1})")]
    NonPositive(usize, usize),

    #[error("no convergence after {iters} iterations (gradient {grad:e})")]
    NoConvergence { iters: usize, grad: f64 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
