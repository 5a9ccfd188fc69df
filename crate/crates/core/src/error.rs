use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not square-free (gcd with derivative has degree {0})")]
    NotSquareFree(usize),
    #[error("window of length {len} does not contain moment index {needed}")]
    OutOfWindow { needed: usize, len: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot normalize p_{n}: D_{} is zero", *n as isize - 1)]
    DegenerateNormalization { n: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("reconstructed measure does not reproduce the window: {0}")]
    InconsistentWindow(String),
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
