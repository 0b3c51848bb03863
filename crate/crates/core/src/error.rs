use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: pivot of valuation {valuation} at precision {precision} (guard {guard}); raise the precision")]
    PrecisionExhausted {
        valuation: u32,
        precision: u32,
        guard: u32,
    },
    #[error("{0} is not a unit")]
    NotAUnit(u64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("group parameters differ")]
    ParamMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHom(String),
    #[error("vector does not lie in the lattice")]
    NotInLattice,
    #[error("not a 2-cocycle: identity fails at (a, b, c) = ({a}, {b}, {c})")]
    NotACocycle { a: usize, b: usize, c: usize },
    #[error("map is not surjective")]
    NotSurjective,
    #[error("kernel is not finite (Zp-rank {0})")]
    InfiniteKernel(usize),
    #[error("invalid witness: {0}")]
    WitnessInvalid(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("axiom violation: {0}")]
    AxiomViolation(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
