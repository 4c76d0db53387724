use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("hyperplane normal is zero")]
    ZeroNormal,
    #[error("expected {expected} coefficients, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("duplicate hyperplane at index {index} (same as index {first})")]
    DuplicateHyperplane { index: usize, first: usize },
    #[error("arrangement must have dimension >= 1 and at least one hyperplane")]
    DegenerateArrangement,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("sign vector `{0}` is not a chamber of this arrangement")]
    ChamberNotFound(String),
    #[error("unknown chamber id `{0}`")]
    UnknownChamber(String),
    #[error("arrangement is not simplicial")]
    NotSimplicial,
    #[error("hyperplane {hyperplane} is not a wall of chamber `{chamber}` (step {step})")]
    NotAWall {
        chamber: String,
        hyperplane: usize,
        step: usize,
    },
    #[error("paths do not share the required endpoint")]
    EndpointMismatch,
    #[error("operation requires a path of length >= 1")]
    EmptyPath,
    #[error("equivalence class exceeded the cap of {0} members")]
    CapExceeded(usize),
    #[error("no greedy first atom found; simpliciality assumption violated")]
    NoGreedyAtom,
    #[error("degree recursion disagrees with the closed form: {0}")]
    RecursionMismatch(String),
    #[error("path must start at the base chamber `{base}`, got `{got}`")]
    WrongStart { base: String, got: String },
    #[error("simple {0} is not valid for this chamber")]
    InvalidSimple(usize),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
