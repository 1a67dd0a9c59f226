use thiserror::Error;

/// Errors raised anywhere in the crate. Every variant echoes the input that
/// triggered it so front ends can report it verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("word `{0}` reduces to the identity")]
    EmptyAfterReduction(String),
    #[error("invalid letter `{letter}` in `{input}` (expected one of a, A, b, B)")]
    InvalidLetter { letter: char, input: String },
    #[error("enumeration would exceed the budget of {budget} entries (cap {cap})")]
    CapTooLarge { cap: usize, budget: usize },
    #[error("rays coincide as infinite words for `{0}`")]
    EqualRays(String),
    #[error("chord endpoints are not pairwise distinct")]
    DegeneratePoints,
    #[error("`{0}` is a proper power")]
    NonPrimitive(String),
    #[error("seed `{0}` is not cyclically reduced")]
    SeedNotReduced(String),
    #[error("seed `{seed}` has word length {len} above the cap {cap}")]
    SeedAboveCap { seed: String, len: usize, cap: usize },
    #[error("no totient formula found within the search bounds")]
    NoFormulaFound,
    #[error("`{0}` has no row in the builtin formula table")]
    UnknownSeed(String),
    #[error("no acute pentagon for (l1, l2, l3) = ({l1}, {l2}, {l3}); angle at G = {angle}")]
    NoPentagon { l1: f64, l2: f64, l3: f64, angle: f64 },
    #[error("pentagon solver did not converge (residual {residual:e} after {iterations} iterations)")]
    NonConvergence { residual: f64, iterations: usize },
    #[error("metric parameters must be positive and finite, got ({0}, {1}, {2})")]
    InvalidParams(f64, f64, f64),
    #[error("representation is not a one-holed torus holonomy: {0}")]
    InvalidMetric(String),
    #[error("class `{word}` maps to a non-hyperbolic element (|trace| = {trace})")]
    EllipticOrParabolic { word: String, trace: f64 },
    #[error("isometry is not hyperbolic (|trace| = {0})")]
    NotHyperbolic(f64),
    #[error("axis endpoints collide numerically for `{0}`")]
    EndpointCollision(String),
    #[error("spectrum needs at least two distinct lengths (T = {count})")]
    DegenerateSpectrum { count: usize },
    #[error("formula table: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, Error>;
