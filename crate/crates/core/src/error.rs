use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {0} is not in the alphabet")]
    SymbolNotInAlphabet(u32),
    #[error("invalid subshift definition: {0}")]
    InvalidSft(String),
    #[error("subshift is empty after pruning dead symbols")]
    EmptySubshift,
    #[error("center symbols differ: {left} != {right}")]
    CenterMismatch { left: u32, right: u32 },
    #[error("no bi-infinite sequence survives the factor restriction")]
    EmptyResult,
    #[error("spectral radius bounds did not reach tolerance: [{lower}, {upper}]")]
    EntropyNotConverged { lower: f64, upper: f64 },
    #[error("window graph has no cycle")]
    EmptyGraph,
    #[error("only one cycle exists, no second spectrum value")]
    NoSecondCycle,
    #[error("interval enclosures cannot separate candidates: {0}")]
    Ambiguous(String),
    #[error("combinatorial budget exceeded: {what} > {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("two cylinder representatives have overlapping values")]
    ZeroGap,
    #[error("inadmissible word: {0}")]
    Inadmissible(String),
    #[error("position {0} is neither left-happy nor right-happy")]
    NotHappy(i64),
    #[error("period word is not primitive")]
    NotPrimitive,
    #[error("dimension proxy {d} is not below 1/(2k) = {bound}")]
    DimensionTooLarge { d: f64, bound: f64 },
    #[error("position {0} is outside the analysed horizon")]
    OutOfHorizon(i64),
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
