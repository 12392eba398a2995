use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("torus elements live over different Poisson contexts")]
    Context,
    #[error("no value assigned to: {0}")]
    Assignment(String),
    #[error("bad word: {0}")]
    Word(String),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad argument: {0}")]
    Argument(String),
    #[error("wrong move: {0}")]
    WrongMove(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("trace value {0} is below 2, no real length")]
    NonHyperbolic(f64),
    #[error("no symmetric q-ordering for monomial {0}")]
    Ordering(String),
    #[error("bracket has non-integral coefficient at {0}")]
    NonIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
