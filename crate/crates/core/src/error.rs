use thiserror::Error;

/// Every failure the library reports. Validation problems and declared limits
/// are kept apart so callers (the CLI in particular) can map them to exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("infinite path set: quiver has an oriented cycle")]
    InfinitePathSet,
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("disconnected graph")]
    Disconnected,
    #[error("reflection undefined at loop vertex {0}")]
    LoopVertex(usize),
    #[error("vertex {0} is not a sink")]
    NotSink(usize),
    #[error("vertex {0} is not a source")]
    NotSource(usize),
    #[error("wrong graph type: {0}")]
    WrongType(String),
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error("representation is zero")]
    ZeroRepresentation,
    #[error("representation is decomposable")]
    Decomposable,
    #[error("a universe of indecomposables is required for Rad^n with n >= 2")]
    MissingUniverse,
    #[error("chain is not composable at position {0}")]
    NotComposable(usize),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("step budget of {0} exhausted")]
    StepBudget(usize),
    #[error("Rad^2 is nonzero")]
    RadicalSquareNonzero,
    #[error("radical filtration is not nilpotent")]
    NotNilpotent,
    #[error("characteristic mismatch: {0}")]
    Characteristic(String),
    #[error("not a total representation: {0}")]
    NotTotal(String),
    #[error("declared incompleteness: {0}")]
    Incomplete(String),
    #[error("regular parameter not rational over the field: {0}")]
    IrrationalEigenvalue(String),
}

impl Error {
    /// True for the two outcomes that signal a documented limit rather than bad input.
    pub fn is_incompleteness(&self) -> bool {
        matches!(self, Error::Incomplete(_) | Error::IrrationalEigenvalue(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
