use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FmmError {
    /// The complexified radius vanishes while the point itself does not
    /// (an isotropic direction such as `(1, i)`).
    #[error("degenerate point: complexified radius vanishes ({0})")]
    DegeneratePoint(String),

    #[error("points {0} and {1} share real parts but differ in imaginary parts")]
    DuplicateRealParts(usize, usize),

    #[error("Lipschitz constant {lipschitz} exceeds the admissible bound {bound} for a {dim}-D tree")]
    LipschitzTooLarge { lipschitz: f64, bound: f64, dim: usize },

    #[error("overflow while evaluating {0}")]
    Overflow(String),

    #[error("separation condition violated: {0}")]
    SeparationViolated(String),

    #[error("ill-conditioned projection at degree {0}")]
    IllConditionedProjection(usize),

    #[error("tree exceeded {0} levels")]
    MaxDepthExceeded(usize),

    #[error("{needed} expansion terms needed at level {level}, cap is {cap}")]
    TermLimitExceeded { level: usize, needed: usize, cap: usize },

    #[error("source {0} and target {1} coincide")]
    CoincidentPoints(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, FmmError>;
