use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [0, 1]")]
    ComponentOutOfRange { name: &'static str, value: f64 },

    #[error("mu + eta + nu = {sum} exceeds 1")]
    SumExceedsOne { sum: f64 },

    #[error("{family}: gamma = {gamma} is outside the parameter domain {domain}{hint}")]
    ParamOutOfDomain {
        family: &'static str,
        gamma: f64,
        domain: &'static str,
        hint: &'static str,
    },

    #[error("{family} takes a gamma parameter")]
    MissingParam { family: &'static str },

    #[error("{family} takes no parameter")]
    UnexpectedParam { family: &'static str },

    #[error("unknown t-norm family `{0}`")]
    UnknownFamily(String),

    #[error("generator input {0} is outside [0, 1]")]
    InputOutOfRange(f64),

    #[error("generator value {0} is negative")]
    NegativeGeneratorValue(f64),

    #[error("scalar/exponent lambda = {0} must be finite and positive")]
    NonPositiveScalar(f64),

    #[error("input sequence is empty")]
    EmptyInput,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("weight w[{index}] = {value} is outside (0, 1]")]
    WeightOutOfRange { index: usize, value: f64 },

    #[error("weights sum to {sum}, expected 1")]
    WeightsDoNotSumToOne { sum: f64 },

    #[error("{0} has no closed-form aggregation formula")]
    UnsupportedFamily(&'static str),

    #[error("degenerate component in {0}: formula is indeterminate")]
    DegenerateComponent(&'static str),

    #[error("lambda = {0} must be a positive integer for this operator")]
    NonIntegerLambda(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("internal consistency violation: {0}")]
    Internal(String),

    #[error("invalid decision problem: {0}")]
    InvalidProblem(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that indicate a defect in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
