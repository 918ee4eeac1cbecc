use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter {name} = {value} outside the admissible domain ({bound})")]
    Parameter {
        name: &'static str,
        value: String,
        bound: &'static str,
    },
    #[error("degree {n} is not admissible for {family}: {reason}")]
    Degree { family: String, n: usize, reason: String },
    #[error("{0}")]
    Kind(String),
    #[error("point {0} outside the support of the weight")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
