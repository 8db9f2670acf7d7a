use thiserror::Error;

use crate::af::ArgId;

/// Errors raised while reading or querying an argumentation framework.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AfError {
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: attack references undeclared argument `{name}`")]
    UnknownArgument { line: usize, name: String },
    #[error("argument id {id} out of range (framework has {n} arguments)")]
    OutOfRange { id: ArgId, n: usize },
}

/// Errors raised by the search engine and task dispatch.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("unknown query argument `{0}`")]
    UnknownQueryArgument(String),
    #[error("task {0} requires a query argument")]
    MissingQuery(String),
    #[error("task {0} does not take a query argument")]
    UnexpectedQuery(String),
    #[error("unrecognised problem `{0}`")]
    UnknownProblem(String),
    #[error("framework too large for brute force: {n} arguments (limit {limit})")]
    TooLarge { n: usize, limit: usize },
}
