use thiserror::Error;

use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {msg}")]
pub struct ParseError {
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseError { msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("table is not square: {0}")]
    NotSquare(String),
    #[error("unknown element name {0:?}")]
    UnknownElement(String),
    #[error("duplicate element name {0:?}")]
    DuplicateElement(String),
    #[error("table is not associative: ({0}{1}){2} != {0}({1}{2})")]
    NotAssociative(String, String, String),
    #[error("letter {0} is not assigned")]
    Unassigned(Letter),
    #[error("letter {0} does not occur in the word")]
    AbsentLetter(Letter),
    #[error("empty word has no value in a monoid without identity")]
    NoIdentity,
    #[error("exhaustive check needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("presentation closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("rewriting did not terminate within {0} steps")]
    RewriteBudget(usize),
    #[error("relation mentions non-generator {0}")]
    NotAGenerator(Letter),
    #[error("unknown monoid {0:?}")]
    UnknownMonoid(String),
    #[error("schema {tag} is not defined for n = {n}")]
    SchemaRange { tag: String, n: usize },
    #[error("square precondition violated: {0}")]
    Square(String),
    #[error("{0} letters exceed the oracle cap of {1}")]
    OracleCap(usize, usize),
    #[error("boundary insertion did not reach a fixpoint within {0} rounds")]
    FixpointBudget(usize),
    #[error("internal rewriting error: {0}")]
    Internal(String),
    #[error("inconsistent containment: {0}")]
    Inconsistent(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
