use std::fmt;

use crate::symbol::Symbol;

/// One step from a node of an expression tree to one of its children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Outer,
    Inner,
    Left,
    Right,
}

/// Location of a sub-expression, read from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExprPath(pub Vec<Step>);

impl ExprPath {
    pub fn root() -> Self {
        ExprPath(Vec::new())
    }

    pub(crate) fn push(&self, step: Step) -> Self {
        let mut steps = self.0.clone();
        steps.push(step);
        ExprPath(steps)
    }
}

impl fmt::Display for ExprPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("<root>");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            let name = match step {
                Step::Outer => "outer",
                Step::Inner => "inner",
                Step::Left => "left",
                Step::Right => "right",
            };
            f.write_str(name)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ill-typed expression at {path}: {reason}")]
    IllTyped { path: ExprPath, reason: String },
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("2-cell is not structural: it contains the generator `{0}`")]
    NotStructural(Symbol),
    #[error("missing assignment for `{0}`")]
    MissingAssignment(String),
    #[error("structural 2-cell evaluates to a non-identity: {0}")]
    NonDegenerate(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("malformed reproducer: {0}")]
    Reproducer(String),
}

impl Error {
    pub(crate) fn ill_typed(path: &ExprPath, reason: impl Into<String>) -> Self {
        Error::IllTyped {
            path: path.clone(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
