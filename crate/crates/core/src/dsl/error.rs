use std::fmt;

use thiserror::Error;

/// A source location: 1-based line and column plus the byte range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn to(self, other: Span) -> Span {
        Span {
            end: other.end.max(self.end),
            ..self
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DslError {
    #[error("{span}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        span: Span,
        expected: Vec<String>,
        found: String,
    },

    #[error("{span}: undeclared name `{name}`")]
    UndeclaredName { name: String, span: Span },

    #[error("{span}: `{name}` is already declared at {previous}")]
    DuplicateName {
        name: String,
        span: Span,
        previous: Span,
    },

    #[error("{span}: arity mismatch: {message}")]
    ArityMismatch { span: Span, message: String },

    #[error("{span}: non-polynomial coefficient: {message}")]
    NonPolynomialCoefficient { span: Span, message: String },

    #[error("{span}: unknown directive `{name}`")]
    UnknownDirective { name: String, span: Span },

    #[error("{span}: {message}")]
    Elaboration { span: Span, message: String },
}

impl DslError {
    pub fn span(&self) -> Span {
        match self {
            DslError::Syntax { span, .. }
            | DslError::UndeclaredName { span, .. }
            | DslError::DuplicateName { span, .. }
            | DslError::ArityMismatch { span, .. }
            | DslError::NonPolynomialCoefficient { span, .. }
            | DslError::UnknownDirective { span, .. }
            | DslError::Elaboration { span, .. } => *span,
        }
    }

    pub(crate) fn syntax(span: Span, expected: &[&str], found: impl Into<String>) -> Self {
        DslError::Syntax {
            span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.into(),
        }
    }

    pub(crate) fn elab(span: Span, message: impl Into<String>) -> Self {
        DslError::Elaboration {
            span,
            message: message.into(),
        }
    }
}

pub type DslResult<T> = std::result::Result<T, DslError>;
