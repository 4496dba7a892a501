use std::fmt;

use prtt_core::{SourceSpan, Term};
use prtt_nbe::NbeError;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeErrorKind {
    Mismatch,
    MotiveNotInU0,
    PiNotInU0,
    UnboundVariable,
    NotAFunction,
    NotAPair,
    LevelOverflow,
    EmptyImpossible,
}

impl TypeErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeErrorKind::Mismatch => "Mismatch",
            TypeErrorKind::MotiveNotInU0 => "MotiveNotInU0",
            TypeErrorKind::PiNotInU0 => "PiNotInU0",
            TypeErrorKind::UnboundVariable => "UnboundVariable",
            TypeErrorKind::NotAFunction => "NotAFunction",
            TypeErrorKind::NotAPair => "NotAPair",
            TypeErrorKind::LevelOverflow => "LevelOverflow",
            TypeErrorKind::EmptyImpossible => "EmptyImpossible",
        }
    }
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A rejected judgement. `expected`/`actual` hold normal forms when the
/// kind compares two types or terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub span: Option<SourceSpan>,
    pub expected: Option<Term>,
    pub actual: Option<Term>,
    pub message: String,
}

impl TypeError {
    pub fn new(kind: TypeErrorKind, message: impl Into<String>) -> Self {
        TypeError { kind, span: None, expected: None, actual: None, message: message.into() }
    }

    pub fn with_terms(mut self, expected: Term, actual: Term) -> Self {
        self.expected = Some(expected);
        self.actual = Some(actual);
        self
    }

    pub fn at(mut self, span: SourceSpan) -> Self {
        self.span.get_or_insert(span);
        self
    }

    /// `file:line:col: [KIND] message`
    pub fn render(&self) -> String {
        let loc = self.span.as_ref().map_or_else(|| "<unknown>:0:0".to_string(), |s| s.to_string());
        let mut out = format!("{loc}: [{}] {}", self.kind, self.message);
        if let (Some(e), Some(a)) = (&self.expected, &self.actual) {
            out.push_str(&format!("\n  expected: {e}\n    actual: {a}"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "kind": self.kind.as_str(),
            "file": self.span.as_ref().map(|s| s.file.to_string()),
            "line": self.span.as_ref().map(|s| s.line),
            "column": self.span.as_ref().map(|s| s.column),
            "length": self.span.as_ref().map(|s| s.length),
            "message": self.message,
            "expected": self.expected.as_ref().map(|t| t.to_string()),
            "actual": self.actual.as_ref().map(|t| t.to_string()),
        })
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::error::Error for TypeError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Type(Box<TypeError>),
    #[error(transparent)]
    Eval(#[from] NbeError),
}

impl CheckError {
    pub fn kind(&self) -> Option<TypeErrorKind> {
        match self {
            CheckError::Type(e) => Some(e.kind),
            CheckError::Eval(_) => None,
        }
    }

    pub fn at(self, span: SourceSpan) -> Self {
        match self {
            CheckError::Type(e) => CheckError::Type(Box::new(e.at(span))),
            other => other,
        }
    }
}

impl From<TypeError> for CheckError {
    fn from(e: TypeError) -> Self {
        CheckError::Type(Box::new(e))
    }
}

pub type Result<T> = std::result::Result<T, CheckError>;

pub(crate) fn fail<T>(kind: TypeErrorKind, message: impl Into<String>) -> Result<T> {
    Err(TypeError::new(kind, message).into())
}
