use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use prtt_core::SourceSpan;
use thiserror::Error;

/// Unexpected token, with the set of tokens that would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl ParseError {
    pub fn new<I, S>(span: SourceSpan, expected: I, found: impl Into<String>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ParseError { span, expected: expected.into_iter().map(Into::into).collect(), found: found.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        write!(f, "{}: expected {}, found {}", self.span, expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("{span}: unbound identifier `{name}`")]
    UnboundIdentifier { name: String, span: SourceSpan },
    #[error("{span}: `{name}` is already defined")]
    DuplicateDefinition { name: String, span: SourceSpan },
    #[error("{span}: {message}")]
    Malformed { message: String, span: SourceSpan },
}

impl ResolveError {
    pub fn span(&self) -> &SourceSpan {
        match self {
            ResolveError::UnboundIdentifier { span, .. }
            | ResolveError::DuplicateDefinition { span, .. }
            | ResolveError::Malformed { span, .. } => span,
        }
    }
}

/// Failure while loading a file and its imports.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("{span}: import cycle through {}", path.display())]
    ImportCycle { path: PathBuf, span: SourceSpan },
}

impl LoadError {
    pub fn span(&self) -> Option<&SourceSpan> {
        match self {
            LoadError::Io { .. } => None,
            LoadError::Parse(e) => Some(&e.span),
            LoadError::Resolve(e) => Some(e.span()),
            LoadError::ImportCycle { span, .. } => Some(span),
        }
    }
}
