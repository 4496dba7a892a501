use std::path::PathBuf;

use prtt_checker::CheckError;
use prtt_core::Term;
use prtt_extract::ExtractError;
use prtt_nbe::NbeError;
use prtt_parser::LoadError;
use prtt_prir::PrError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Usage(String),
    #[error("{}: invalid program: {message}", path.display())]
    BadProgram { path: PathBuf, message: String },
    #[error("{error} (in `{decl}`)")]
    Type { decl: String, error: CheckError },
    #[error("`{decl}` has type {ty}, not Nat")]
    NotNat { decl: String, ty: Term },
    #[error("in `{decl}`: {error}")]
    Eval { decl: String, error: NbeError },
    #[error("cannot extract `{decl}`: {error}")]
    Extract { decl: String, error: ExtractError },
    #[error(transparent)]
    Program(PrError),
    #[error("{0} of {1} properties failed")]
    Failures(usize, usize),
    /// Diagnostics were already written; exit with this code.
    #[error("failed")]
    Reported(i32),
}

impl CliError {
    /// 2 for unreadable or malformed input, 1 for everything the kernel or
    /// the suite rejected.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Load(_) | CliError::Usage(_) | CliError::BadProgram { .. } => 2,
            CliError::Program(PrError::IllFormed(_)) => 2,
            CliError::Reported(code) => *code,
            _ => 1,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Io { .. } => "Io".into(),
            CliError::Load(LoadError::Io { .. }) => "Io".into(),
            CliError::Load(LoadError::Parse(_)) => "ParseError".into(),
            CliError::Load(LoadError::Resolve(_)) => "ResolveError".into(),
            CliError::Load(LoadError::ImportCycle { .. }) => "ImportCycle".into(),
            CliError::Usage(_) => "Usage".into(),
            CliError::BadProgram { .. } => "BadProgram".into(),
            CliError::Type { error, .. } => error.kind().map_or("EvalError".into(), |k| k.to_string()),
            CliError::NotNat { .. } => "NotNat".into(),
            CliError::Eval { .. } => "EvalError".into(),
            CliError::Extract { error, .. } => match error {
                ExtractError::NotFirstOrder(_) => "NotFirstOrder",
                ExtractError::NotGroundType(_) => "NotGroundType",
                ExtractError::NotLevelZero(_) => "NotLevelZero",
                ExtractError::NotAValue(..) => "NotAValue",
                ExtractError::Check(e) => return e.kind().map_or("EvalError".into(), |k| k.to_string()),
                ExtractError::Eval(_) => "EvalError",
                ExtractError::Program(_) => "ProgramError",
            }
            .into(),
            CliError::Program(PrError::IllFormed(_)) => "BadProgram".into(),
            CliError::Program(PrError::BudgetExceeded(_)) => "BudgetExceeded".into(),
            CliError::Failures(..) => "PropertyFailures".into(),
            CliError::Reported(_) => "Reported".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"kind": self.kind(), "message": self.to_string(), "exit": self.exit_code()});
        match self {
            CliError::Type { decl, error: CheckError::Type(e) } => {
                v["decl"] = json!(decl);
                v["type_error"] = e.to_json();
            }
            CliError::Load(e) => {
                if let Some(s) = e.span() {
                    v["file"] = json!(s.file.to_string());
                    v["line"] = json!(s.line);
                    v["column"] = json!(s.column);
                }
            }
            _ => {}
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_input_errors_from_rejections() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Program(PrError::IllFormed("x".into())).exit_code(), 2);
        assert_eq!(CliError::Failures(1, 3).exit_code(), 1);
        assert_eq!(CliError::NotNat { decl: "u".into(), ty: Term::Unit }.exit_code(), 1);
        assert_eq!(CliError::Reported(2).exit_code(), 2);
        let e = CliError::Extract { decl: "f".into(), error: ExtractError::NotGroundType(Term::Unit) };
        assert_eq!(e.kind(), "NotGroundType");
    }
}
