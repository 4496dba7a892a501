//! Surface syntax trees, before names are resolved.

use std::rc::Rc;

use prtt_core::{Level, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModule {
    pub file: Rc<str>,
    pub imports: Vec<Import>,
    pub decls: Vec<Decl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Import {
    pub path: String,
    pub span: SourceSpan,
}

/// `def name : ty := body`. Parameters are already folded into `ty` and `body`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub span: SourceSpan,
    pub ty: Option<Expr>,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binder {
    pub name: String,
    pub span: SourceSpan,
    pub ty: Option<Expr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Eq,
    Refl,
    J,
    Ind,
    Case,
    UnitInd,
    ExFalso,
    Suc,
    Fst,
    Snd,
    Inl,
    Inr,
    Lift(Level, Level),
}

impl Keyword {
    pub fn from_word(w: &str) -> Option<Keyword> {
        Some(match w {
            "Eq" => Keyword::Eq,
            "refl" => Keyword::Refl,
            "J" => Keyword::J,
            "ind" => Keyword::Ind,
            "case" => Keyword::Case,
            "unitind" => Keyword::UnitInd,
            "exfalso" => Keyword::ExFalso,
            "suc" => Keyword::Suc,
            "fst" => Keyword::Fst,
            "snd" => Keyword::Snd,
            "inl" => Keyword::Inl,
            "inr" => Keyword::Inr,
            "lift" => Keyword::Lift(Level::ZERO, Level::ONE),
            _ => return None,
        })
    }

    /// Number of binders each argument position introduces.
    pub fn binders(self) -> &'static [usize] {
        match self {
            Keyword::Eq => &[0, 0, 0],
            Keyword::J => &[2, 0, 0, 0, 0],
            Keyword::Ind => &[1, 0, 2, 0],
            Keyword::Case => &[1, 1, 1, 0],
            Keyword::UnitInd => &[1, 0, 0],
            Keyword::ExFalso => &[1, 0],
            _ => &[0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Ident(String),
    Num(u64),
    Univ(Level),
    Nat,
    Unit,
    Empty,
    Star,
    Zero,
    Fun(Vec<Binder>, Box<Expr>),
    Pi(Vec<Binder>, Box<Expr>),
    Sigma(Vec<Binder>, Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Ann(Box<Expr>, Box<Expr>),
    Keyword(Keyword, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

/// Words that cannot name variables or definitions.
pub fn is_reserved(w: &str) -> bool {
    matches!(w, "fun" | "def" | "import" | "zero" | "Nat" | "Unit" | "Empty" | "star")
        || Keyword::from_word(w).is_some()
        || universe_index(w).is_some()
}

pub fn universe_index(w: &str) -> Option<&str> {
    let digits = w.strip_prefix('U')?;
    (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())).then_some(digits)
}
