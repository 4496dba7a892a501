use std::rc::Rc;

use prtt_core::SourceSpan;

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(String),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Define,
    FatArrow,
    Arrow,
    Star,
    Plus,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("numeral `{n}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Define => ":=",
            Tok::FatArrow => "=>",
            Tok::Arrow => "->",
            Tok::Star => "*",
            Tok::Plus => "+",
            Tok::Ident(_) => "identifier",
            Tok::Num(_) => "numeral",
            Tok::Str(_) => "string",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
    /// No whitespace separates this token from the previous one.
    pub glued: bool,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

pub fn tokenize(file: &Rc<str>, text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut glued = false;
    let span = |line, col, len| SourceSpan::new(file.clone(), line, col, len);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            glued = false;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            glued = false;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            glued = false;
            continue;
        }
        let start = (i, col);
        let two: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let tok = if c == 'λ' {
            i += 1;
            Tok::Ident("fun".into())
        } else if ident_start(c) {
            while i < chars.len() && ident_char(chars[i]) {
                i += 1;
            }
            Tok::Ident(chars[start.0..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Num(chars[start.0..i].iter().collect())
        } else if c == '"' {
            i += 1;
            let from = i;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(ParseError::new(span(line, col, i - start.0), ["closing `\"`"], "end of line"));
            }
            let s: String = chars[from..i].iter().collect();
            i += 1;
            Tok::Str(s)
        } else {
            let (tok, len) = match (c, two.as_str()) {
                (_, ":=") => (Tok::Define, 2),
                (_, "=>") => (Tok::FatArrow, 2),
                (_, "->") => (Tok::Arrow, 2),
                ('⇒', _) => (Tok::FatArrow, 1),
                ('→', _) => (Tok::Arrow, 1),
                ('×', _) => (Tok::Star, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('[', _) => (Tok::LBracket, 1),
                (']', _) => (Tok::RBracket, 1),
                (',', _) => (Tok::Comma, 1),
                (':', _) => (Tok::Colon, 1),
                ('*', _) => (Tok::Star, 1),
                ('+', _) => (Tok::Plus, 1),
                _ => return Err(ParseError::new(span(line, col, 1), ["a token"], format!("character {c:?}"))),
            };
            i += len;
            tok
        };
        let len = i - start.0;
        out.push(Token { tok, span: span(line, start.1, len), glued });
        col = start.1 + len;
        glued = true;
    }
    out.push(Token { tok: Tok::Eof, span: span(line, col, 1), glued: false });
    Ok(out)
}
