//! Recursive-descent parser. Precedence from loosest: `fun`, `->`, `+`, `*`,
//! application. Binary operators associate to the right.

use std::rc::Rc;

use prtt_core::{Level, SourceSpan};

use crate::error::ParseError;
use crate::lexer::{tokenize, Tok, Token};
use crate::syntax::*;

pub fn parse_module(text: &str) -> Result<SurfaceModule, ParseError> {
    parse_module_named("<input>", text)
}

pub fn parse_module_named(file: &str, text: &str) -> Result<SurfaceModule, ParseError> {
    let file: Rc<str> = Rc::from(file);
    let mut p = Parser { toks: tokenize(&file, text)?, pos: 0 };
    let mut m = SurfaceModule { file, imports: vec![], decls: vec![] };
    loop {
        match p.peek() {
            Tok::Eof => return Ok(m),
            Tok::Ident(w) if w == "import" => {
                p.bump();
                let span = p.span();
                match p.bump().tok {
                    Tok::Str(path) => m.imports.push(Import { path, span }),
                    _ => return Err(p.error_prev(["a quoted path"])),
                }
            }
            Tok::Ident(w) if w == "def" => {
                p.bump();
                m.decls.push(p.decl()?);
            }
            _ => return Err(p.error(["`def`", "`import`"])),
        }
    }
}

/// Parse a single expression, e.g. a type given on the command line.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let file: Rc<str> = Rc::from("<expr>");
    let mut p = Parser { toks: tokenize(&file, text)?, pos: 0 };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

fn join(a: &SourceSpan, b: &SourceSpan) -> SourceSpan {
    let length = if a.line == b.line && b.column >= a.column { b.column + b.length - a.column } else { a.length };
    SourceSpan::new(a.file.clone(), a.line, a.column, length)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span.clone()
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos.saturating_sub(1)].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<I: IntoIterator<Item = &'static str>>(&self, expected: I) -> ParseError {
        ParseError::new(self.span(), expected, self.peek().describe())
    }

    fn error_prev<I: IntoIterator<Item = &'static str>>(&self, expected: I) -> ParseError {
        let t = &self.toks[self.pos.saturating_sub(1)];
        ParseError::new(t.span.clone(), expected, t.tok.describe())
    }

    fn expect(&mut self, tok: Tok) -> Result<SourceSpan, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            let want = format!("`{}`", tok.symbol());
            Err(ParseError::new(self.span(), [want], self.peek().describe()))
        }
    }

    fn name(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek() {
            Tok::Ident(w) if !is_reserved(w) => {
                let w = w.clone();
                Ok((w, self.bump().span))
            }
            _ => Err(self.error(["an identifier"])),
        }
    }

    fn is_name_at(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::Ident(w) if !is_reserved(w))
    }

    /// Lookahead for `( x y : ...`.
    fn at_binder_group(&self) -> bool {
        if *self.peek() != Tok::LParen || !self.is_name_at(1) {
            return false;
        }
        let mut k = 1;
        while self.is_name_at(k) {
            k += 1;
        }
        *self.peek_at(k) == Tok::Colon
    }

    /// `( x y : A )`, the opening parenthesis not yet consumed.
    fn binder_group(&mut self) -> Result<Vec<Binder>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut names = vec![];
        while self.is_name_at(0) {
            names.push(self.name()?);
        }
        self.expect(Tok::Colon)?;
        let ty = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(names.into_iter().map(|(name, span)| Binder { name, span, ty: Some(ty.clone()) }).collect())
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let (name, span) = self.name()?;
        let mut params = vec![];
        while self.at_binder_group() {
            params.extend(self.binder_group()?);
        }
        let ty = if *self.peek() == Tok::Colon {
            self.bump();
            Some(self.expr()?)
        } else {
            None
        };
        if *self.peek() != Tok::Define {
            let mut expected = vec!["`:=`"];
            if ty.is_none() {
                expected.push("`:`");
                if params.is_empty() || *self.peek() == Tok::LParen {
                    expected.push("a parameter group");
                }
            }
            return Err(self.error(expected));
        }
        self.bump();
        let body = self.expr()?;
        if params.is_empty() {
            return Ok(Decl { name, span, ty, body });
        }
        let ty = ty.map(|t| {
            let s = t.span.clone();
            Expr { kind: ExprKind::Pi(params.clone(), Box::new(t)), span: s }
        });
        let s = body.span.clone();
        let body = Expr { kind: ExprKind::Fun(params, Box::new(body)), span: s };
        Ok(Decl { name, span, ty, body })
    }

    fn is_fun(&self) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == "fun")
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        if self.is_fun() {
            let start = self.bump().span;
            let mut binders = vec![];
            loop {
                if self.at_binder_group() {
                    binders.extend(self.binder_group()?);
                } else if self.is_name_at(0) {
                    let (name, span) = self.name()?;
                    binders.push(Binder { name, span, ty: None });
                } else {
                    break;
                }
            }
            if binders.is_empty() {
                return Err(self.error(["a binder"]));
            }
            if *self.peek() != Tok::FatArrow {
                return Err(self.error(["`=>`", "a binder"]));
            }
            self.bump();
            let body = self.expr()?;
            let span = join(&start, &body.span);
            return Ok(Expr { kind: ExprKind::Fun(binders, Box::new(body)), span });
        }
        self.arrow()
    }

    fn binop(&mut self, lhs: Expr, rhs: Expr, mk: fn(Box<Expr>, Box<Expr>) -> ExprKind) -> Expr {
        let span = join(&lhs.span, &rhs.span);
        Expr { kind: mk(Box::new(lhs), Box::new(rhs)), span }
    }

    fn arrow(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.sum()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.expr()?;
            return Ok(self.binop(lhs, rhs, ExprKind::Arrow));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.prod()?;
        if *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.sum()?;
            return Ok(self.binop(lhs, rhs, ExprKind::Sum));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.app()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.prod()?;
            return Ok(self.binop(lhs, rhs, ExprKind::Prod));
        }
        Ok(lhs)
    }

    fn at_atom(&self) -> bool {
        match self.peek() {
            Tok::Num(_) | Tok::LParen => true,
            Tok::Ident(w) => {
                !is_reserved(w)
                    || matches!(w.as_str(), "zero" | "Nat" | "Unit" | "Empty" | "star")
                    || universe_index(w).is_some()
            }
            _ => false,
        }
    }

    fn app(&mut self) -> Result<Expr, ParseError> {
        let mut head = self.head()?;
        while self.at_atom() {
            let arg = self.atom()?;
            head = self.binop(head, arg, ExprKind::App);
        }
        Ok(head)
    }

    fn head(&mut self) -> Result<Expr, ParseError> {
        let Tok::Ident(w) = self.peek() else { return self.atom() };
        let Some(mut kw) = Keyword::from_word(w) else { return self.atom() };
        let start = self.bump().span;
        if let Keyword::Lift(..) = kw {
            if *self.peek() == Tok::LBracket && self.toks[self.pos].glued {
                self.bump();
                let from = self.level()?;
                self.expect(Tok::Comma)?;
                let to = self.level()?;
                self.expect(Tok::RBracket)?;
                kw = Keyword::Lift(from, to);
            }
        }
        let mut args = vec![];
        for _ in kw.binders() {
            if !self.at_atom() {
                return Err(self.error(["an argument"]));
            }
            args.push(self.atom()?);
        }
        let span = join(&start, &args.last().map_or(start.clone(), |a| a.span.clone()));
        Ok(Expr { kind: ExprKind::Keyword(kw, args), span })
    }

    fn level(&mut self) -> Result<Level, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let l = n.parse::<u8>().ok().and_then(Level::new);
                match l {
                    Some(l) => {
                        self.bump();
                        Ok(l)
                    }
                    None => Err(self.error(["a universe level between 0 and 8"])),
                }
            }
            _ => Err(self.error(["a universe level"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let span = self.span();
        let kind = match self.peek().clone() {
            Tok::Num(n) => match n.parse::<u64>() {
                Ok(v) => {
                    self.bump();
                    ExprKind::Num(v)
                }
                Err(_) => return Err(self.error(["a numeral that fits in 64 bits"])),
            },
            Tok::Ident(w) => {
                let kind = match w.as_str() {
                    "zero" => ExprKind::Zero,
                    "Nat" => ExprKind::Nat,
                    "Unit" => ExprKind::Unit,
                    "Empty" => ExprKind::Empty,
                    "star" => ExprKind::Star,
                    _ => match universe_index(&w) {
                        Some(d) => match d.parse::<u8>().ok().and_then(Level::new) {
                            Some(l) => ExprKind::Univ(l),
                            None => return Err(self.error(["a universe between U0 and U8"])),
                        },
                        None if is_reserved(&w) => return Err(self.error(["an expression"])),
                        None => ExprKind::Ident(w),
                    },
                };
                self.bump();
                kind
            }
            Tok::LParen => return self.paren(),
            _ => return Err(self.error(["an expression"])),
        };
        Ok(Expr { kind, span })
    }

    fn paren(&mut self) -> Result<Expr, ParseError> {
        let start = self.span();
        if self.at_binder_group() {
            let group = self.binder_group()?;
            match self.peek() {
                Tok::Arrow => {
                    self.bump();
                    let body = self.expr()?;
                    let span = join(&start, &body.span);
                    return Ok(Expr { kind: ExprKind::Pi(group, Box::new(body)), span });
                }
                Tok::Star => {
                    self.bump();
                    let body = self.prod()?;
                    let span = join(&start, &body.span);
                    return Ok(Expr { kind: ExprKind::Sigma(group, Box::new(body)), span });
                }
                _ => {
                    // `(f x : T)` is an ascription of an application.
                    let ty = group[0].ty.clone().expect("group binders are typed");
                    let mut subject: Option<Expr> = None;
                    for b in group {
                        let v = Expr { kind: ExprKind::Ident(b.name), span: b.span };
                        subject = Some(match subject {
                            None => v,
                            Some(f) => self.binop(f, v, ExprKind::App),
                        });
                    }
                    let span = join(&start, &self.prev_span());
                    let subject = subject.expect("group is non-empty");
                    return Ok(Expr { kind: ExprKind::Ann(Box::new(subject), Box::new(ty)), span });
                }
            }
        }
        self.bump();
        let inner = self.expr()?;
        let kind = match self.peek() {
            Tok::RParen => {
                self.bump();
                return Ok(inner);
            }
            Tok::Comma => {
                self.bump();
                let snd = self.expr()?;
                ExprKind::Pair(Box::new(inner), Box::new(snd))
            }
            Tok::Colon => {
                self.bump();
                let ty = self.expr()?;
                ExprKind::Ann(Box::new(inner), Box::new(ty))
            }
            _ => return Err(self.error(["`)`", "`,`", "`:`"])),
        };
        let end = self.expect(Tok::RParen)?;
        Ok(Expr { kind, span: join(&start, &end) })
    }
}
