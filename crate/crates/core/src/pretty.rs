//! Rendering terms in the surface syntax accepted by the parser.

use std::fmt;

use crate::level::Level;
use crate::term::Term;

const EXPR: u8 = 0;
const SUM: u8 = 1;
const PROD: u8 = 2;
const APP: u8 = 3;
const ATOM: u8 = 4;

/// Render `t` with `scope` naming the free variables, innermost last.
/// Unnamed free variables print as `#i`, which does not re-parse.
pub fn render(t: &Term, scope: &[String]) -> String {
    let mut p = Printer { names: scope.to_vec(), out: String::new() };
    p.term(t, EXPR);
    p.out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, &[]))
    }
}

struct Printer {
    names: Vec<String>,
    out: String,
}

impl Printer {
    fn fresh(&self) -> String {
        format!("x{}", self.names.len())
    }

    fn var(&mut self, i: usize) {
        match self.names.len().checked_sub(i + 1) {
            Some(k) => {
                let n = self.names[k].clone();
                self.out.push_str(&n);
            }
            None => self.out.push_str(&format!("#{i}")),
        }
    }

    fn open(&mut self, need: u8, have: u8) -> bool {
        let paren = need > have;
        if paren {
            self.out.push('(');
        }
        paren
    }

    fn close(&mut self, paren: bool) {
        if paren {
            self.out.push(')');
        }
    }

    /// Print `body` under `n` fresh untyped binders as `(fun a b => body)`.
    fn binder_arg(&mut self, n: usize, body: &Term) {
        self.out.push_str("(fun");
        for _ in 0..n {
            let x = self.fresh();
            self.out.push(' ');
            self.out.push_str(&x);
            self.names.push(x);
        }
        self.out.push_str(" => ");
        self.term(body, EXPR);
        self.names.truncate(self.names.len() - n);
        self.out.push(')');
    }

    fn under(&mut self, body: &Term, prec: u8) -> String {
        let x = self.fresh();
        self.names.push(x.clone());
        self.term(body, prec);
        self.names.pop();
        x
    }

    fn keyword(&mut self, prec: u8, kw: &str, args: &[Arg<'_>]) {
        let p = self.open(prec, APP);
        self.out.push_str(kw);
        for a in args {
            self.out.push(' ');
            match a {
                Arg::Plain(t) => self.term(t, ATOM),
                Arg::Bind(n, t) => self.binder_arg(*n, t),
            }
        }
        self.close(p);
    }

    fn binder_form(&mut self, prec: u8, have: u8, dom: &Term, body: &Term, op: &str, body_prec: u8) {
        let p = self.open(prec, have);
        if body.mentions(0) {
            let x = self.fresh();
            self.out.push_str(&format!("({x} : "));
            self.term(dom, EXPR);
            self.out.push_str(&format!(") {op} "));
        } else {
            self.term(dom, have + 1);
            self.out.push_str(&format!(" {op} "));
        }
        self.under(body, body_prec);
        self.close(p);
    }

    fn term(&mut self, t: &Term, prec: u8) {
        if let Some(n) = t.as_numeral() {
            self.out.push_str(&n.to_string());
            return;
        }
        match t {
            Term::Var(i) => self.var(*i),
            Term::Const(c) => self.out.push_str(&c.name),
            Term::Nat => self.out.push_str("Nat"),
            Term::Unit => self.out.push_str("Unit"),
            Term::Empty => self.out.push_str("Empty"),
            Term::Star => self.out.push_str("star"),
            Term::Zero => self.out.push('0'),
            Term::Univ(l) => self.out.push_str(&format!("U{l}")),
            Term::Lam(a, b) => {
                let p = self.open(prec, EXPR);
                let x = self.fresh();
                self.out.push_str(&format!("fun ({x} : "));
                self.term(a, EXPR);
                self.out.push_str(") => ");
                self.under(b, EXPR);
                self.close(p);
            }
            Term::Pi(a, b) => self.binder_form(prec, EXPR, a, b, "->", EXPR),
            Term::Sigma(a, b) => self.binder_form(prec, PROD, a, b, "*", PROD),
            Term::Sum(a, b) => {
                let p = self.open(prec, SUM);
                self.term(a, PROD);
                self.out.push_str(" + ");
                self.term(b, SUM);
                self.close(p);
            }
            Term::App(f, a) => {
                let p = self.open(prec, APP);
                self.term(f, APP);
                self.out.push(' ');
                self.term(a, ATOM);
                self.close(p);
            }
            Term::Pair(a, b) => {
                self.out.push('(');
                self.term(a, EXPR);
                self.out.push_str(", ");
                self.term(b, EXPR);
                self.out.push(')');
            }
            Term::Fst(a) => self.keyword(prec, "fst", &[Arg::Plain(a)]),
            Term::Snd(a) => self.keyword(prec, "snd", &[Arg::Plain(a)]),
            Term::Suc(a) => self.keyword(prec, "suc", &[Arg::Plain(a)]),
            Term::Inl(a) => self.keyword(prec, "inl", &[Arg::Plain(a)]),
            Term::Inr(a) => self.keyword(prec, "inr", &[Arg::Plain(a)]),
            Term::Refl(a) => self.keyword(prec, "refl", &[Arg::Plain(a)]),
            Term::Eq(a, x, y) => self.keyword(prec, "Eq", &[Arg::Plain(a), Arg::Plain(x), Arg::Plain(y)]),
            Term::EqInd { motive, base, lhs, rhs, proof } => self.keyword(
                prec,
                "J",
                &[Arg::Bind(2, motive), Arg::Plain(base), Arg::Plain(lhs), Arg::Plain(rhs), Arg::Plain(proof)],
            ),
            Term::ExFalso { motive, scrut } => {
                self.keyword(prec, "exfalso", &[Arg::Bind(1, motive), Arg::Plain(scrut)])
            }
            Term::UnitInd { motive, base, scrut } => {
                self.keyword(prec, "unitind", &[Arg::Bind(1, motive), Arg::Plain(base), Arg::Plain(scrut)])
            }
            Term::NatInd { motive, base, step, scrut } => self.keyword(
                prec,
                "ind",
                &[Arg::Bind(1, motive), Arg::Plain(base), Arg::Bind(2, step), Arg::Plain(scrut)],
            ),
            Term::SumInd { motive, lcase, rcase, scrut } => self.keyword(
                prec,
                "case",
                &[Arg::Bind(1, motive), Arg::Bind(1, lcase), Arg::Bind(1, rcase), Arg::Plain(scrut)],
            ),
            Term::Lift(from, to, a) => {
                let kw = if (*from, *to) == (Level::ZERO, Level::ONE) {
                    "lift".to_string()
                } else {
                    format!("lift[{from},{to}]")
                };
                self.keyword(prec, &kw, &[Arg::Plain(a)]);
            }
        }
    }
}

enum Arg<'a> {
    Plain(&'a Term),
    Bind(usize, &'a Term),
}
