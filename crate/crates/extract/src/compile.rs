use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use prtt_checker::Checker;
use prtt_core::{Context, Term};
use prtt_nbe::Nbe;
use prtt_prir::PRFun;

use crate::pairing::Helpers;
use crate::ExtractError;

type F = Rc<PRFun>;

/// Check `body` at `Nat` over `k` natural variables, normalize it and compile
/// the normal form to a program of arity `k`. Argument `i` is the variable
/// bound `i`-th from the outside, i.e. `Var(k - 1 - i)`.
pub fn extract(k: usize, body: &Term) -> Result<PRFun, ExtractError> {
    Extractor::new().extract(k, body)
}

/// Compile a term already in normal form.
pub fn extract_normal(k: usize, normal: &Term) -> Result<PRFun, ExtractError> {
    Extractor::new().compile_normal(k, normal)
}

pub struct Extractor {
    checker: Checker,
    h: Helpers,
    total_space: bool,
    table: RefCell<HashMap<Key, F>>,
}

/// Structural key over already shared children, so equal subprograms
/// become one node.
#[derive(PartialEq, Eq, Hash)]
enum Key {
    Const(usize, prtt_core::Natural),
    Proj(usize, usize),
    Comp(usize, Vec<usize>),
    PrimRec(usize, usize),
}

fn addr(f: &F) -> usize {
    Rc::as_ptr(f) as usize
}

impl Default for Extractor {
    fn default() -> Self {
        Extractor::new()
    }
}

impl Extractor {
    pub fn new() -> Self {
        Extractor::with_checker(Checker::default())
    }

    pub fn with_checker(checker: Checker) -> Self {
        Extractor { checker, h: Helpers::new(), total_space: false, table: RefCell::new(HashMap::new()) }
    }

    /// Compile recursions with a dependent motive by iterating on pairs
    /// `(i, acc)` in the total space and projecting. Off by default: the
    /// step already receives `i`, and codes do not depend on the fibre.
    pub fn total_space(mut self, on: bool) -> Self {
        self.total_space = on;
        self
    }

    fn mk(&self, f: PRFun) -> F {
        let key = match &f {
            PRFun::Const(k, v) => Key::Const(*k, v.clone()),
            PRFun::Succ => return self.h.succ.clone(),
            PRFun::Proj(k, i) => Key::Proj(*k, *i),
            PRFun::Comp(o, gs) => Key::Comp(addr(o), gs.iter().map(addr).collect()),
            PRFun::PrimRec(g, h) => Key::PrimRec(addr(g), addr(h)),
        };
        self.table.borrow_mut().entry(key).or_insert_with(|| Rc::new(f)).clone()
    }

    fn proj(&self, m: usize, i: usize) -> F {
        self.mk(PRFun::Proj(m, i))
    }

    fn comp(&self, o: &F, gs: Vec<F>) -> F {
        self.mk(PRFun::Comp(o.clone(), gs))
    }

    /// `f` of arity `m` as a function of `r` extra leading arguments
    /// followed by its own.
    fn behind(&self, f: &F, m: usize, r: usize) -> F {
        match &**f {
            PRFun::Proj(_, p) => self.proj(m + r, p + r),
            PRFun::Const(_, v) => self.mk(PRFun::Const(m + r, v.clone())),
            _ => self.comp(f, (r..r + m).map(|i| self.proj(m + r, i)).collect()),
        }
    }

    /// `f` of arity `m` as a function of its own arguments followed by `r`
    /// extra.
    fn before(&self, f: &F, m: usize, r: usize) -> F {
        match &**f {
            PRFun::Proj(_, p) => self.proj(m + r, *p),
            PRFun::Const(_, v) => self.mk(PRFun::Const(m + r, v.clone())),
            _ => self.comp(f, (0..m).map(|i| self.proj(m + r, i)).collect()),
        }
    }

    pub fn extract(&self, k: usize, body: &Term) -> Result<PRFun, ExtractError> {
        let ctx = Context::nats(k);
        self.checker.check(&ctx, body, &Term::Nat)?;
        let nbe = Nbe::new(self.checker.config().step_budget);
        let normal = nbe.normalize(&ctx, body, &Term::Nat)?;
        self.compile_normal(k, &normal)
    }

    pub fn compile_normal(&self, k: usize, normal: &Term) -> Result<PRFun, ExtractError> {
        let env: Vec<F> = (0..k).map(|i| self.proj(k, i)).collect();
        let f = self.compile(normal, &env, k)?;
        Ok(Rc::try_unwrap(f).unwrap_or_else(|f| (*f).clone()))
    }

    fn constant(&self, m: usize, v: u64) -> F {
        self.mk(PRFun::constant(m, v))
    }

    /// Compile `body`, which binds `values.len()` new variables, with those
    /// variables computed once and passed as extra arguments.
    fn bind(&self, body: &Term, env: &[F], m: usize, values: Vec<F>) -> Result<F, ExtractError> {
        let r = values.len();
        let mut inner: Vec<F> = env.iter().map(|f| self.before(f, m, r)).collect();
        inner.extend((0..r).map(|j| self.proj(m + r, m + j)));
        let b = self.compile(body, &inner, m + r)?;
        let mut args: Vec<F> = (0..m).map(|i| self.proj(m, i)).collect();
        args.extend(values);
        Ok(self.comp(&b, args))
    }

    fn compile(&self, t: &Term, env: &[F], m: usize) -> Result<F, ExtractError> {
        if let Some(n) = t.as_numeral() {
            return Ok(self.constant(m, n));
        }
        let h = &self.h;
        Ok(match t {
            Term::Var(i) => match env.len().checked_sub(i + 1) {
                Some(j) => env[j].clone(),
                None => return Err(ExtractError::NotFirstOrder(t.clone())),
            },
            Term::Suc(_) => {
                let mut sucs = 0u64;
                let mut cur = t;
                while let Term::Suc(inner) = cur {
                    sucs += 1;
                    cur = inner;
                }
                let base = self.compile(cur, env, m)?;
                if sucs <= 4 {
                    (0..sucs).fold(base, |f, _| self.comp(&h.succ, vec![f]))
                } else {
                    self.comp(&h.add, vec![self.constant(m, sucs), base])
                }
            }
            Term::Star | Term::Refl(_) | Term::ExFalso { .. } => self.constant(m, 0),
            Term::Pair(a, b) => self.comp(&h.pair, vec![self.compile(a, env, m)?, self.compile(b, env, m)?]),
            Term::Fst(p) => self.comp(&h.fst, vec![self.compile(p, env, m)?]),
            Term::Snd(p) => self.comp(&h.snd, vec![self.compile(p, env, m)?]),
            Term::Inl(a) => self.comp(&h.double, vec![self.compile(a, env, m)?]),
            Term::Inr(b) => self.comp(&h.double_succ, vec![self.compile(b, env, m)?]),
            Term::UnitInd { base, .. } | Term::EqInd { base, .. } => self.compile(base, env, m)?,
            Term::SumInd { lcase, rcase, scrut, .. } => {
                let code = self.compile(scrut, env, m)?;
                let payload = self.comp(&h.half, vec![code.clone()]);
                let l = self.bind(lcase, env, m, vec![payload.clone()])?;
                let r = self.bind(rcase, env, m, vec![payload])?;
                self.comp(&h.select, vec![self.comp(&h.parity, vec![code]), l, r])
            }
            Term::NatInd { motive, base, step, scrut } => {
                let g = self.compile(base, env, m)?;
                let mut step_env: Vec<F> = env.iter().map(|f| self.behind(f, m, 2)).collect();
                step_env.push(self.proj(m + 2, 0));
                step_env.push(self.proj(m + 2, 1));
                let s = self.compile(step, &step_env, m + 2)?;
                let n = self.compile(scrut, env, m)?;
                let params = (0..m).map(|i| self.proj(m, i));
                if !(self.total_space && motive.mentions(0)) {
                    let rec = self.mk(PRFun::PrimRec(g, s));
                    return Ok(self.comp(&rec, std::iter::once(n).chain(params).collect()));
                }
                // Recurse into the total space: the state is pair(i, acc).
                let g = self.comp(&h.pair, vec![self.constant(m, 0), g]);
                let state = self.proj(m + 2, 1);
                let i = self.comp(&h.fst, vec![state.clone()]);
                let acc = self.comp(&h.snd, vec![state]);
                let mut args = vec![i.clone(), acc];
                args.extend((2..m + 2).map(|j| self.proj(m + 2, j)));
                let next = self.comp(&h.pair, vec![self.comp(&h.succ, vec![i]), self.comp(&s, args)]);
                let rec = self.mk(PRFun::PrimRec(g, next));
                self.comp(&h.snd, vec![self.comp(&rec, std::iter::once(n).chain(params).collect())])
            }
            _ => return Err(ExtractError::NotFirstOrder(t.clone())),
        })
    }
}
