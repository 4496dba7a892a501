//! Bidirectional type checking. Π-formation over `U0` data lands in `U1`, and
//! every eliminator demands a motive in `U0`.

mod error;
pub mod generate;

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use prtt_core::level::DEFAULT_MAX_LEVEL;
use prtt_core::{collapse_lifts, shift, Constant, Context, Level, Term};
use prtt_nbe::{Closure, Env, Nbe, Value, DEFAULT_STEP_BUDGET};

use error::fail;
pub use error::{CheckError, Result, TypeError, TypeErrorKind};
use TypeErrorKind::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Index of the top universe.
    pub max_level: Level,
    /// Reject eliminator motives above `U0`. Only mutation tests turn this off.
    pub motive_gate: bool,
    pub step_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_level: DEFAULT_MAX_LEVEL, motive_gate: true, step_budget: DEFAULT_STEP_BUDGET }
    }
}

/// A judgement `t : ty` where `ty : U_level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedTerm {
    pub term: Term,
    pub ty: Term,
    pub level: Level,
}

/// Local context: evaluation environment plus variable types by level.
#[derive(Clone, Default)]
struct Cx {
    env: Env,
    types: Vec<Value>,
}

impl Cx {
    fn depth(&self) -> usize {
        self.types.len()
    }

    fn bind(&self, ty: Value) -> (Cx, Value) {
        let x = Value::var(self.depth(), ty.clone());
        let mut types = self.types.clone();
        types.push(ty);
        (Cx { env: self.env.push(x.clone()), types }, x)
    }
}

pub struct Checker {
    cfg: Config,
    nbe: Nbe,
    consts: RefCell<HashMap<*const Constant, (Rc<Constant>, Value)>>,
}

impl Default for Checker {
    fn default() -> Self {
        Checker::new(Config::default())
    }
}

impl Checker {
    pub fn new(cfg: Config) -> Self {
        Checker { cfg, nbe: Nbe::new(cfg.step_budget), consts: RefCell::new(HashMap::new()) }
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn nbe(&self) -> &Nbe {
        &self.nbe
    }

    fn cx_of(&self, ctx: &Context) -> Result<Cx> {
        let mut cx = Cx::default();
        for b in &ctx.bindings {
            let l = self.type_level(&cx, &b.ty)?;
            if l > b.level {
                return fail(Mismatch, format!("context entry lives in U{l}, recorded at U{}", b.level));
            }
            let ty = self.nbe.eval(&cx.env, &b.ty)?;
            cx = cx.bind(ty).0;
        }
        Ok(cx)
    }

    fn typed(&self, cx: &Cx, t: &Term, ty: &Value) -> Result<TypedTerm> {
        Ok(TypedTerm {
            term: t.clone(),
            ty: self.nbe.quote_ty(cx.depth(), ty)?,
            level: self.value_level(cx.depth(), ty)?,
        })
    }

    /// Synthesize the type of `t` and the level it lives at.
    pub fn infer(&self, ctx: &Context, t: &Term) -> Result<TypedTerm> {
        let cx = self.cx_of(ctx)?;
        let ty = self.infer_in(&cx, t)?;
        self.typed(&cx, t, &ty)
    }

    /// Check `t` against `ty`, which must itself be a type.
    pub fn check(&self, ctx: &Context, t: &Term, ty: &Term) -> Result<TypedTerm> {
        let cx = self.cx_of(ctx)?;
        self.sort_target(&cx, ty)?;
        let tv = self.nbe.eval(&cx.env, ty)?;
        self.check_in(&cx, t, &tv)?;
        self.typed(&cx, t, &tv)
    }

    /// Accept `motive` (a type in `ctx`) only if it lives in `U0`.
    pub fn check_elim_motive(&self, ctx: &Context, motive: &Term) -> Result<()> {
        let cx = self.cx_of(ctx)?;
        self.motive_in(&cx, motive)
    }

    /// Judgmental equality of `a` and `b` at `ty`.
    pub fn conv(&self, ctx: &Context, a: &Term, b: &Term, ty: &Term) -> Result<bool> {
        let cx = self.cx_of(ctx)?;
        let (av, bv, tv) = (self.eval(&cx, a)?, self.eval(&cx, b)?, self.eval(&cx, ty)?);
        Ok(self.nbe.conv(cx.depth(), &av, &bv, &tv)?)
    }

    /// Type-check a top-level definition (once) and return its type.
    pub fn check_constant(&self, c: &Rc<Constant>) -> Result<Term> {
        let ty = self.const_type(c)?;
        Ok(self.nbe.quote_ty(0, &ty)?)
    }

    fn const_type(&self, c: &Rc<Constant>) -> Result<Value> {
        let key = Rc::as_ptr(c);
        if let Some((_, ty)) = self.consts.borrow().get(&key) {
            return Ok(ty.clone());
        }
        let cx = Cx::default();
        let ty = match &c.ty {
            Some(t) => {
                self.sort_target(&cx, t)?;
                let tv = self.eval(&cx, t)?;
                self.check_in(&cx, &c.body, &tv)?;
                tv
            }
            None => self.infer_in(&cx, &c.body)?,
        };
        self.consts.borrow_mut().insert(key, (c.clone(), ty.clone()));
        Ok(ty)
    }

    fn eval(&self, cx: &Cx, t: &Term) -> Result<Value> {
        Ok(self.nbe.eval(&cx.env, t)?)
    }

    fn show(&self, cx: &Cx, ty: &Value) -> Term {
        self.nbe.quote_ty(cx.depth(), ty).unwrap_or(Term::Var(usize::MAX))
    }

    fn mismatch<T>(&self, cx: &Cx, expected: &Value, actual: &Value, what: &str) -> Result<T> {
        let e = self.show(cx, expected);
        let a = self.show(cx, actual);
        Err(TypeError::new(Mismatch, format!("type mismatch in {what}")).with_terms(e, a).into())
    }

    /// The universe index a type value inhabits.
    pub fn value_level(&self, depth: usize, v: &Value) -> Result<Level> {
        Ok(match v {
            Value::Nat | Value::Unit | Value::Empty => Level::ZERO,
            Value::Univ(l) => l.succ().unwrap_or(*l),
            Value::Pi(a, b) => {
                let x = Value::var(depth, (**a).clone());
                let lb = self.value_level(depth + 1, &self.nbe.inst(b, x)?)?;
                self.value_level(depth, a)?.max(lb).pi()
            }
            Value::Sigma(a, b) => {
                let x = Value::var(depth, (**a).clone());
                let lb = self.value_level(depth + 1, &self.nbe.inst(b, x)?)?;
                self.value_level(depth, a)?.max(lb)
            }
            Value::Sum(a, b) => self.value_level(depth, a)?.max(self.value_level(depth, b)?),
            Value::Eq(a, _, _) => self.value_level(depth, a)?,
            Value::Neutral(ty, _) => match &**ty {
                Value::Univ(l) => *l,
                _ => return fail(Mismatch, "neutral is not a type"),
            },
            _ => return fail(Mismatch, format!("{v:?} is not a type")),
        })
    }

    fn type_level(&self, cx: &Cx, t: &Term) -> Result<Level> {
        match self.infer_in(cx, t)? {
            Value::Univ(l) => Ok(l),
            other => {
                let shown = self.show(cx, &other);
                fail(Mismatch, format!("expected a type, found a term of type {shown}"))
            }
        }
    }

    /// Validate a type used as a checking target. The top universe is
    /// accepted even though nothing classifies it.
    fn sort_target(&self, cx: &Cx, ty: &Term) -> Result<()> {
        match collapse_lifts(ty) {
            Term::Univ(l) if l <= self.cfg.max_level => Ok(()),
            _ => self.type_level(cx, ty).map(drop),
        }
    }

    fn motive_in(&self, cx: &Cx, motive: &Term) -> Result<()> {
        let l = self.type_level(cx, &collapse_lifts(motive))?;
        if self.cfg.motive_gate && l > Level::ZERO {
            return fail(MotiveNotInU0, format!("eliminator motive lives in U{l}; only U0 families are allowed"));
        }
        Ok(())
    }

    fn const_family(&self, cx: &Cx, ty: &Value) -> Result<Closure> {
        let body = shift(&self.nbe.quote_ty(cx.depth(), ty)?, 0, 1);
        Ok(Closure { env: cx.env.clone(), body: Rc::new(body) })
    }

    fn infer_in(&self, cx: &Cx, t: &Term) -> Result<Value> {
        let univ0 = Value::Univ(Level::ZERO);
        match t {
            Term::Var(i) => match cx.depth().checked_sub(i + 1) {
                Some(l) => Ok(cx.types[l].clone()),
                None => fail(UnboundVariable, format!("index {i} is not bound")),
            },
            Term::Univ(l) => match l.succ() {
                Some(s) if s <= self.cfg.max_level => Ok(Value::Univ(s)),
                _ => fail(LevelOverflow, format!("U{l} has no universe above it (top is U{})", self.cfg.max_level)),
            },
            Term::Nat | Term::Unit | Term::Empty => Ok(univ0),
            Term::Zero => Ok(Value::Nat),
            Term::Star => Ok(Value::Unit),
            Term::Suc(_) => {
                let mut cur = t;
                while let Term::Suc(p) = cur {
                    cur = p;
                }
                self.check_in(cx, cur, &Value::Nat)?;
                Ok(Value::Nat)
            }
            Term::Pi(a, b) | Term::Sigma(a, b) => {
                let la = self.type_level(cx, a)?;
                let (inner, _) = cx.bind(self.eval(cx, a)?);
                let lb = self.type_level(&inner, b)?;
                let l = la.max(lb);
                Ok(Value::Univ(if matches!(t, Term::Pi(..)) { l.pi() } else { l }))
            }
            Term::Sum(a, b) => Ok(Value::Univ(self.type_level(cx, a)?.max(self.type_level(cx, b)?))),
            Term::Lift(from, to, a) => {
                if from > to || *to > self.cfg.max_level {
                    return fail(LevelOverflow, format!("lift from U{from} to U{to} is out of range"));
                }
                let la = self.type_level(cx, a)?;
                if la > *from {
                    return fail(Mismatch, format!("lift expects a type in U{from}, got one in U{la}"));
                }
                Ok(Value::Univ(*to))
            }
            Term::Eq(a, x, y) => {
                let la = self.type_level(cx, a)?;
                let av = self.eval(cx, a)?;
                self.check_in(cx, x, &av)?;
                self.check_in(cx, y, &av)?;
                Ok(Value::Univ(la))
            }
            Term::Lam(a, b) => {
                self.type_level(cx, a)?;
                let av = self.eval(cx, a)?;
                let (inner, _) = cx.bind(av.clone());
                let bt = self.infer_in(&inner, b)?;
                let body = self.nbe.quote_ty(inner.depth(), &bt)?;
                Ok(Value::Pi(Rc::new(av), Closure { env: cx.env.clone(), body: Rc::new(body) }))
            }
            Term::App(f, a) => match self.infer_in(cx, f)? {
                Value::Pi(dom, cod) => {
                    self.check_in(cx, a, &dom)?;
                    Ok(self.nbe.inst(&cod, self.eval(cx, a)?)?)
                }
                other => {
                    let shown = self.show(cx, &other);
                    fail(NotAFunction, format!("applied a term of non-function type {shown}"))
                }
            },
            Term::Pair(a, b) => {
                let at = self.infer_in(cx, a)?;
                let bt = self.infer_in(cx, b)?;
                Ok(Value::Sigma(Rc::new(at), self.const_family(cx, &bt)?))
            }
            Term::Fst(p) | Term::Snd(p) => match self.infer_in(cx, p)? {
                Value::Sigma(a, b) => {
                    if matches!(t, Term::Fst(_)) {
                        Ok((*a).clone())
                    } else {
                        let first = self.nbe.fst(&self.eval(cx, p)?)?;
                        Ok(self.nbe.inst(&b, first)?)
                    }
                }
                other => {
                    let shown = self.show(cx, &other);
                    fail(NotAPair, format!("projection from non-pair type {shown}"))
                }
            },
            Term::Refl(a) => {
                let at = self.infer_in(cx, a)?;
                let v = Rc::new(self.eval(cx, a)?);
                Ok(Value::Eq(Rc::new(at), v.clone(), v))
            }
            Term::EqInd { motive, base, lhs, rhs, proof } => {
                let Value::Eq(a, x, y) = self.infer_in(cx, proof)? else {
                    return fail(Mismatch, "J expects a proof of an identity type");
                };
                self.check_in(cx, lhs, &a)?;
                self.check_in(cx, rhs, &a)?;
                let (lv, rv) = (self.eval(cx, lhs)?, self.eval(cx, rhs)?);
                if !self.nbe.conv(cx.depth(), &lv, &x, &a)? || !self.nbe.conv(cx.depth(), &rv, &y, &a)? {
                    let e = self.nbe.quote_ty(cx.depth(), &Value::Eq(a.clone(), Rc::new(lv), Rc::new(rv)))?;
                    let got = self.nbe.quote_ty(cx.depth(), &Value::Eq(a.clone(), x, y))?;
                    return Err(TypeError::new(Mismatch, "J endpoints disagree with the proof")
                        .with_terms(e, got)
                        .into());
                }
                let (c1, b) = cx.bind((*a).clone());
                let (c2, _) = c1.bind(Value::Eq(a.clone(), Rc::new(lv.clone()), Rc::new(b)));
                self.motive_in(&c2, motive)?;
                let m = Closure { env: cx.env.clone(), body: motive.clone() };
                let base_ty = self.nbe.inst2(&m, lv.clone(), Value::Refl(Rc::new(lv)))?;
                self.check_in(cx, base, &base_ty)?;
                Ok(self.nbe.inst2(&m, rv, self.eval(cx, proof)?)?)
            }
            Term::ExFalso { motive, scrut } => {
                self.check_in(cx, scrut, &Value::Empty)?;
                self.motive_in(&cx.bind(Value::Empty).0, motive)?;
                let m = Closure { env: cx.env.clone(), body: motive.clone() };
                Ok(self.nbe.inst(&m, self.eval(cx, scrut)?)?)
            }
            Term::UnitInd { motive, base, scrut } => {
                self.motive_in(&cx.bind(Value::Unit).0, motive)?;
                let m = Closure { env: cx.env.clone(), body: motive.clone() };
                self.check_in(cx, base, &self.nbe.inst(&m, Value::Star)?)?;
                self.check_in(cx, scrut, &Value::Unit)?;
                Ok(self.nbe.inst(&m, self.eval(cx, scrut)?)?)
            }
            Term::NatInd { motive, base, step, scrut } => {
                self.motive_in(&cx.bind(Value::Nat).0, motive)?;
                let m = Closure { env: cx.env.clone(), body: motive.clone() };
                self.check_in(cx, base, &self.nbe.inst(&m, Value::zero())?)?;
                let (c1, k) = cx.bind(Value::Nat);
                let (c2, _) = c1.bind(self.nbe.inst(&m, k.clone())?);
                self.check_in(&c2, step, &self.nbe.inst(&m, k.succ())?)?;
                self.check_in(cx, scrut, &Value::Nat)?;
                Ok(self.nbe.inst(&m, self.eval(cx, scrut)?)?)
            }
            Term::SumInd { motive, lcase, rcase, scrut } => {
                let st = self.infer_in(cx, scrut)?;
                let Value::Sum(l, r) = &st else {
                    let shown = self.show(cx, &st);
                    return fail(Mismatch, format!("case expects a sum, found {shown}"));
                };
                self.motive_in(&cx.bind(st.clone()).0, motive)?;
                let m = Closure { env: cx.env.clone(), body: motive.clone() };
                let (cl, a) = cx.bind((**l).clone());
                self.check_in(&cl, lcase, &self.nbe.inst(&m, Value::Inl(Rc::new(a)))?)?;
                let (cr, b) = cx.bind((**r).clone());
                self.check_in(&cr, rcase, &self.nbe.inst(&m, Value::Inr(Rc::new(b)))?)?;
                Ok(self.nbe.inst(&m, self.eval(cx, scrut)?)?)
            }
            Term::Inl(_) | Term::Inr(_) => {
                fail(Mismatch, "cannot infer the type of an injection; ascribe it with (e : A + B)")
            }
            Term::Const(c) => self.const_type(c).map_err(|e| match e {
                CheckError::Type(mut te) => {
                    te.message = format!("in definition {}: {}", c.name, te.message);
                    CheckError::Type(te)
                }
                other => other,
            }),
        }
    }

    fn check_in(&self, cx: &Cx, t: &Term, ty: &Value) -> Result<()> {
        match (t, ty) {
            (_, Value::Univ(target)) => {
                let got = self.type_level(cx, t)?;
                if got <= *target {
                    return Ok(());
                }
                let kind = if *target == Level::ZERO && head_is_pi(t) { PiNotInU0 } else { Mismatch };
                Err(TypeError::new(kind, format!("type lives in U{got}, expected U{target}"))
                    .with_terms(Term::Univ(*target), Term::Univ(got))
                    .into())
            }
            (Term::Lam(a, b), Value::Pi(dom, cod)) => {
                self.type_level(cx, a)?;
                let av = self.eval(cx, a)?;
                if !self.nbe.conv_ty(cx.depth(), &av, dom)? {
                    return self.mismatch(cx, dom, &av, "lambda annotation");
                }
                let (inner, x) = cx.bind((**dom).clone());
                self.check_in(&inner, b, &self.nbe.inst(cod, x)?)
            }
            (Term::Pair(a, b), Value::Sigma(at, bt)) => {
                self.check_in(cx, a, at)?;
                self.check_in(cx, b, &self.nbe.inst(bt, self.eval(cx, a)?)?)
            }
            (Term::Inl(a), Value::Sum(l, _)) => self.check_in(cx, a, l),
            (Term::Inr(b), Value::Sum(_, r)) => self.check_in(cx, b, r),
            (Term::Refl(a), Value::Eq(at, x, y)) => {
                self.check_in(cx, a, at)?;
                let v = self.eval(cx, a)?;
                for side in [x, y] {
                    if !self.nbe.conv(cx.depth(), &v, side, at)? {
                        let e = self.nbe.quote(cx.depth(), side, at)?;
                        let got = self.nbe.quote(cx.depth(), &v, at)?;
                        return Err(TypeError::new(Mismatch, "refl endpoints are not convertible")
                            .with_terms(e, got)
                            .into());
                    }
                }
                Ok(())
            }
            (
                Term::Lam(..)
                | Term::Pair(..)
                | Term::Inl(_)
                | Term::Inr(_)
                | Term::Refl(_)
                | Term::Star
                | Term::Zero
                | Term::Suc(_),
                Value::Empty,
            ) => fail(EmptyImpossible, "no constructor inhabits Empty"),
            (Term::Lam(..), _) => {
                let shown = self.show(cx, ty);
                fail(Mismatch, format!("lambda checked against non-function type {shown}"))
            }
            (Term::Pair(..), _) => {
                let shown = self.show(cx, ty);
                fail(Mismatch, format!("pair checked against non-Σ type {shown}"))
            }
            (Term::Inl(_) | Term::Inr(_), _) => {
                let shown = self.show(cx, ty);
                fail(Mismatch, format!("injection checked against non-sum type {shown}"))
            }
            _ => {
                let got = self.infer_in(cx, t)?;
                if self.nbe.conv_ty(cx.depth(), &got, ty)? {
                    Ok(())
                } else {
                    self.mismatch(cx, ty, &got, "checked term")
                }
            }
        }
    }
}

fn head_is_pi(t: &Term) -> bool {
    match t {
        Term::Pi(..) => true,
        Term::Const(c) => head_is_pi(&c.body),
        _ => false,
    }
}

#[cfg(test)]
mod tests;
