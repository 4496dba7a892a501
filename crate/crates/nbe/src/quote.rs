use std::rc::Rc;

use prtt_core::{Natural, Term};

use crate::value::{Neutral, Value};
use crate::{internal, Nbe, NbeError, Result};

fn numeral(n: &Natural) -> Result<Term> {
    match n.to_u64() {
        Some(k) => Ok(Term::numeral(k)),
        None => Err(NbeError::Internal(format!("numeral {n} too large to quote"))),
    }
}

fn sucs(k: &Natural, t: Term) -> Result<Term> {
    let Some(k) = k.to_u64() else {
        return internal("successor chain too long to quote");
    };
    Ok((0..k).fold(t, |acc, _| Term::suc(acc)))
}

impl Nbe {
    /// Read back `v : ty` at binder depth `depth`, η-expanding at Π and Σ.
    pub fn quote(&self, depth: usize, v: &Value, ty: &Value) -> Result<Term> {
        match ty {
            Value::Pi(dom, cod) => {
                let x = Value::var(depth, (**dom).clone());
                let body_ty = self.inst(cod, x.clone())?;
                let body = self.apply(v, x)?;
                Ok(Term::lam(self.quote_ty(depth, dom)?, self.quote(depth + 1, &body, &body_ty)?))
            }
            Value::Sigma(a, b) => {
                let x = self.fst(v)?;
                let y = self.snd(v)?;
                let bt = self.inst(b, x.clone())?;
                Ok(Term::pair(self.quote(depth, &x, a)?, self.quote(depth, &y, &bt)?))
            }
            Value::Univ(_) => self.quote_ty(depth, v),
            _ => match (v, ty) {
                (Value::Num(n), _) => numeral(n),
                (Value::Suc(k, x), _) => sucs(k, self.quote_value_neutral(depth, x)?),
                (Value::Star, _) => Ok(Term::Star),
                (Value::Refl(a), Value::Eq(t, _, _)) => Ok(Term::refl(self.quote(depth, a, t)?)),
                (Value::Inl(a), Value::Sum(l, _)) => Ok(Term::inl(self.quote(depth, a, l)?)),
                (Value::Inr(b), Value::Sum(_, r)) => Ok(Term::inr(self.quote(depth, b, r)?)),
                (Value::Neutral(_, n), _) => self.quote_neutral(depth, n),
                _ => internal(format!("cannot quote {v:?} at {ty:?}")),
            },
        }
    }

    /// Read back a type.
    pub fn quote_ty(&self, depth: usize, v: &Value) -> Result<Term> {
        match v {
            Value::Nat => Ok(Term::Nat),
            Value::Unit => Ok(Term::Unit),
            Value::Empty => Ok(Term::Empty),
            Value::Univ(l) => Ok(Term::Univ(*l)),
            Value::Pi(a, b) => {
                let x = Value::var(depth, (**a).clone());
                Ok(Term::pi(self.quote_ty(depth, a)?, self.quote_ty(depth + 1, &self.inst(b, x)?)?))
            }
            Value::Sigma(a, b) => {
                let x = Value::var(depth, (**a).clone());
                Ok(Term::sigma(self.quote_ty(depth, a)?, self.quote_ty(depth + 1, &self.inst(b, x)?)?))
            }
            Value::Sum(a, b) => Ok(Term::sum(self.quote_ty(depth, a)?, self.quote_ty(depth, b)?)),
            Value::Eq(a, x, y) => {
                Ok(Term::eq(self.quote_ty(depth, a)?, self.quote(depth, x, a)?, self.quote(depth, y, a)?))
            }
            Value::Neutral(_, n) => self.quote_neutral(depth, n),
            _ => internal(format!("{v:?} is not a type")),
        }
    }

    fn quote_value_neutral(&self, depth: usize, v: &Value) -> Result<Term> {
        match v {
            Value::Neutral(_, n) => self.quote_neutral(depth, n),
            _ => internal("expected a neutral"),
        }
    }

    pub fn quote_neutral(&self, depth: usize, n: &Neutral) -> Result<Term> {
        Ok(match n {
            Neutral::Var(l) => match depth.checked_sub(l + 1) {
                Some(i) => Term::Var(i),
                None => return internal(format!("variable level {l} escapes depth {depth}")),
            },
            Neutral::App(f, a) => {
                let dom = match f {
                    Value::Neutral(ty, _) => match &**ty {
                        Value::Pi(dom, _) => dom.clone(),
                        _ => return internal("neutral head is not a function"),
                    },
                    _ => return internal("application head is not neutral"),
                };
                Term::app(self.quote_value_neutral(depth, f)?, self.quote(depth, a, &dom)?)
            }
            Neutral::Fst(p) => Term::fst(self.quote_value_neutral(depth, p)?),
            Neutral::Snd(p) => Term::snd(self.quote_value_neutral(depth, p)?),
            Neutral::NatInd { motive, base, step, scrut } => {
                let x = Value::var(depth, Value::Nat);
                let m = self.quote_ty(depth + 1, &self.inst(motive, x.clone())?)?;
                let b = self.quote(depth, base, &self.inst(motive, Value::zero())?)?;
                let acc_ty = self.inst(motive, x.clone())?;
                let acc = Value::var(depth + 1, acc_ty);
                let s_ty = self.inst(motive, x.clone().succ())?;
                let s = self.quote(depth + 2, &self.inst2(step, x, acc)?, &s_ty)?;
                Term::nat_ind(m, b, s, self.quote(depth, scrut, &Value::Nat)?)
            }
            Neutral::SumInd { motive, lcase, rcase, scrut } => {
                let Value::Neutral(sty, _) = scrut else {
                    return internal("case scrutinee is not neutral");
                };
                let Value::Sum(l, r) = &**sty else {
                    return internal("case scrutinee is not a sum");
                };
                let x = Value::var(depth, (**sty).clone());
                let m = self.quote_ty(depth + 1, &self.inst(motive, x)?)?;
                let a = Value::var(depth, (**l).clone());
                let lt = self.inst(motive, Value::Inl(Rc::new(a.clone())))?;
                let lc = self.quote(depth + 1, &self.inst(lcase, a)?, &lt)?;
                let b = Value::var(depth, (**r).clone());
                let rt = self.inst(motive, Value::Inr(Rc::new(b.clone())))?;
                let rc = self.quote(depth + 1, &self.inst(rcase, b)?, &rt)?;
                Term::sum_ind(m, lc, rc, self.quote_value_neutral(depth, scrut)?)
            }
            Neutral::UnitInd { motive, base, scrut } => {
                let x = Value::var(depth, Value::Unit);
                let m = self.quote_ty(depth + 1, &self.inst(motive, x)?)?;
                let b = self.quote(depth, base, &self.inst(motive, Value::Star)?)?;
                Term::unit_ind(m, b, self.quote_value_neutral(depth, scrut)?)
            }
            Neutral::EqInd { motive, base, lhs, rhs, proof } => {
                let Value::Neutral(pty, _) = proof else {
                    return internal("J proof is not neutral");
                };
                let Value::Eq(a, _, _) = &**pty else {
                    return internal("J proof is not an identity");
                };
                let b = Value::var(depth, (**a).clone());
                let p = Value::var(depth + 1, Value::Eq(a.clone(), Rc::new(lhs.clone()), Rc::new(b.clone())));
                let m = self.quote_ty(depth + 2, &self.inst2(motive, b, p)?)?;
                let base_ty = self.inst2(motive, lhs.clone(), Value::Refl(Rc::new(lhs.clone())))?;
                Term::eq_ind(
                    m,
                    self.quote(depth, base, &base_ty)?,
                    self.quote(depth, lhs, a)?,
                    self.quote(depth, rhs, a)?,
                    self.quote_value_neutral(depth, proof)?,
                )
            }
            Neutral::ExFalso { motive, scrut } => {
                let x = Value::var(depth, Value::Empty);
                let m = self.quote_ty(depth + 1, &self.inst(motive, x)?)?;
                Term::ex_falso(m, self.quote_value_neutral(depth, scrut)?)
            }
        })
    }

    /// Judgmental equality of `a` and `b` at `ty`.
    pub fn conv(&self, depth: usize, a: &Value, b: &Value, ty: &Value) -> Result<bool> {
        Ok(self.quote(depth, a, ty)? == self.quote(depth, b, ty)?)
    }

    /// Judgmental equality of two types.
    pub fn conv_ty(&self, depth: usize, a: &Value, b: &Value) -> Result<bool> {
        Ok(self.quote_ty(depth, a)? == self.quote_ty(depth, b)?)
    }
}
