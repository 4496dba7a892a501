use std::rc::Rc;

use prtt_core::{Natural, Term};

use crate::value::{Closure, Env, Neutral, Value};
use crate::{internal, Nbe, Result};

fn stuck(ty: Value, n: Neutral) -> Value {
    Value::Neutral(Rc::new(ty), Rc::new(n))
}

impl Nbe {
    pub fn eval(&self, env: &Env, t: &Term) -> Result<Value> {
        let clo = |body: &Rc<Term>| Closure { env: env.clone(), body: body.clone() };
        Ok(match t {
            Term::Var(i) => match env.get(*i) {
                Some(v) => v.clone(),
                None => return internal(format!("unbound index {i}")),
            },
            Term::Lam(_, b) => Value::Lam(clo(b)),
            Term::App(f, a) => {
                let f = self.eval(env, f)?;
                let a = self.eval(env, a)?;
                self.apply(&f, a)?
            }
            Term::Pi(a, b) => Value::Pi(Rc::new(self.eval(env, a)?), clo(b)),
            Term::Sigma(a, b) => Value::Sigma(Rc::new(self.eval(env, a)?), clo(b)),
            Term::Pair(a, b) => Value::Pair(Rc::new(self.eval(env, a)?), Rc::new(self.eval(env, b)?)),
            Term::Fst(p) => self.fst(&self.eval(env, p)?)?,
            Term::Snd(p) => self.snd(&self.eval(env, p)?)?,
            Term::Eq(a, x, y) => {
                Value::Eq(Rc::new(self.eval(env, a)?), Rc::new(self.eval(env, x)?), Rc::new(self.eval(env, y)?))
            }
            Term::Refl(a) => Value::Refl(Rc::new(self.eval(env, a)?)),
            Term::EqInd { motive, base, lhs, rhs, proof } => {
                let proof = self.eval(env, proof)?;
                let base = self.eval(env, base)?;
                self.eq_ind(clo(motive), base, self.eval(env, lhs)?, self.eval(env, rhs)?, proof)?
            }
            Term::Empty => Value::Empty,
            Term::ExFalso { motive, scrut } => {
                let scrut = self.eval(env, scrut)?;
                let motive = clo(motive);
                if !matches!(scrut, Value::Neutral(..)) {
                    return internal("exfalso on a non-neutral");
                }
                let ty = self.inst(&motive, scrut.clone())?;
                stuck(ty, Neutral::ExFalso { motive, scrut })
            }
            Term::Unit => Value::Unit,
            Term::Star => Value::Star,
            Term::UnitInd { motive, base, scrut } => {
                let scrut = self.eval(env, scrut)?;
                let base = self.eval(env, base)?;
                self.unit_ind(clo(motive), base, scrut)?
            }
            Term::Nat => Value::Nat,
            Term::Zero => Value::zero(),
            Term::Suc(_) => {
                let mut k = 0u64;
                let mut cur = t;
                while let Term::Suc(p) = cur {
                    k += 1;
                    cur = p;
                }
                Value::sucs(Natural::from(k), self.eval(env, cur)?)
            }
            Term::NatInd { motive, base, step, scrut } => {
                let scrut = self.eval(env, scrut)?;
                let base = self.eval(env, base)?;
                self.nat_ind(clo(motive), base, clo(step), scrut)?
            }
            Term::Sum(a, b) => Value::Sum(Rc::new(self.eval(env, a)?), Rc::new(self.eval(env, b)?)),
            Term::Inl(a) => Value::Inl(Rc::new(self.eval(env, a)?)),
            Term::Inr(a) => Value::Inr(Rc::new(self.eval(env, a)?)),
            Term::SumInd { motive, lcase, rcase, scrut } => {
                let scrut = self.eval(env, scrut)?;
                self.sum_ind(clo(motive), clo(lcase), clo(rcase), scrut)?
            }
            Term::Univ(l) => Value::Univ(*l),
            Term::Lift(_, _, a) => self.eval(env, a)?,
            Term::Const(c) => {
                let key = Rc::as_ptr(c);
                if let Some((_, v)) = self.consts.borrow().get(&key) {
                    return Ok(v.clone());
                }
                let v = self.eval(&Env::new(), &c.body)?;
                self.consts.borrow_mut().insert(key, (c.clone(), v.clone()));
                v
            }
        })
    }

    pub fn inst(&self, c: &Closure, v: Value) -> Result<Value> {
        self.eval(&c.env.push(v), &c.body)
    }

    pub fn inst2(&self, c: &Closure, v: Value, w: Value) -> Result<Value> {
        self.eval(&c.env.push(v).push(w), &c.body)
    }

    pub fn apply(&self, f: &Value, a: Value) -> Result<Value> {
        match f {
            Value::Lam(c) => self.inst(c, a),
            Value::Neutral(ty, _) => match &**ty {
                Value::Pi(_, cod) => {
                    let rty = self.inst(cod, a.clone())?;
                    Ok(stuck(rty, Neutral::App(f.clone(), a)))
                }
                _ => internal("application of a neutral without Π-type"),
            },
            _ => internal(format!("application of non-function {f:?}")),
        }
    }

    pub fn fst(&self, p: &Value) -> Result<Value> {
        match p {
            Value::Pair(a, _) => {
                self.spend(1)?;
                Ok((**a).clone())
            }
            Value::Neutral(ty, _) => match &**ty {
                Value::Sigma(a, _) => Ok(stuck((**a).clone(), Neutral::Fst(p.clone()))),
                _ => internal("projection from a neutral without Σ-type"),
            },
            _ => internal(format!("fst of non-pair {p:?}")),
        }
    }

    pub fn snd(&self, p: &Value) -> Result<Value> {
        match p {
            Value::Pair(_, b) => {
                self.spend(1)?;
                Ok((**b).clone())
            }
            Value::Neutral(ty, _) => match &**ty {
                Value::Sigma(_, cod) => {
                    let rty = self.inst(cod, self.fst(p)?)?;
                    Ok(stuck(rty, Neutral::Snd(p.clone())))
                }
                _ => internal("projection from a neutral without Σ-type"),
            },
            _ => internal(format!("snd of non-pair {p:?}")),
        }
    }

    pub fn nat_ind(&self, motive: Closure, base: Value, step: Closure, scrut: Value) -> Result<Value> {
        match scrut {
            Value::Num(n) => {
                if n.is_zero() {
                    self.spend(1)?;
                    return Ok(base);
                }
                // A step ignoring its accumulator only needs the last unfolding.
                if !step.body.mentions(0) {
                    self.spend(1)?;
                    return self.inst2(&step, Value::Num(n.pred().unwrap_or_default()), Value::Star);
                }
                let Some(count) = n.to_u64() else {
                    return Err(crate::NbeError::BudgetExceeded(self.budget));
                };
                let mut acc = base;
                for i in 0..count {
                    self.spend(1)?;
                    acc = self.inst2(&step, Value::Num(Natural::from(i)), acc)?;
                }
                Ok(acc)
            }
            Value::Suc(k, x) => {
                let x = (*x).clone();
                let mut acc = self.nat_ind(motive, base, step.clone(), x.clone())?;
                let Some(count) = k.to_u64() else {
                    return Err(crate::NbeError::BudgetExceeded(self.budget));
                };
                for j in 0..count {
                    self.spend(1)?;
                    acc = self.inst2(&step, Value::sucs(Natural::from(j), x.clone()), acc)?;
                }
                Ok(acc)
            }
            Value::Neutral(..) => {
                let ty = self.inst(&motive, scrut.clone())?;
                Ok(stuck(ty, Neutral::NatInd { motive, base, step, scrut }))
            }
            other => internal(format!("ind on non-natural {other:?}")),
        }
    }

    pub fn sum_ind(&self, motive: Closure, lcase: Closure, rcase: Closure, scrut: Value) -> Result<Value> {
        match scrut {
            Value::Inl(a) => {
                self.spend(1)?;
                self.inst(&lcase, (*a).clone())
            }
            Value::Inr(b) => {
                self.spend(1)?;
                self.inst(&rcase, (*b).clone())
            }
            Value::Neutral(..) => {
                let ty = self.inst(&motive, scrut.clone())?;
                Ok(stuck(ty, Neutral::SumInd { motive, lcase, rcase, scrut }))
            }
            other => internal(format!("case on non-injection {other:?}")),
        }
    }

    pub fn unit_ind(&self, motive: Closure, base: Value, scrut: Value) -> Result<Value> {
        match scrut {
            Value::Star => {
                self.spend(1)?;
                Ok(base)
            }
            Value::Neutral(..) => {
                let ty = self.inst(&motive, scrut.clone())?;
                Ok(stuck(ty, Neutral::UnitInd { motive, base, scrut }))
            }
            other => internal(format!("unitind on {other:?}")),
        }
    }

    pub fn eq_ind(&self, motive: Closure, base: Value, lhs: Value, rhs: Value, proof: Value) -> Result<Value> {
        match proof {
            Value::Refl(_) => {
                self.spend(1)?;
                Ok(base)
            }
            Value::Neutral(..) => {
                let ty = self.inst2(&motive, rhs.clone(), proof.clone())?;
                Ok(stuck(ty, Neutral::EqInd { motive, base, lhs, rhs, proof }))
            }
            other => internal(format!("J on {other:?}")),
        }
    }
}
