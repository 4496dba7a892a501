//! A call-by-value small-step reducer for closed terms, written against the
//! term syntax alone so it shares no evaluation code with the normalizer.

use std::rc::Rc;

use prtt_core::Term;

#[derive(Debug)]
#[allow(dead_code)]
pub enum Stuck {
    Budget,
    NotAValue(Term),
}

/// Replace variable `k` by the closed term `v`, lowering the variables above it.
fn subst_closed(t: &Term, k: usize, v: &Term) -> Term {
    match t {
        Term::Var(i) if *i == k => v.clone(),
        Term::Var(i) if *i > k => Term::Var(i - 1),
        Term::Var(_) => t.clone(),
        _ => t.map_children(|binders, c| Rc::new(subst_closed(c, k + binders, v))),
    }
}

pub fn is_value(t: &Term) -> bool {
    match t {
        Term::Lam(..) | Term::Zero | Term::Star | Term::Refl(_) => true,
        Term::Suc(a) | Term::Inl(a) | Term::Inr(a) => is_value(a),
        Term::Pair(a, b) => is_value(a) && is_value(b),
        Term::Nat
        | Term::Unit
        | Term::Empty
        | Term::Univ(_)
        | Term::Pi(..)
        | Term::Sigma(..)
        | Term::Sum(..)
        | Term::Eq(..)
        | Term::Lift(..) => true,
        _ => false,
    }
}

pub struct Reducer {
    pub steps: u64,
    budget: u64,
}

impl Reducer {
    pub fn new(budget: u64) -> Self {
        Reducer { steps: 0, budget }
    }

    /// Reduce to a value.
    pub fn eval(&mut self, t: &Term) -> Result<Term, Stuck> {
        let mut t = t.clone();
        while !is_value(&t) {
            if self.steps >= self.budget {
                return Err(Stuck::Budget);
            }
            self.steps += 1;
            t = match step(&t) {
                Some(next) => next,
                None => return Err(Stuck::NotAValue(t)),
            };
        }
        Ok(t)
    }
}

fn rc(t: Term) -> Rc<Term> {
    Rc::new(t)
}

/// One leftmost call-by-value step, or `None` when `t` is a value or stuck.
fn step(t: &Term) -> Option<Term> {
    use Term::*;
    Some(match t {
        Const(c) => c.body.clone(),
        App(f, a) if !is_value(f) => App(rc(step(f)?), a.clone()),
        App(f, a) if !is_value(a) => App(f.clone(), rc(step(a)?)),
        App(f, a) => match &**f {
            Lam(_, body) => subst_closed(body, 0, a),
            _ => return None,
        },
        Pair(a, b) if !is_value(a) => Pair(rc(step(a)?), b.clone()),
        Pair(a, b) => Pair(a.clone(), rc(step(b)?)),
        Suc(a) => Suc(rc(step(a)?)),
        Inl(a) => Inl(rc(step(a)?)),
        Inr(a) => Inr(rc(step(a)?)),
        Fst(p) | Snd(p) if !is_value(p) => {
            let p = rc(step(p)?);
            if matches!(t, Fst(_)) {
                Fst(p)
            } else {
                Snd(p)
            }
        }
        Fst(p) => match &**p {
            Pair(a, _) => (**a).clone(),
            _ => return None,
        },
        Snd(p) => match &**p {
            Pair(_, b) => (**b).clone(),
            _ => return None,
        },
        NatInd { motive, base, step: s, scrut } if !is_value(scrut) => {
            NatInd { motive: motive.clone(), base: base.clone(), step: s.clone(), scrut: rc(step(scrut)?) }
        }
        NatInd { motive, base, step: s, scrut } => match &**scrut {
            Zero => (**base).clone(),
            // The step binds the predecessor and then the recursive result;
            // both go through ordinary β so the result is computed first.
            Suc(n) => {
                let rec = NatInd { motive: motive.clone(), base: base.clone(), step: s.clone(), scrut: n.clone() };
                let f = Lam(rc(Nat), rc(Lam(rc(Nat), s.clone())));
                App(rc(App(rc(f), n.clone())), rc(rec))
            }
            _ => return None,
        },
        SumInd { motive, lcase, rcase, scrut } if !is_value(scrut) => {
            SumInd { motive: motive.clone(), lcase: lcase.clone(), rcase: rcase.clone(), scrut: rc(step(scrut)?) }
        }
        SumInd { lcase, rcase, scrut, .. } => match &**scrut {
            Inl(a) => subst_closed(lcase, 0, a),
            Inr(b) => subst_closed(rcase, 0, b),
            _ => return None,
        },
        UnitInd { motive, base, scrut } if !is_value(scrut) => {
            UnitInd { motive: motive.clone(), base: base.clone(), scrut: rc(step(scrut)?) }
        }
        UnitInd { base, scrut, .. } => match &**scrut {
            Star => (**base).clone(),
            _ => return None,
        },
        EqInd { motive, base, lhs, rhs, proof } if !is_value(proof) => EqInd {
            motive: motive.clone(),
            base: base.clone(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            proof: rc(step(proof)?),
        },
        EqInd { base, proof, .. } => match &**proof {
            Refl(_) => (**base).clone(),
            _ => return None,
        },
        ExFalso { motive, scrut } => ExFalso { motive: motive.clone(), scrut: rc(step(scrut)?) },
        _ => return None,
    })
}
