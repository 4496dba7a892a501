use std::collections::HashMap;

use prtt_core::Term;

use crate::{ill, PRFun, Result};

/// The curried term of type `Nat -> ... -> Nat` computing `f`. Recursion
/// becomes `ind` with the constant motive `Nat`.
pub fn to_prtt(f: &PRFun) -> Result<Term> {
    f.arity()?;
    Compiler::default().go(f)
}

#[derive(Default)]
struct Compiler {
    memo: HashMap<*const PRFun, Term>,
}

fn lams(k: usize, body: Term) -> Term {
    (0..k).fold(body, |b, _| Term::lam(Term::Nat, b))
}

/// The variables bound by `k` enclosing lambdas, outermost first.
fn vars(k: usize, offset: usize) -> impl Iterator<Item = Term> {
    (0..k).rev().map(move |i| Term::Var(i + offset))
}

impl Compiler {
    fn go(&mut self, f: &PRFun) -> Result<Term> {
        let key = f as *const PRFun;
        if let Some(t) = self.memo.get(&key) {
            return Ok(t.clone());
        }
        let t = match f {
            PRFun::Const(k, v) => match v.to_u64() {
                Some(v) => lams(*k, Term::numeral(v)),
                None => return ill(format!("constant {v} is too large to write as a numeral")),
            },
            PRFun::Succ => Term::lam(Term::Nat, Term::suc(Term::Var(0))),
            PRFun::Proj(k, i) => lams(*k, Term::Var(k - 1 - i)),
            PRFun::Comp(outer, inners) => {
                let k = inners[0].arity()?;
                let mut args = Vec::with_capacity(inners.len());
                for g in inners {
                    args.push(Term::apps(self.go(g)?, vars(k, 0)));
                }
                lams(k, Term::apps(self.go(outer)?, args))
            }
            PRFun::PrimRec(base, step) => {
                let l = base.arity()?;
                let g = Term::apps(self.go(base)?, vars(l, 0));
                let h = Term::apps(self.go(step)?, [Term::Var(1), Term::Var(0)].into_iter().chain(vars(l, 2)));
                lams(l + 1, Term::nat_ind(Term::Nat, g, h, Term::Var(l)))
            }
        };
        self.memo.insert(key, t.clone());
        Ok(t)
    }
}
