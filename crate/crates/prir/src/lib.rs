//! Primitive-recursive combinators: a first-order program representation
//! with an evaluator over unbounded naturals.
//!
//! `PrimRec(g, h)` takes the recursion argument first:
//! `f(0, x) = g(x)` and `f(n + 1, x) = h(n, f(n, x), x)`.

mod eval;
mod generate;
mod json;
mod to_prtt;

use std::collections::HashMap;
use std::rc::Rc;

use prtt_core::Natural;
use thiserror::Error;

pub use eval::{eval_pr, eval_pr_traced, EvalTrace, Evaluator, DEFAULT_PR_BUDGET};
pub use generate::generate;
pub use json::{from_json, to_json, to_json_shared};
pub use to_prtt::to_prtt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PRFun {
    Const(usize, Natural),
    Succ,
    Proj(usize, usize),
    Comp(Rc<PRFun>, Vec<Rc<PRFun>>),
    PrimRec(Rc<PRFun>, Rc<PRFun>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrError {
    #[error("ill-formed program: {0}")]
    IllFormed(String),
    #[error("evaluation exceeded the budget of {0} recursion unfoldings")]
    BudgetExceeded(u64),
}

pub type Result<T, E = PrError> = std::result::Result<T, E>;

fn ill<T>(msg: impl Into<String>) -> Result<T> {
    Err(PrError::IllFormed(msg.into()))
}

impl PRFun {
    pub fn constant(arity: usize, value: u64) -> PRFun {
        PRFun::Const(arity, Natural::from(value))
    }

    pub fn proj(arity: usize, index: usize) -> PRFun {
        PRFun::Proj(arity, index)
    }

    pub fn comp(outer: PRFun, inners: impl IntoIterator<Item = PRFun>) -> PRFun {
        PRFun::Comp(Rc::new(outer), inners.into_iter().map(Rc::new).collect())
    }

    pub fn prim_rec(base: PRFun, step: PRFun) -> PRFun {
        PRFun::PrimRec(Rc::new(base), Rc::new(step))
    }

    /// Number of arguments, checking well-formedness of the whole tree.
    pub fn arity(&self) -> Result<usize> {
        arity_memo(self, &mut HashMap::new())
    }

    pub fn is_wellformed(&self) -> bool {
        self.arity().is_ok()
    }

    /// Node count of the tree, counting shared subterms once per occurrence.
    pub fn size(&self) -> u64 {
        fn go(f: &PRFun, memo: &mut HashMap<*const PRFun, u64>) -> u64 {
            let key = f as *const PRFun;
            if let Some(&n) = memo.get(&key) {
                return n;
            }
            let n = 1 + match f {
                PRFun::Comp(o, is) => go(o, memo) + is.iter().map(|i| go(i, memo)).sum::<u64>(),
                PRFun::PrimRec(g, h) => go(g, memo) + go(h, memo),
                _ => 0,
            };
            memo.insert(key, n);
            n
        }
        go(self, &mut HashMap::new())
    }

    /// Number of distinct nodes, counting shared subprograms once.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut todo = vec![self];
        while let Some(f) = todo.pop() {
            if !seen.insert(f as *const PRFun) {
                continue;
            }
            match f {
                PRFun::Comp(o, is) => {
                    todo.push(o);
                    todo.extend(is.iter().map(|i| &**i));
                }
                PRFun::PrimRec(g, h) => todo.extend([&**g, &**h]),
                _ => {}
            }
        }
        seen.len()
    }

    pub fn depth(&self) -> usize {
        match self {
            PRFun::Comp(o, is) => 1 + is.iter().map(|i| i.depth()).max().unwrap_or(0).max(o.depth()),
            PRFun::PrimRec(g, h) => 1 + g.depth().max(h.depth()),
            _ => 1,
        }
    }
}

fn arity_memo(f: &PRFun, memo: &mut HashMap<*const PRFun, usize>) -> Result<usize> {
    let key = f as *const PRFun;
    if let Some(&k) = memo.get(&key) {
        return Ok(k);
    }
    let k = match f {
        PRFun::Const(k, _) => *k,
        PRFun::Succ => 1,
        PRFun::Proj(k, i) => {
            if i >= k {
                return ill(format!("projection index {i} out of range for arity {k}"));
            }
            *k
        }
        PRFun::Comp(outer, inners) => {
            let m = arity_memo(outer, memo)?;
            if m != inners.len() {
                return ill(format!("outer function of arity {m} composed with {} inner functions", inners.len()));
            }
            let Some(first) = inners.first() else {
                return ill("composition needs at least one inner function");
            };
            let k = arity_memo(first, memo)?;
            for g in &inners[1..] {
                let kg = arity_memo(g, memo)?;
                if kg != k {
                    return ill(format!("inner functions disagree on arity: {k} and {kg}"));
                }
            }
            k
        }
        PRFun::PrimRec(base, step) => {
            let l = arity_memo(base, memo)?;
            let s = arity_memo(step, memo)?;
            if s != l + 2 {
                return ill(format!("recursion step has arity {s}, expected {}", l + 2));
            }
            l + 1
        }
    };
    memo.insert(key, k);
    Ok(k)
}
