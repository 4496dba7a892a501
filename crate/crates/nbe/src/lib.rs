//! Normalization by evaluation with compact numerals and an ι-step budget.

mod eval;
mod quote;
pub mod value;

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::rc::Rc;

use prtt_core::{Constant, Context, Natural, Term};
use thiserror::Error;

pub use value::{Closure, Env, Neutral, Value};

/// Default ceiling on ι-steps per session.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NbeError {
    #[error("step budget of {0} ι-steps exhausted")]
    BudgetExceeded(u64),
    #[error("closed natural did not normalize to a numeral: {0}")]
    NonCanonical(String),
    #[error("evaluator invariant violated (ill-typed input?): {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, NbeError>;

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(NbeError::Internal(msg.into()))
}

/// An evaluation session: the budget is shared by every call made through it
/// and evaluated constants are cached.
pub struct Nbe {
    budget: u64,
    spent: Cell<u64>,
    consts: RefCell<HashMap<*const Constant, (Rc<Constant>, Value)>>,
}

impl Default for Nbe {
    fn default() -> Self {
        Nbe::new(DEFAULT_STEP_BUDGET)
    }
}

impl Nbe {
    pub fn new(budget: u64) -> Self {
        Nbe { budget, spent: Cell::new(0), consts: RefCell::new(HashMap::new()) }
    }

    pub fn steps(&self) -> u64 {
        self.spent.get()
    }

    pub(crate) fn spend(&self, n: u64) -> Result<()> {
        let s = self.spent.get().saturating_add(n);
        if s > self.budget {
            return Err(NbeError::BudgetExceeded(self.budget));
        }
        self.spent.set(s);
        Ok(())
    }

    /// Environment of fresh variables for `ctx`, each typed by its binding.
    pub fn env_of(&self, ctx: &Context) -> Result<Env> {
        let mut env = Env::new();
        for (lvl, b) in ctx.bindings.iter().enumerate() {
            let ty = self.eval(&env, &b.ty)?;
            env = env.push(Value::var(lvl, ty));
        }
        Ok(env)
    }

    /// β-normal, η-long form of `t : ty` in `ctx`.
    pub fn normalize(&self, ctx: &Context, t: &Term, ty: &Term) -> Result<Term> {
        let env = self.env_of(ctx)?;
        let v = self.eval(&env, t)?;
        let tv = self.eval(&env, ty)?;
        self.quote(env.len(), &v, &tv)
    }

    /// The numeral a closed natural evaluates to.
    pub fn canonical_nat(&self, t: &Term) -> Result<Natural> {
        if !t.is_closed() {
            return Err(NbeError::NonCanonical(format!("open term {t}")));
        }
        match self.eval(&Env::new(), t)? {
            Value::Num(n) => Ok(n),
            other => Err(NbeError::NonCanonical(format!("{other:?}"))),
        }
    }
}

/// [`Nbe::normalize`] with the default budget.
pub fn normalize(ctx: &Context, t: &Term, ty: &Term) -> Result<Term> {
    Nbe::default().normalize(ctx, t, ty)
}

/// [`Nbe::canonical_nat`] with the default budget.
pub fn canonical_nat(t: &Term) -> Result<Natural> {
    Nbe::default().canonical_nat(t)
}
