use std::fmt;
use std::rc::Rc;

use prtt_core::{Level, Natural, Term};

/// Semantic values. Numerals are compact: `Num(n)` is `suc^n zero` and
/// `Suc(k, x)` is `suc^k` applied to the neutral `x`, with `k >= 1`.
#[derive(Clone)]
pub enum Value {
    Lam(Closure),
    Pi(Rc<Value>, Closure),
    Sigma(Rc<Value>, Closure),
    Pair(Rc<Value>, Rc<Value>),
    Sum(Rc<Value>, Rc<Value>),
    Inl(Rc<Value>),
    Inr(Rc<Value>),
    Nat,
    Num(Natural),
    Suc(Natural, Rc<Value>),
    Unit,
    Star,
    Empty,
    Eq(Rc<Value>, Rc<Value>, Rc<Value>),
    Refl(Rc<Value>),
    Univ(Level),
    /// A stuck computation together with its type.
    Neutral(Rc<Value>, Rc<Neutral>),
}

/// Eliminations stuck on a variable. Heads are themselves neutral values so
/// their types stay available for type-directed quotation.
#[derive(Clone)]
pub enum Neutral {
    /// De Bruijn level.
    Var(usize),
    App(Value, Value),
    Fst(Value),
    Snd(Value),
    NatInd {
        motive: Closure,
        base: Value,
        step: Closure,
        scrut: Value,
    },
    SumInd {
        motive: Closure,
        lcase: Closure,
        rcase: Closure,
        scrut: Value,
    },
    UnitInd {
        motive: Closure,
        base: Value,
        scrut: Value,
    },
    EqInd {
        motive: Closure,
        base: Value,
        lhs: Value,
        rhs: Value,
        proof: Value,
    },
    ExFalso {
        motive: Closure,
        scrut: Value,
    },
}

#[derive(Clone)]
pub struct Closure {
    pub env: Env,
    pub body: Rc<Term>,
}

/// Persistent environment; index 0 is the most recent entry.
#[derive(Clone, Default)]
pub struct Env(Option<Rc<EnvNode>>);

struct EnvNode {
    head: Value,
    tail: Env,
    len: usize,
}

impl Env {
    pub fn new() -> Self {
        Env(None)
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn push(&self, v: Value) -> Env {
        Env(Some(Rc::new(EnvNode { head: v, tail: self.clone(), len: self.len() + 1 })))
    }

    pub fn get(&self, index: usize) -> Option<&Value> {
        let mut node = self.0.as_ref()?;
        for _ in 0..index {
            node = node.tail.0.as_ref()?;
        }
        Some(&node.head)
    }
}

impl Value {
    pub fn zero() -> Value {
        Value::Num(Natural::ZERO)
    }

    /// A fresh variable at `level` of type `ty`.
    pub fn var(level: usize, ty: Value) -> Value {
        Value::Neutral(Rc::new(ty), Rc::new(Neutral::Var(level)))
    }

    pub fn succ(self) -> Value {
        match self {
            Value::Num(n) => Value::Num(n.succ()),
            Value::Suc(k, x) => Value::Suc(k.succ(), x),
            other => Value::Suc(Natural::from(1), Rc::new(other)),
        }
    }

    /// `suc^k` of a neutral natural.
    pub fn sucs(k: Natural, x: Value) -> Value {
        if k.is_zero() {
            x
        } else {
            match x {
                Value::Num(n) => Value::Num(n.add(&k)),
                Value::Suc(j, y) => Value::Suc(j.add(&k), y),
                other => Value::Suc(k, Rc::new(other)),
            }
        }
    }

    pub fn as_num(&self) -> Option<&Natural> {
        match self {
            Value::Num(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Lam(_) => write!(f, "<lam>"),
            Value::Pi(a, _) => write!(f, "Pi({a:?}, <closure>)"),
            Value::Sigma(a, _) => write!(f, "Sigma({a:?}, <closure>)"),
            Value::Pair(a, b) => write!(f, "({a:?}, {b:?})"),
            Value::Sum(a, b) => write!(f, "{a:?} + {b:?}"),
            Value::Inl(a) => write!(f, "inl {a:?}"),
            Value::Inr(a) => write!(f, "inr {a:?}"),
            Value::Nat => write!(f, "Nat"),
            Value::Num(n) => write!(f, "{n}"),
            Value::Suc(k, x) => write!(f, "suc^{k} {x:?}"),
            Value::Unit => write!(f, "Unit"),
            Value::Star => write!(f, "star"),
            Value::Empty => write!(f, "Empty"),
            Value::Eq(a, x, y) => write!(f, "Eq({a:?}, {x:?}, {y:?})"),
            Value::Refl(a) => write!(f, "refl {a:?}"),
            Value::Univ(l) => write!(f, "U{l}"),
            Value::Neutral(_, n) => match &**n {
                Neutral::Var(l) => write!(f, "@{l}"),
                _ => write!(f, "<neutral>"),
            },
        }
    }
}
