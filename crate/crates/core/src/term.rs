use std::rc::Rc;

use crate::level::Level;

/// A top-level definition. References are transparent: conversion unfolds
/// them. `ty` is absent when the source omitted the annotation.
#[derive(Debug, PartialEq, Eq)]
pub struct Constant {
    pub name: Rc<str>,
    pub ty: Option<Term>,
    pub body: Term,
}

/// Nameless terms. Binder bodies are stored directly: the motive of an
/// eliminator binds one variable (two for `EqInd`), the step of `NatInd`
/// binds the predecessor and then the accumulator (so the accumulator is
/// `Var(0)`), and each `SumInd` branch binds its payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Lam(Rc<Term>, Rc<Term>),
    App(Rc<Term>, Rc<Term>),
    Pi(Rc<Term>, Rc<Term>),
    Sigma(Rc<Term>, Rc<Term>),
    Pair(Rc<Term>, Rc<Term>),
    Fst(Rc<Term>),
    Snd(Rc<Term>),
    Eq(Rc<Term>, Rc<Term>, Rc<Term>),
    Refl(Rc<Term>),
    EqInd { motive: Rc<Term>, base: Rc<Term>, lhs: Rc<Term>, rhs: Rc<Term>, proof: Rc<Term> },
    Empty,
    ExFalso { motive: Rc<Term>, scrut: Rc<Term> },
    Unit,
    Star,
    UnitInd { motive: Rc<Term>, base: Rc<Term>, scrut: Rc<Term> },
    Nat,
    Zero,
    Suc(Rc<Term>),
    NatInd { motive: Rc<Term>, base: Rc<Term>, step: Rc<Term>, scrut: Rc<Term> },
    Sum(Rc<Term>, Rc<Term>),
    Inl(Rc<Term>),
    Inr(Rc<Term>),
    SumInd { motive: Rc<Term>, lcase: Rc<Term>, rcase: Rc<Term>, scrut: Rc<Term> },
    Univ(Level),
    Lift(Level, Level, Rc<Term>),
    Const(Rc<Constant>),
}

thread_local! {
    static ZERO: Rc<Term> = Rc::new(Term::Zero);
}

// Long successor chains would otherwise overflow the stack on drop.
impl Drop for Term {
    fn drop(&mut self) {
        if let Term::Suc(next) = self {
            let Ok(mut next) = ZERO.try_with(|z| std::mem::replace(next, z.clone())) else {
                return;
            };
            while let Ok(mut inner) = Rc::try_unwrap(next) {
                match &mut inner {
                    Term::Suc(n) => match ZERO.try_with(|z| std::mem::replace(n, z.clone())) {
                        Ok(n) => next = n,
                        Err(_) => return,
                    },
                    _ => return,
                }
            }
        }
    }
}

fn rc(t: Term) -> Rc<Term> {
    Rc::new(t)
}

impl Term {
    pub fn lam(ty: Term, body: Term) -> Term {
        Term::Lam(rc(ty), rc(body))
    }
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(rc(f), rc(a))
    }
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }
    pub fn pi(dom: Term, cod: Term) -> Term {
        Term::Pi(rc(dom), rc(cod))
    }
    /// Non-dependent function type; the codomain is weakened under the binder.
    pub fn arrow(dom: Term, cod: Term) -> Term {
        Term::pi(dom, shift(&cod, 0, 1))
    }
    pub fn sigma(a: Term, b: Term) -> Term {
        Term::Sigma(rc(a), rc(b))
    }
    pub fn product(a: Term, b: Term) -> Term {
        Term::sigma(a, shift(&b, 0, 1))
    }
    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(rc(a), rc(b))
    }
    pub fn fst(p: Term) -> Term {
        Term::Fst(rc(p))
    }
    pub fn snd(p: Term) -> Term {
        Term::Snd(rc(p))
    }
    pub fn eq(ty: Term, a: Term, b: Term) -> Term {
        Term::Eq(rc(ty), rc(a), rc(b))
    }
    pub fn refl(a: Term) -> Term {
        Term::Refl(rc(a))
    }
    pub fn eq_ind(motive: Term, base: Term, lhs: Term, rhs: Term, proof: Term) -> Term {
        Term::EqInd { motive: rc(motive), base: rc(base), lhs: rc(lhs), rhs: rc(rhs), proof: rc(proof) }
    }
    pub fn ex_falso(motive: Term, scrut: Term) -> Term {
        Term::ExFalso { motive: rc(motive), scrut: rc(scrut) }
    }
    pub fn unit_ind(motive: Term, base: Term, scrut: Term) -> Term {
        Term::UnitInd { motive: rc(motive), base: rc(base), scrut: rc(scrut) }
    }
    pub fn suc(n: Term) -> Term {
        Term::Suc(rc(n))
    }
    pub fn nat_ind(motive: Term, base: Term, step: Term, scrut: Term) -> Term {
        Term::NatInd { motive: rc(motive), base: rc(base), step: rc(step), scrut: rc(scrut) }
    }
    pub fn sum(l: Term, r: Term) -> Term {
        Term::Sum(rc(l), rc(r))
    }
    pub fn inl(a: Term) -> Term {
        Term::Inl(rc(a))
    }
    pub fn inr(b: Term) -> Term {
        Term::Inr(rc(b))
    }
    pub fn sum_ind(motive: Term, lcase: Term, rcase: Term, scrut: Term) -> Term {
        Term::SumInd { motive: rc(motive), lcase: rc(lcase), rcase: rc(rcase), scrut: rc(scrut) }
    }
    pub fn lift(from: Level, to: Level, ty: Term) -> Term {
        Term::Lift(from, to, rc(ty))
    }

    /// `suc^n zero`, built without recursion.
    pub fn numeral(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::suc(t);
        }
        t
    }

    /// The value of a closed `suc^n zero` chain.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Suc(p) => {
                    n += 1;
                    t = p;
                }
                _ => return None,
            }
        }
    }

    /// Immediate subterms paired with the number of variables each binds.
    pub fn children(&self) -> Vec<(usize, &Rc<Term>)> {
        use Term::*;
        match self {
            Var(_) | Empty | Unit | Star | Nat | Zero | Univ(_) | Const(_) => vec![],
            Lam(a, b) | Pi(a, b) | Sigma(a, b) => vec![(0, a), (1, b)],
            App(a, b) | Pair(a, b) | Sum(a, b) => vec![(0, a), (0, b)],
            Fst(a) | Snd(a) | Refl(a) | Suc(a) | Inl(a) | Inr(a) | Lift(_, _, a) => vec![(0, a)],
            Eq(a, b, c) => vec![(0, a), (0, b), (0, c)],
            EqInd { motive, base, lhs, rhs, proof } => {
                vec![(2, motive), (0, base), (0, lhs), (0, rhs), (0, proof)]
            }
            ExFalso { motive, scrut } => vec![(1, motive), (0, scrut)],
            UnitInd { motive, base, scrut } => vec![(1, motive), (0, base), (0, scrut)],
            NatInd { motive, base, step, scrut } => vec![(1, motive), (0, base), (2, step), (0, scrut)],
            SumInd { motive, lcase, rcase, scrut } => {
                vec![(1, motive), (1, lcase), (1, rcase), (0, scrut)]
            }
        }
    }

    /// Rebuild with each child replaced by `f(binders, child)`, in `children` order.
    pub fn map_children(&self, mut f: impl FnMut(usize, &Rc<Term>) -> Rc<Term>) -> Term {
        use Term::*;
        match self {
            Var(_) | Empty | Unit | Star | Nat | Zero | Univ(_) | Const(_) => self.clone(),
            Lam(a, b) => Lam(f(0, a), f(1, b)),
            Pi(a, b) => Pi(f(0, a), f(1, b)),
            Sigma(a, b) => Sigma(f(0, a), f(1, b)),
            App(a, b) => App(f(0, a), f(0, b)),
            Pair(a, b) => Pair(f(0, a), f(0, b)),
            Sum(a, b) => Sum(f(0, a), f(0, b)),
            Fst(a) => Fst(f(0, a)),
            Snd(a) => Snd(f(0, a)),
            Refl(a) => Refl(f(0, a)),
            Suc(a) => Suc(f(0, a)),
            Inl(a) => Inl(f(0, a)),
            Inr(a) => Inr(f(0, a)),
            Lift(x, y, a) => Lift(*x, *y, f(0, a)),
            Eq(a, b, c) => Eq(f(0, a), f(0, b), f(0, c)),
            EqInd { motive, base, lhs, rhs, proof } => {
                EqInd { motive: f(2, motive), base: f(0, base), lhs: f(0, lhs), rhs: f(0, rhs), proof: f(0, proof) }
            }
            ExFalso { motive, scrut } => ExFalso { motive: f(1, motive), scrut: f(0, scrut) },
            UnitInd { motive, base, scrut } => UnitInd { motive: f(1, motive), base: f(0, base), scrut: f(0, scrut) },
            NatInd { motive, base, step, scrut } => {
                NatInd { motive: f(1, motive), base: f(0, base), step: f(2, step), scrut: f(0, scrut) }
            }
            SumInd { motive, lcase, rcase, scrut } => {
                SumInd { motive: f(1, motive), lcase: f(1, lcase), rcase: f(1, rcase), scrut: f(0, scrut) }
            }
        }
    }

    /// Node count, with constants counted as leaves.
    pub fn size(&self) -> usize {
        if let Some(n) = self.as_numeral() {
            return n as usize + 1;
        }
        1 + self.children().iter().map(|(_, c)| c.size()).sum::<usize>()
    }

    /// Whether `Var(index)` occurs free.
    pub fn mentions(&self, index: usize) -> bool {
        match self {
            Term::Var(i) => *i == index,
            Term::Suc(_) if self.as_numeral().is_some() => false,
            _ => self.children().iter().any(|(b, c)| c.mentions(index + b)),
        }
    }

    /// Whether every free index is below `depth`.
    pub fn is_scoped(&self, depth: usize) -> bool {
        match self {
            Term::Var(i) => *i < depth,
            Term::Suc(_) if self.as_numeral().is_some() => true,
            _ => self.children().iter().all(|(b, c)| c.is_scoped(depth + b)),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.is_scoped(0)
    }
}

/// Adjust every free index `>= cutoff` by `amount`.
///
/// # Panics
/// If an index would become negative; that is a caller bug.
pub fn shift(t: &Term, cutoff: usize, amount: isize) -> Term {
    if amount == 0 {
        return t.clone();
    }
    match t {
        Term::Var(i) if *i >= cutoff => {
            let j = *i as isize + amount;
            assert!(j >= 0, "shift produced negative index {j}");
            Term::Var(j as usize)
        }
        Term::Var(_) => t.clone(),
        _ if t.as_numeral().is_some() => t.clone(),
        _ => t.map_children(|b, c| rc(shift(c, cutoff + b, amount))),
    }
}

/// Replace `Var(k)` by `u` and close the gap: indices above `k` drop by one.
/// `u` is expressed in the context that remains after removing `k`.
pub fn subst(t: &Term, k: usize, u: &Term) -> Term {
    fn go(t: &Term, k: usize, u: &Term, depth: usize) -> Term {
        match t {
            Term::Var(i) if *i == k + depth => shift(u, 0, depth as isize),
            Term::Var(i) if *i > k + depth => Term::Var(i - 1),
            Term::Var(_) => t.clone(),
            _ if t.as_numeral().is_some() => t.clone(),
            _ => t.map_children(|b, c| rc(go(c, k, u, depth + b))),
        }
    }
    go(t, k, u, 0)
}

/// Instantiate the outermost bound variable of a binder body.
pub fn instantiate(body: &Term, u: &Term) -> Term {
    subst(body, 0, u)
}

/// Fuse identity and nested lifts and push lifts through Σ, Eq, sums and,
/// above level 0, Π.
pub fn collapse_lifts(t: &Term) -> Term {
    match t {
        Term::Lift(from, to, a) => push_lift(*from, *to, &collapse_lifts(a)),
        _ if t.as_numeral().is_some() => t.clone(),
        _ => t.map_children(|_, c| rc(collapse_lifts(c))),
    }
}

fn push_lift(from: Level, to: Level, a: &Term) -> Term {
    if from == to {
        return a.clone();
    }
    match a {
        Term::Lift(inner, _, b) => {
            if *inner == to {
                (**b).clone()
            } else {
                Term::Lift(*inner, to, b.clone())
            }
        }
        Term::Sigma(x, y) => Term::sigma(push_lift(from, to, x), push_lift(from, to, y)),
        Term::Sum(x, y) => Term::sum(push_lift(from, to, x), push_lift(from, to, y)),
        Term::Eq(x, l, r) => Term::Eq(rc(push_lift(from, to, x)), l.clone(), r.clone()),
        Term::Pi(x, y) if from > Level::ZERO => Term::pi(push_lift(from, to, x), push_lift(from, to, y)),
        _ => Term::lift(from, to, a.clone()),
    }
}

/// Remove every `Lift` node.
pub fn erase_lifts(t: &Term) -> Term {
    match t {
        Term::Lift(_, _, a) => erase_lifts(a),
        _ if t.as_numeral().is_some() => t.clone(),
        _ => t.map_children(|_, c| rc(erase_lifts(c))),
    }
}

/// One entry of a typing context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub ty: Term,
    pub level: Level,
}

/// A telescope; the last binding is `Var(0)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Context {
    pub bindings: Vec<Binding>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    /// `k` variables of type `Nat`.
    pub fn nats(k: usize) -> Self {
        Context { bindings: vec![Binding { ty: Term::Nat, level: Level::ZERO }; k] }
    }

    pub fn push(&mut self, ty: Term, level: Level) {
        self.bindings.push(Binding { ty, level });
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}
