//! Seeded generators of well-typed terms used by property tests and the CLI.

use prtt_core::{Level, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Non-dependent types the generator composes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimpleType {
    Nat,
    Unit,
    Empty,
    Prod(Box<SimpleType>, Box<SimpleType>),
    Sum(Box<SimpleType>, Box<SimpleType>),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

use SimpleType as S;

impl SimpleType {
    pub fn to_term(&self) -> Term {
        match self {
            S::Nat => Term::Nat,
            S::Unit => Term::Unit,
            S::Empty => Term::Empty,
            S::Prod(a, b) => Term::product(a.to_term(), b.to_term()),
            S::Sum(a, b) => Term::sum(a.to_term(), b.to_term()),
            S::Arrow(a, b) => Term::arrow(a.to_term(), b.to_term()),
        }
    }

    /// Whether the type lives in `U0`, i.e. mentions no arrow.
    pub fn is_small(&self) -> bool {
        match self {
            S::Nat | S::Unit | S::Empty => true,
            S::Prod(a, b) | S::Sum(a, b) => a.is_small() && b.is_small(),
            S::Arrow(..) => false,
        }
    }

    fn inhabited(&self) -> bool {
        match self {
            S::Nat | S::Unit => true,
            S::Empty => false,
            S::Prod(a, b) => a.inhabited() && b.inhabited(),
            S::Sum(a, b) => a.inhabited() || b.inhabited(),
            S::Arrow(a, b) => !a.inhabited() || b.inhabited(),
        }
    }
}

/// `(t : ty)` encoded as an application of the identity at `ty`.
pub fn ascribe(t: Term, ty: Term) -> Term {
    Term::app(Term::lam(ty, Term::Var(0)), t)
}

fn inferable(t: &Term) -> bool {
    match t {
        Term::Inl(_) | Term::Inr(_) => false,
        Term::Pair(a, b) => inferable(a) && inferable(b),
        Term::Lam(_, b) => inferable(b),
        Term::App(f, _) => inferable(f),
        Term::Fst(p) | Term::Snd(p) | Term::Refl(p) => inferable(p),
        _ => true,
    }
}

pub struct TermGen {
    rng: ChaCha8Rng,
}

impl TermGen {
    pub fn new(seed: u64) -> Self {
        TermGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn pick(&mut self, n: u32) -> u32 {
        self.rng.gen_range(0..n)
    }

    fn simple_type(&mut self, depth: u32, small: bool) -> SimpleType {
        if depth == 0 {
            return if self.pick(4) == 0 { S::Unit } else { S::Nat };
        }
        match self.pick(if small { 5 } else { 6 }) {
            0 | 1 => S::Nat,
            2 => S::Prod(Box::new(self.simple_type(depth - 1, small)), Box::new(self.simple_type(depth - 1, small))),
            3 => S::Sum(Box::new(self.simple_type(depth - 1, small)), Box::new(self.simple_type(depth - 1, small))),
            4 => S::Unit,
            _ => S::Arrow(Box::new(self.simple_type(depth - 1, true)), Box::new(self.simple_type(depth - 1, false))),
        }
    }

    /// A closed type in `U0`, possibly dependent or mentioning identities.
    pub fn u0_type(&mut self, depth: u32) -> Term {
        if depth == 0 {
            return match self.pick(3) {
                0 => Term::Nat,
                1 => Term::Unit,
                _ => Term::Empty,
            };
        }
        match self.pick(7) {
            0 => Term::Nat,
            1 => Term::sum(self.u0_type(depth - 1), self.u0_type(depth - 1)),
            2 => Term::product(self.u0_type(depth - 1), self.u0_type(depth - 1)),
            3 => {
                let k = self.pick(3) as u64;
                Term::sigma(Term::Nat, Term::eq(Term::Nat, Term::Var(0), Term::numeral(k)))
            }
            4 => {
                let (a, b) = (self.pick(3) as u64, self.pick(3) as u64);
                Term::eq(Term::Nat, Term::numeral(a), Term::numeral(b))
            }
            5 => Term::lift(Level::ZERO, Level::ZERO, self.u0_type(depth - 1)),
            _ => Term::Unit,
        }
    }

    /// A motive body (binding one natural) that lives above `U0`.
    pub fn large_motive(&mut self) -> Term {
        match self.pick(4) {
            0 => Term::arrow(Term::Nat, Term::Nat),
            1 => Term::Univ(Level::ZERO),
            2 => Term::product(Term::arrow(Term::Unit, Term::Nat), self.u0_type(1)),
            _ => Term::lift(Level::ZERO, Level::ONE, self.u0_type(2)),
        }
    }

    /// A term of `ty` in a context whose variable types are `env`
    /// (innermost last).
    pub fn term_of(&mut self, ty: &SimpleType, env: &mut Vec<SimpleType>, fuel: u32) -> Term {
        let vars: Vec<usize> = (0..env.len()).filter(|&l| &env[l] == ty).map(|l| env.len() - 1 - l).collect();
        if fuel == 0 || self.pick(6) == 0 {
            if !vars.is_empty() && self.pick(2) == 0 {
                return Term::Var(vars[self.pick(vars.len() as u32) as usize]);
            }
            if let Some(t) = self.intro_leaf(ty, env, fuel) {
                return t;
            }
        }
        let f = fuel.saturating_sub(1);
        let choice = self.pick(10);
        if choice < 4 {
            if let Some(t) = self.intro(ty, env, f) {
                return t;
            }
        }
        if ty.is_small() && ty.inhabited() {
            match choice {
                4 | 5 => return self.nat_ind(ty, env, f),
                6 => return self.sum_ind(ty, env, f),
                7 => {
                    let base = self.term_of(ty, env, f);
                    let scrut = self.term_of(&S::Unit, env, f);
                    return Term::unit_ind(ty.to_term(), base, scrut);
                }
                8 => {
                    let base = self.term_of(ty, env, f);
                    let a = self.term_of(&S::Nat, env, f);
                    return Term::eq_ind(ty.to_term(), base, a.clone(), a.clone(), Term::refl(a));
                }
                _ => {}
            }
        }
        if let Some(l) = env.iter().rposition(|t| *t == S::Empty) {
            if ty.is_small() && self.pick(3) == 0 {
                return Term::ex_falso(ty.to_term(), Term::Var(env.len() - 1 - l));
            }
        }
        match self.pick(3) {
            0 => {
                let a = self.simple_type(1, true);
                if a.inhabited() {
                    let fun = self.term_of(&S::Arrow(Box::new(a.clone()), Box::new(ty.clone())), env, f);
                    let arg = self.term_of(&a, env, f);
                    return Term::app(self.infer_form(fun, &S::Arrow(Box::new(a), Box::new(ty.clone()))), arg);
                }
            }
            1 if ty.inhabited() => {
                let other = self.simple_type(1, true);
                if other.inhabited() {
                    let pty = S::Prod(Box::new(ty.clone()), Box::new(other));
                    let p = self.term_of(&pty, env, f);
                    return Term::fst(self.infer_form(p, &pty));
                }
            }
            _ => {}
        }
        self.intro(ty, env, f).unwrap_or_else(|| self.intro_leaf(ty, env, 0).expect("inhabited"))
    }

    fn infer_form(&mut self, t: Term, ty: &SimpleType) -> Term {
        if inferable(&t) {
            t
        } else {
            ascribe(t, ty.to_term())
        }
    }

    fn intro_leaf(&mut self, ty: &SimpleType, env: &mut Vec<SimpleType>, fuel: u32) -> Option<Term> {
        match ty {
            S::Nat => Some(Term::numeral(self.pick(4) as u64)),
            S::Unit => Some(Term::Star),
            _ => self.intro(ty, env, fuel.min(1)),
        }
    }

    fn intro(&mut self, ty: &SimpleType, env: &mut Vec<SimpleType>, fuel: u32) -> Option<Term> {
        match ty {
            S::Nat => Some(if self.pick(2) == 0 {
                Term::suc(self.term_of(ty, env, fuel))
            } else {
                Term::numeral(self.pick(3) as u64)
            }),
            S::Unit => Some(Term::Star),
            S::Empty => env.iter().rposition(|t| *t == S::Empty).map(|l| Term::Var(env.len() - 1 - l)),
            S::Prod(a, b) => {
                let x = self.term_of(a, env, fuel);
                let y = self.term_of(b, env, fuel);
                Some(Term::pair(x, y))
            }
            S::Sum(a, b) => {
                let left = match (a.inhabited(), b.inhabited()) {
                    (true, true) => self.pick(2) == 0,
                    (l, _) => l,
                };
                Some(if left { Term::inl(self.term_of(a, env, fuel)) } else { Term::inr(self.term_of(b, env, fuel)) })
            }
            S::Arrow(a, b) => {
                env.push((**a).clone());
                let body = self.term_of(b, env, fuel);
                env.pop();
                Some(Term::lam(a.to_term(), body))
            }
        }
    }

    fn nat_ind(&mut self, ty: &SimpleType, env: &mut Vec<SimpleType>, fuel: u32) -> Term {
        let base = self.term_of(ty, env, fuel);
        env.push(S::Nat);
        env.push(ty.clone());
        let step = self.term_of(ty, env, fuel / 2);
        env.truncate(env.len() - 2);
        let scrut =
            if self.pick(2) == 0 { Term::numeral(self.pick(4) as u64) } else { self.term_of(&S::Nat, env, fuel / 2) };
        Term::nat_ind(ty.to_term(), base, step, scrut)
    }

    fn sum_ind(&mut self, ty: &SimpleType, env: &mut Vec<SimpleType>, fuel: u32) -> Term {
        let (a, b) = (self.simple_type(1, true), self.simple_type(1, true));
        let sty = S::Sum(Box::new(a.clone()), Box::new(b.clone()));
        let scrut = self.term_of(&sty, env, fuel);
        let scrut = self.infer_form(scrut, &sty);
        env.push(a);
        let l = self.term_of(ty, env, fuel);
        env.pop();
        env.push(b);
        let r = self.term_of(ty, env, fuel);
        env.pop();
        Term::sum_ind(ty.to_term(), l, r, scrut)
    }

    /// Dependent recursion carrying a proof: `snd (ind (fun n => Eq Nat n n * Nat) ...)`.
    fn dependent_ind(&mut self, env: &mut Vec<SimpleType>, fuel: u32) -> Term {
        let motive = Term::product(Term::eq(Term::Nat, Term::Var(0), Term::Var(0)), Term::Nat);
        let base = Term::pair(Term::refl(Term::Zero), self.term_of(&S::Nat, env, fuel));
        env.push(S::Nat);
        env.push(S::Nat);
        let next = self.term_of(&S::Nat, env, fuel / 2);
        env.truncate(env.len() - 2);
        let next = prtt_core::subst(&prtt_core::shift(&next, 0, 1), 1, &Term::snd(Term::Var(0)));
        let step = Term::pair(Term::refl(Term::suc(Term::Var(1))), next);
        let scrut = self.term_of(&S::Nat, env, fuel / 2);
        Term::snd(Term::nat_ind(motive, base, step, scrut))
    }

    /// A term of type `Nat` over `arity` natural variables, retried until
    /// it has at most `max_size` nodes.
    pub fn nat_term(&mut self, arity: usize, max_size: usize) -> Term {
        loop {
            let mut env = vec![S::Nat; arity];
            let fuel = 2 + self.pick(4);
            let t = if self.pick(6) == 0 {
                self.dependent_ind(&mut env, fuel)
            } else {
                self.term_of(&S::Nat, &mut env, fuel)
            };
            if t.size() <= max_size {
                return t;
            }
        }
    }

    /// A closed term together with its type, which lives in `U0`.
    pub fn closed_term(&mut self, max_size: usize) -> (Term, Term) {
        loop {
            let ty = self.simple_type(2, true);
            if !ty.inhabited() {
                continue;
            }
            let fuel = 2 + self.pick(4);
            let t = self.term_of(&ty, &mut vec![], fuel);
            if t.size() <= max_size {
                return (self.infer_form(t, &ty), ty.to_term());
            }
        }
    }
}
