//! Cantor pairing `pair(m, n) = (m + n)(m + n + 1) / 2 + m`, natively and as
//! primitive-recursive programs.

use std::rc::Rc;

use num_bigint::BigUint;
use prtt_core::Natural;
use prtt_prir::PRFun;

pub fn pair(m: &Natural, n: &Natural) -> Natural {
    let (m, n) = (m.to_biguint(), n.to_biguint());
    let s = &m + &n;
    Natural::from((&s * (&s + 1u32)) / 2u32 + m)
}

pub fn unpair(p: &Natural) -> (Natural, Natural) {
    let p = p.to_biguint();
    let w = ((&p * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let m: BigUint = &p - t;
    let n = &w - &m;
    (Natural::from(m), Natural::from(n))
}

fn rc(f: PRFun) -> Rc<PRFun> {
    Rc::new(f)
}

fn p(k: usize, i: usize) -> Rc<PRFun> {
    rc(PRFun::Proj(k, i))
}

fn c(k: usize, v: u64) -> Rc<PRFun> {
    rc(PRFun::constant(k, v))
}

fn comp(o: &Rc<PRFun>, gs: &[&Rc<PRFun>]) -> Rc<PRFun> {
    rc(PRFun::Comp(o.clone(), gs.iter().map(|g| (*g).clone()).collect()))
}

fn rec(g: &Rc<PRFun>, h: &Rc<PRFun>) -> Rc<PRFun> {
    rc(PRFun::PrimRec(g.clone(), h.clone()))
}

/// Fixed-arity building blocks used by extracted programs.
pub struct Helpers {
    pub succ: Rc<PRFun>,
    /// `add(n, x) = n + x`
    pub add: Rc<PRFun>,
    pub pred: Rc<PRFun>,
    /// `sub(x, y) = x - y`, truncated
    pub sub: Rc<PRFun>,
    pub is_zero: Rc<PRFun>,
    /// 1 when the arguments are equal, 0 otherwise
    pub eq: Rc<PRFun>,
    /// `mult(n, x) = n x`
    pub mult: Rc<PRFun>,
    /// `tri(s) = s (s + 1) / 2`
    pub tri: Rc<PRFun>,
    pub pair: Rc<PRFun>,
    /// Largest `w` with `tri(w) <= p`
    pub diag: Rc<PRFun>,
    pub fst: Rc<PRFun>,
    pub snd: Rc<PRFun>,
    pub double: Rc<PRFun>,
    pub double_succ: Rc<PRFun>,
    pub half: Rc<PRFun>,
    pub parity: Rc<PRFun>,
    /// `select(b, l, r)` is `l` when `b = 0` and `r` otherwise
    pub select: Rc<PRFun>,
}

impl Helpers {
    pub fn new() -> Self {
        let succ = rc(PRFun::Succ);
        let add = rec(&p(1, 0), &comp(&succ, &[&p(3, 1)]));
        let pred = rec(&c(0, 0), &p(2, 0));
        let sub_rev = rec(&p(1, 0), &comp(&pred, &[&p(3, 1)]));
        let sub = comp(&sub_rev, &[&p(2, 1), &p(2, 0)]);
        let is_zero = rec(&c(0, 1), &c(2, 0));
        let sum_diffs = comp(&add, &[&comp(&sub, &[&p(2, 0), &p(2, 1)]), &comp(&sub, &[&p(2, 1), &p(2, 0)])]);
        let eq = comp(&is_zero, &[&sum_diffs]);
        let tri = rec(&c(0, 0), &comp(&add, &[&comp(&succ, &[&p(2, 0)]), &p(2, 1)]));
        let pair = comp(&add, &[&p(2, 0), &comp(&tri, &[&comp(&add, &[&p(2, 0), &p(2, 1)])])]);
        // diag(i + 1) = diag(i) + [i + 1 = tri(diag(i) + 1)]
        let mult = rec(&c(1, 0), &comp(&add, &[&p(3, 2), &p(3, 1)]));
        let double = comp(&add, &[&p(1, 0), &p(1, 0)]);
        // The diagonal grows at i + 1 exactly when 2(i + 1) = (d + 1)(d + 2).
        let d1 = comp(&succ, &[&p(2, 1)]);
        let next_diag =
            comp(&eq, &[&comp(&double, &[&comp(&succ, &[&p(2, 0)])]), &comp(&mult, &[&d1, &comp(&succ, &[&d1])])]);
        let diag = rec(&c(0, 0), &comp(&add, &[&next_diag, &p(2, 1)]));
        let fst = comp(&sub, &[&p(1, 0), &comp(&tri, &[&diag])]);
        let snd = comp(&sub, &[&diag, &fst]);
        let double_succ = comp(&succ, &[&double]);
        // half(i + 1) = i - half(i)
        let half = rec(&c(0, 0), &comp(&sub, &[&p(2, 0), &p(2, 1)]));
        let parity = rec(&c(0, 0), &comp(&is_zero, &[&p(2, 1)]));
        let select = rec(&p(2, 0), &p(4, 3));
        Helpers {
            succ,
            add,
            pred,
            sub,
            is_zero,
            eq,
            mult,
            tri,
            pair,
            diag,
            fst,
            snd,
            double,
            double_succ,
            half,
            parity,
            select,
        }
    }
}

impl Default for Helpers {
    fn default() -> Self {
        Helpers::new()
    }
}
