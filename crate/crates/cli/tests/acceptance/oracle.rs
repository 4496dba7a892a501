//! Native reference computations.

use std::cmp::Ordering;

/// The pairing order, enumerated: `(0,0), (0,1), (1,0), (0,2), (1,1), ...`.
pub fn pairs_in_order(count: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(count);
    let mut s = 0u64;
    'outer: loop {
        for m in 0..=s {
            if out.len() == count {
                break 'outer;
            }
            out.push((m, s - m));
        }
        s += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

/// Decodes trees from codes `0..count`: 0 is the leaf and `c + 1` is the
/// node whose children are the `c`-th pair.
pub struct Trees {
    pairs: Vec<(u64, u64)>,
}

impl Trees {
    pub fn new(count: usize) -> Self {
        Trees { pairs: pairs_in_order(count) }
    }

    pub fn children(&self, code: u64) -> Option<(u64, u64)> {
        (code > 0).then(|| self.pairs[code as usize - 1])
    }

    pub fn unrank(&self, code: u64) -> Tree {
        match self.children(code) {
            None => Tree::Leaf,
            Some((l, r)) => Tree::Node(Box::new(self.unrank(l)), Box::new(self.unrank(r))),
        }
    }
}

pub fn cmp(a: &Tree, b: &Tree) -> Ordering {
    match (a, b) {
        (Tree::Leaf, Tree::Leaf) => Ordering::Equal,
        (Tree::Leaf, _) => Ordering::Less,
        (_, Tree::Leaf) => Ordering::Greater,
        (Tree::Node(l1, r1), Tree::Node(l2, r2)) => cmp(l1, l2).then_with(|| cmp(r1, r2)),
    }
}

/// `ω^a + b` with `a` and `b` in normal form and `b`'s leading exponent at most `a`.
pub fn is_cnf(t: &Tree) -> bool {
    match t {
        Tree::Leaf => true,
        Tree::Node(a, b) => {
            let ordered = match &**b {
                Tree::Leaf => true,
                Tree::Node(c, _) => cmp(c, a) != Ordering::Greater,
            };
            ordered && is_cnf(a) && is_cnf(b)
        }
    }
}

pub fn ackermann(m: u64, n: u64) -> u64 {
    match (m, n) {
        (0, n) => n + 1,
        (m, 0) => ackermann(m - 1, 1),
        (m, n) => ackermann(m - 1, ackermann(m, n - 1)),
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    // Largest common divisor by search, with gcd(0, 0) = 0.
    (1..=a.max(b)).rev().find(|&d| a.is_multiple_of(d) && b.is_multiple_of(d)).unwrap_or(0)
}
