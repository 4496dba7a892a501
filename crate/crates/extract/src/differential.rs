use prtt_core::{subst, Natural, Term};
use prtt_nbe::{Nbe, DEFAULT_STEP_BUDGET};
use prtt_prir::{Evaluator, PRFun, DEFAULT_PR_BUDGET};

use crate::ExtractError;

/// All tuples in `{0..=bound}^k`, lexicographically.
pub fn grid(k: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=bound).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub args: Vec<u64>,
    /// Canonical value of the term, or the evaluation error.
    pub expected: Result<Natural, String>,
    /// Output of the program, or the evaluation error.
    pub actual: Result<Natural, String>,
}

#[derive(Debug, Clone, Default)]
pub struct DiffReport {
    pub points: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Close `body` over `args.len()` Nat variables, the first argument
/// replacing the outermost one.
pub fn close(body: &Term, args: &[u64]) -> Term {
    args.iter().rev().fold(body.clone(), |t, &a| subst(&t, 0, &Term::numeral(a)))
}

/// Extract `body` over `k` variables and compare at each point with the
/// default budgets.
pub fn differential_test(k: usize, body: &Term, points: &[Vec<u64>]) -> Result<DiffReport, ExtractError> {
    let program = crate::extract(k, body)?;
    Ok(compare(&program, body, points, DEFAULT_STEP_BUDGET, DEFAULT_PR_BUDGET))
}

/// Compare `program` against canonical evaluation of `body` at each point.
pub fn compare(program: &PRFun, body: &Term, points: &[Vec<u64>], step_budget: u64, pr_budget: u64) -> DiffReport {
    let mut report = DiffReport::default();
    for args in points {
        report.points += 1;
        let closed = close(body, args);
        let expected = Nbe::new(step_budget).canonical_nat(&closed).map_err(|e| e.to_string());
        let input: Vec<Natural> = args.iter().map(|&a| Natural::from(a)).collect();
        let actual = Evaluator::new(pr_budget).eval(program, &input).map_err(|e| e.to_string());
        if expected.is_err() || actual.is_err() || expected != actual {
            report.mismatches.push(Mismatch { args: args.clone(), expected, actual });
        }
    }
    report
}
