//! The property suite behind `prtt test`: every corpus definition is
//! checked, closed naturals must normalize to numerals, first-order
//! functions are extracted and compared pointwise against evaluation (and
//! against native references for the functions the corpus is known to
//! define), and seeded generated terms and programs are swept the same way.

use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use prtt_checker::generate::TermGen;
use prtt_core::{Natural, Term};
use prtt_extract::{close, compare, grid, Extractor};
use prtt_nbe::Nbe;
use prtt_prir::{generate, to_prtt, Evaluator, PRFun};
use serde_json::json;

use crate::commands::{check_decl, checker, function_arity, load};
use crate::{CliError, SCHEMA};

const MAX_DETAILS: usize = 3;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub dir: PathBuf,
    pub grid: u64,
    pub seed: u64,
    pub samples: usize,
    pub step_budget: u64,
    pub pr_budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub property: &'static str,
    pub subject: String,
    pub points: usize,
    pub failures: usize,
    pub details: Vec<String>,
}

impl Row {
    fn new(property: &'static str, subject: impl Into<String>) -> Self {
        Row { property, subject: subject.into(), points: 0, failures: 0, details: vec![] }
    }

    fn pass(&mut self) {
        self.points += 1;
    }

    fn fail(&mut self, detail: impl FnOnce() -> String) {
        self.points += 1;
        self.failures += 1;
        if self.details.len() < MAX_DETAILS {
            self.details.push(detail());
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: SuiteConfig,
    pub rows: Vec<Row>,
    pub warnings: Vec<String>,
}

impl Report {
    /// Properties (rows) with at least one failing point.
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.failures > 0).count()
    }

    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "prtt test report (schema {SCHEMA})\ncorpus {}  grid {}  seed {}  samples {}  step-budget {}  pr-budget {}\n\n",
            c.dir.display(),
            c.grid,
            c.seed,
            c.samples,
            c.step_budget,
            c.pr_budget
        );
        let width = self.rows.iter().map(|r| r.subject.len()).max().unwrap_or(7).max(7);
        out.push_str(&format!("{:<13} {:<width$} {:>8} {:>8}\n", "property", "subject", "points", "failures"));
        for r in &self.rows {
            out.push_str(&format!("{:<13} {:<width$} {:>8} {:>8}\n", r.property, r.subject, r.points, r.failures));
        }
        for r in self.rows.iter().filter(|r| r.failures > 0) {
            for d in &r.details {
                out.push_str(&format!("FAIL {} {}: {d}\n", r.property, r.subject));
            }
        }
        let points: usize = self.rows.iter().map(|r| r.points).sum();
        out.push_str(&format!("\n{} properties, {} points, {} failed\n", self.rows.len(), points, self.failures()));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let c = &self.config;
        json!({
            "schema": SCHEMA,
            "command": "test",
            "corpus": c.dir.to_string_lossy(),
            "grid": c.grid,
            "seed": c.seed,
            "samples": c.samples,
            "step_budget": c.step_budget,
            "pr_budget": c.pr_budget,
            "properties": self.rows.iter().map(|r| json!({
                "property": r.property,
                "subject": r.subject,
                "points": r.points,
                "failures": r.failures,
                "details": r.details,
            })).collect::<Vec<_>>(),
            "failed": self.failures(),
            "warnings": self.warnings,
        })
    }
}

/// Seed of the `i`-th generated sample.
fn sample_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

fn show(r: &Result<Natural, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error ({e})"),
    }
}

fn tuple(args: &[u64]) -> String {
    let parts: Vec<String> = args.iter().map(u64::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn run(cfg: &SuiteConfig) -> Result<Report, CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(&cfg.dir)
        .map_err(|source| CliError::Io { path: cfg.dir.clone(), source })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "prtt"))
        .collect();
    files.sort();
    let mut report = Report { config: cfg.clone(), rows: vec![], warnings: vec![] };
    for file in &files {
        corpus_file(cfg, file, &mut report.rows);
    }
    if report.rows.is_empty() {
        report.warnings.push(format!("0 properties in corpus {}", cfg.dir.display()));
    }
    generated(cfg, &mut report.rows);
    Ok(report)
}

fn corpus_file(cfg: &SuiteConfig, file: &Path, rows: &mut Vec<Row>) {
    let short = file.file_name().map_or_else(|| file.display().to_string(), |n| n.to_string_lossy().into_owned());
    let scope = match load(file) {
        Ok(s) => s,
        Err(e) => {
            let mut row = Row::new("load", short);
            row.fail(|| e.to_string());
            rows.push(row);
            return;
        }
    };
    let origin = file.to_string_lossy();
    let checker = checker(cfg.step_budget);
    for c in scope.decls() {
        if scope.span(&c.name).is_some_and(|s| *s.file != *origin) {
            continue;
        }
        let subject = format!("{short}:{}", c.name);
        let mut row = Row::new("check", subject.clone());
        let ty = match check_decl(&checker, &scope, c) {
            Ok(ty) => {
                row.pass();
                rows.push(row);
                ty
            }
            Err(e) => {
                row.fail(|| e.to_string());
                rows.push(row);
                continue;
            }
        };
        match function_arity(&ty) {
            Some(0) => {
                let mut row = Row::new("canonicity", subject);
                match Nbe::new(cfg.step_budget).canonical_nat(&Term::Const(c.clone())) {
                    Ok(_) => row.pass(),
                    Err(e) => row.fail(|| e.to_string()),
                }
                rows.push(row);
            }
            Some(k) => {
                let body = Term::apps(Term::Const(c.clone()), (0..k).rev().map(Term::Var));
                let points = grid(k, cfg.grid);
                rows.push(differential(cfg, &subject, k, &body, &points));
                if let Some(reference) = reference(&c.name, k) {
                    rows.push(against_reference(cfg, &subject, &body, &points, reference));
                }
            }
            None => {}
        }
    }
}

fn differential(cfg: &SuiteConfig, subject: &str, k: usize, body: &Term, points: &[Vec<u64>]) -> Row {
    let mut row = Row::new("differential", subject);
    let extractor = Extractor::with_checker(checker(cfg.step_budget));
    match extractor.extract(k, body) {
        Ok(program) => record(&mut row, compare(&program, body, points, cfg.step_budget, cfg.pr_budget)),
        Err(e) => row.fail(|| format!("extraction failed: {e}")),
    }
    row
}

fn record(row: &mut Row, report: prtt_extract::DiffReport) {
    row.points += report.points - report.mismatches.len();
    for m in report.mismatches {
        row.fail(|| {
            format!("at {}: term gives {}, program gives {}", tuple(&m.args), show(&m.expected), show(&m.actual))
        });
    }
}

fn against_reference(cfg: &SuiteConfig, subject: &str, body: &Term, points: &[Vec<u64>], f: Reference) -> Row {
    let mut row = Row::new("reference", subject);
    for args in points {
        let got = Nbe::new(cfg.step_budget).canonical_nat(&close(body, args)).map_err(|e| e.to_string());
        let want = Natural::from(f(args));
        if got.as_ref() == Ok(&want) {
            row.pass();
        } else {
            row.fail(|| format!("at {}: expected {want}, got {}", tuple(args), show(&got)));
        }
    }
    row
}

fn generated(cfg: &SuiteConfig, rows: &mut Vec<Row>) {
    let n = cfg.samples;
    let mut canon = Row::new("canonicity", format!("{n} generated closed terms"));
    for i in 0..n {
        let t = TermGen::new(sample_seed(cfg.seed, i)).nat_term(0, 60);
        match Nbe::new(cfg.step_budget).canonical_nat(&t) {
            Ok(_) => canon.pass(),
            Err(e) => canon.fail(|| format!("sample {i}: {e}")),
        }
    }
    rows.push(canon);

    let mut diff = Row::new("differential", format!("{n} generated functions"));
    let points = grid(2, cfg.grid);
    for i in 0..n {
        let body = TermGen::new(sample_seed(cfg.seed, i)).nat_term(2, 40);
        let extractor = Extractor::with_checker(checker(cfg.step_budget));
        match extractor.extract(2, &body) {
            Ok(program) => record(&mut diff, compare(&program, &body, &points, cfg.step_budget, cfg.pr_budget)),
            Err(e) => diff.fail(|| format!("sample {i}: extraction failed: {e}")),
        }
    }
    rows.push(diff);

    let mut trip = Row::new("roundtrip", format!("{n} generated programs"));
    for i in 0..n {
        let f = generate(sample_seed(cfg.seed, i), 4, 3);
        roundtrip(cfg, i, &f, &mut trip);
    }
    rows.push(trip);
}

fn roundtrip(cfg: &SuiteConfig, i: usize, f: &PRFun, row: &mut Row) {
    let k = match f.arity() {
        Ok(k) => k,
        Err(e) => return row.fail(|| format!("program {i}: {e}")),
    };
    let term = match to_prtt(f) {
        Ok(t) => t,
        Err(e) => return row.fail(|| format!("program {i}: {e}")),
    };
    let body = Term::apps(term, (0..k).rev().map(Term::Var));
    let back = match Extractor::with_checker(checker(cfg.step_budget)).extract(k, &body) {
        Ok(p) => p,
        Err(e) => return row.fail(|| format!("program {i}: extraction failed: {e}")),
    };
    for args in grid(k, cfg.grid) {
        let input: Vec<Natural> = args.iter().map(|&a| Natural::from(a)).collect();
        let want = Evaluator::new(cfg.pr_budget).eval(f, &input).map_err(|e| e.to_string());
        let got = Evaluator::new(cfg.pr_budget).eval(&back, &input).map_err(|e| e.to_string());
        if want.is_ok() && want == got {
            row.pass();
        } else {
            row.fail(|| {
                format!("program {i} at {}: original {}, round trip {}", tuple(&args), show(&want), show(&got))
            });
        }
    }
}

type Reference = fn(&[u64]) -> BigUint;

/// Native meanings of corpus functions, keyed by name and arity.
fn reference(name: &str, arity: usize) -> Option<Reference> {
    let f: Reference = match (name, arity) {
        ("add", 2) => |a| BigUint::from(a[0]) + a[1],
        ("mult", 2) => |a| BigUint::from(a[0]) * a[1],
        ("exp", 2) => |a| BigUint::from(a[0]).pow(a[1] as u32),
        ("pred", 1) => |a| a[0].saturating_sub(1).into(),
        ("sub", 2) => |a| a[0].saturating_sub(a[1]).into(),
        ("isZero", 1) => |a| ((a[0] == 0) as u64).into(),
        ("cond", 3) => |a| if a[0] == 0 { a[2] } else { a[1] }.into(),
        ("eqb", 2) => |a| ((a[0] == a[1]) as u64).into(),
        ("leq", 2) => |a| ((a[0] <= a[1]) as u64).into(),
        ("max", 2) => |a| a[0].max(a[1]).into(),
        ("mod", 2) => |a| if a[1] == 0 { a[0] } else { a[0] % a[1] }.into(),
        ("divides", 2) => |a| (((if a[0] == 0 { a[1] } else { a[1] % a[0] }) == 0) as u64).into(),
        ("gcd", 2) => |a| gcd(a[0], a[1]).into(),
        ("double", 1) => |a| (2 * a[0]).into(),
        ("fact", 1) => |a| (1..=a[0]).map(BigUint::from).product(),
        ("tri", 1) => |a| (a[0] * (a[0] + 1) / 2).into(),
        ("pair", 2) => |a| ((a[0] + a[1]) * (a[0] + a[1] + 1) / 2 + a[0]).into(),
        ("left", 1) => |a| unpair(a[0].saturating_sub(1)).0.into(),
        ("right", 1) => |a| unpair(a[0].saturating_sub(1)).1.into(),
        ("half", 1) => |a| (a[0] / 2).into(),
        ("parity", 1) => |a| (a[0] % 2).into(),
        ("halves", 2) => |a| a[1].checked_shr(a[0] as u32).unwrap_or(0).into(),
        ("cmp", 2) => |a| match tree::cmp(&tree::unrank(a[0]), &tree::unrank(a[1])) {
            std::cmp::Ordering::Equal => 0u64.into(),
            std::cmp::Ordering::Less => 1u64.into(),
            std::cmp::Ordering::Greater => 2u64.into(),
        },
        ("cnf_lt_nat", 2) => |a| ((tree::cmp(&tree::unrank(a[0]), &tree::unrank(a[1])).is_lt()) as u64).into(),
        ("localOk", 1) => |a| (tree::unrank(a[0]).locally_ok() as u64).into(),
        ("isCNF", 1) => |a| (tree::unrank(a[0]).is_cnf() as u64).into(),
        _ => return None,
    };
    Some(f)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn unpair(p: u64) -> (u64, u64) {
    let mut w = 0;
    while (w + 1) * (w + 2) / 2 <= p {
        w += 1;
    }
    let m = p - w * (w + 1) / 2;
    (m, w - m)
}

/// Binary trees under the coding `0 = leaf`, `c + 1 = node(unpair c)`.
mod tree {
    use std::cmp::Ordering;

    pub enum Tree {
        Leaf,
        Node(Box<Tree>, Box<Tree>),
    }

    pub fn unrank(code: u64) -> Tree {
        match code {
            0 => Tree::Leaf,
            c => {
                let (l, r) = super::unpair(c - 1);
                Tree::Node(Box::new(unrank(l)), Box::new(unrank(r)))
            }
        }
    }

    /// The leaf is least; nodes compare by left child, then right.
    pub fn cmp(a: &Tree, b: &Tree) -> Ordering {
        match (a, b) {
            (Tree::Leaf, Tree::Leaf) => Ordering::Equal,
            (Tree::Leaf, _) => Ordering::Less,
            (_, Tree::Leaf) => Ordering::Greater,
            (Tree::Node(l1, r1), Tree::Node(l2, r2)) => cmp(l1, l2).then_with(|| cmp(r1, r2)),
        }
    }

    impl Tree {
        /// `node(a, b)` read as `ω^a + b` needs `b`'s leading exponent at most `a`.
        pub fn locally_ok(&self) -> bool {
            match self {
                Tree::Node(a, b) => match &**b {
                    Tree::Node(c, _) => cmp(c, a) != Ordering::Greater,
                    Tree::Leaf => true,
                },
                Tree::Leaf => true,
            }
        }

        pub fn is_cnf(&self) -> bool {
            match self {
                Tree::Leaf => true,
                Tree::Node(a, b) => self.locally_ok() && a.is_cnf() && b.is_cnf(),
            }
        }
    }
}
