//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL
//! line; the process fails if any criterion does.

mod oracle;
mod reduce;

use std::path::{Path, PathBuf};
use std::rc::Rc;
use std::time::Instant;

use prtt_checker::generate::{SimpleType, TermGen};
use prtt_checker::{Checker, Config};
use prtt_core::{Constant, Context, Level, Natural, Term};
use prtt_extract::{differential_test, grid, pair, unpair, Extractor};
use prtt_nbe::Nbe;
use prtt_parser::Scope;
use prtt_prir::{generate, to_prtt, Evaluator};

use oracle::Trees;
use reduce::Reducer;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn load(name: &str) -> Result<Scope, String> {
    prtt_parser::load(&corpus(name)).map_err(|e| e.to_string())
}

fn get(scope: &Scope, name: &str) -> Result<Rc<Constant>, String> {
    scope.get(name).cloned().ok_or_else(|| format!("corpus has no `{name}`"))
}

fn nat(n: u64) -> Term {
    Term::numeral(n)
}

fn apps(c: &Rc<Constant>, args: &[u64]) -> Term {
    Term::apps(Term::Const(c.clone()), args.iter().map(|&a| nat(a)))
}

fn canon(t: &Term) -> Result<u64, String> {
    let n = Nbe::default().canonical_nat(t).map_err(|e| e.to_string())?;
    n.to_u64().ok_or_else(|| format!("{n} does not fit in u64"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every generated closed natural and every closed natural in the corpus
/// normalizes to a numeral.
fn canonicity() -> Outcome {
    for seed in 0..1000u64 {
        let t = TermGen::new(seed).nat_term(0, 60);
        ensure(t.size() <= 60, || format!("seed {seed}: size {}", t.size()))?;
        Nbe::default().canonical_nat(&t).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    let checker = Checker::default();
    let mut decls = 0;
    for file in ["arith.prtt", "cnf.prtt"] {
        let scope = load(file)?;
        for c in scope.decls() {
            let ty = checker.check_constant(c).map_err(|e| format!("{}: {e}", c.name))?;
            if ty == Term::Nat {
                Nbe::default().canonical_nat(&Term::Const(c.clone())).map_err(|e| format!("{}: {e}", c.name))?;
                decls += 1;
            }
        }
    }
    ensure(decls > 0, || "no closed natural declarations in the corpus".into())?;
    Ok(format!("1000 generated terms and {decls} corpus declarations are numerals"))
}

/// Extracted programs agree with normalization on full grids, and both agree
/// with native arithmetic.
fn soundness() -> Outcome {
    let arith = load("arith.prtt")?;
    let cnf = load("cnf.prtt")?;
    let trees = Trees::new(64);
    let lt = |a: u64, b: u64| oracle::cmp(&trees.unrank(a), &trees.unrank(b)).is_lt() as u64;
    type Native<'a> = Box<dyn Fn(u64, u64) -> u64 + 'a>;
    let cases: Vec<(&Scope, &str, u64, Native)> = vec![
        (&arith, "add", 10, Box::new(|a, b| a + b)),
        (&arith, "mult", 10, Box::new(|a, b| a * b)),
        (&arith, "exp", 5, Box::new(|a, b| a.pow(b as u32))),
        (&arith, "gcd", 10, Box::new(oracle::gcd)),
        (&cnf, "cnf_lt_nat", 10, Box::new(lt)),
    ];
    let mut points = 0;
    for (scope, name, bound, native) in &cases {
        let c = get(scope, name)?;
        let body = Term::apps(Term::Const(c.clone()), [Term::Var(1), Term::Var(0)]);
        let report = differential_test(2, &body, &grid(2, *bound)).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.passed(), || format!("{name}: {:?}", report.mismatches.first()))?;
        for p in grid(2, *bound) {
            let got = canon(&apps(&c, &p))?;
            ensure(got == native(p[0], p[1]), || format!("{name}{p:?} = {got}"))?;
        }
        points += report.points;
    }
    let pred = get(&arith, "pred")?;
    let body = Term::app(Term::Const(pred.clone()), Term::Var(0));
    let report = differential_test(1, &body, &grid(1, 10)).map_err(|e| format!("pred: {e}"))?;
    ensure(report.passed(), || format!("pred: {:?}", report.mismatches.first()))?;
    for n in 0..=10 {
        ensure(canon(&apps(&pred, &[n]))? == n.saturating_sub(1), || format!("pred {n}"))?;
    }
    points += report.points;

    for seed in 0..200u64 {
        let k = 1 + (seed % 2) as usize;
        let body = TermGen::new(seed).nat_term(k, 40);
        let report = differential_test(k, &body, &grid(k, 10)).map_err(|e| format!("generated {seed}: {e}"))?;
        ensure(report.passed(), || format!("generated {seed}: {:?}", report.mismatches.first()))?;
        points += report.points;
    }
    Ok(format!("6 corpus functions and 200 generated terms agree on {points} points"))
}

/// Generated programs survive translation into terms and extraction back.
fn completeness() -> Outcome {
    let checker = Checker::default();
    let mut points = 0;
    for seed in 0..200u64 {
        let f = generate(seed, 4, 3);
        ensure(f.depth() <= 4, || format!("program {seed} has depth {}", f.depth()))?;
        let k = f.arity().map_err(|e| format!("program {seed}: {e}"))?;
        ensure(k <= 3, || format!("program {seed} has arity {k}"))?;
        let term = to_prtt(&f).map_err(|e| format!("program {seed}: {e}"))?;
        let ty = (0..k).fold(Term::Nat, |acc, _| Term::arrow(Term::Nat, acc));
        checker.check(&Context::new(), &term, &ty).map_err(|e| format!("program {seed}: {e}"))?;
        let body = Term::apps(term, (0..k).rev().map(Term::Var));
        let back = Extractor::new().extract(k, &body).map_err(|e| format!("program {seed}: {e}"))?;
        for args in grid(k, 6) {
            let input: Vec<Natural> = args.iter().map(|&a| Natural::from(a)).collect();
            let want = Evaluator::new(u64::MAX).eval(&f, &input).map_err(|e| e.to_string())?;
            let got = Evaluator::new(u64::MAX).eval(&back, &input).map_err(|e| e.to_string())?;
            ensure(want == got, || format!("program {seed} at {args:?}: {want} vs {got}"))?;
            points += 1;
        }
    }
    Ok(format!("200 programs round-trip on {points} points"))
}

/// Function types over small types are large, and eliminating into a large
/// family is refused unless the gate is switched off.
fn restriction() -> Outcome {
    let checker = Checker::default();
    let ctx = Context::new();
    for seed in 0..100u64 {
        let mut g = TermGen::new(seed);
        let (a, b) = (g.u0_type(3), g.u0_type(3));
        for t in [&a, &b] {
            let level = checker.infer(&ctx, t).map_err(|e| e.to_string())?.ty;
            ensure(level == Term::Univ(Level::ZERO), || format!("seed {seed}: {t} : {level}"))?;
        }
        let pi = Term::arrow(a, b);
        let level = checker.infer(&ctx, &pi).map_err(|e| e.to_string())?.ty;
        ensure(level == Term::Univ(Level::ONE), || format!("seed {seed}: {pi} : {level}"))?;
    }

    let scope = prtt_parser::load(&corpus("negative/ackermann.prtt")).map_err(|e| e.to_string())?;
    let ack = get(&scope, "ack")?;
    match checker.check_constant(&ack) {
        Err(e) if e.kind().map(|k| k.as_str()) == Some("MotiveNotInU0") => {}
        other => return Err(format!("ack was not refused for its motive: {other:?}")),
    }

    let lax = Checker::new(Config { motive_gate: false, ..Config::default() });
    for c in scope.decls() {
        lax.check_constant(c).map_err(|e| format!("gate off, {}: {e}", c.name))?;
    }
    let v = canon(&apps(&ack, &[2, 2]))?;
    ensure(v == oracle::ackermann(2, 2), || format!("ack 2 2 = {v}"))?;
    Ok("100 function types live in U1; ack refused, and accepted with the gate off".into())
}

fn tree_value(trees: &Trees, code: u64) -> Term {
    match trees.children(code) {
        None => Term::inl(Term::Star),
        Some((l, r)) => Term::inr(Term::pair(nat(l), nat(r))),
    }
}

/// Ordinal notations: the tree isomorphism and the order on normal forms.
fn cnf() -> Outcome {
    const N: u64 = 200;
    let scope = load("cnf.prtt")?;
    let (to, from) = (get(&scope, "toTree")?, get(&scope, "fromTree")?);
    let (is_cnf, lt) = (get(&scope, "isCNF")?, get(&scope, "cnf_lt_nat")?);
    let trees = Trees::new(N as usize);
    let tree_ty = Term::sum(Term::Unit, Term::product(Term::Nat, Term::Nat));
    let nbe = Nbe::default();

    for c in 0..N {
        let t = nbe.normalize(&Context::new(), &apps(&to, &[c]), &tree_ty).map_err(|e| e.to_string())?;
        ensure(t == tree_value(&trees, c), || format!("toTree {c} = {t}"))?;
        let back = Term::app(Term::Const(from.clone()), tree_value(&trees, c));
        ensure(canon(&back)? == c, || format!("fromTree (toTree {c}) differs"))?;
        let round = Term::app(Term::Const(from.clone()), apps(&to, &[c]));
        ensure(canon(&round)? == c, || format!("fromTree (toTree {c}) differs"))?;
        let again = Term::app(Term::Const(to.clone()), back);
        let t2 = nbe.normalize(&Context::new(), &again, &tree_ty).map_err(|e| e.to_string())?;
        ensure(t2 == tree_value(&trees, c), || format!("toTree (fromTree t) for code {c} = {t2}"))?;
    }

    let mut normal = Vec::new();
    for c in 0..N {
        let want = oracle::is_cnf(&trees.unrank(c));
        let got = canon(&apps(&is_cnf, &[c]))?;
        ensure(got == want as u64, || format!("isCNF {c} = {got}"))?;
        if want {
            normal.push(c);
        }
    }

    let n = normal.len();
    let mut less = vec![vec![false; n]; n];
    for (i, &a) in normal.iter().enumerate() {
        for (j, &b) in normal.iter().enumerate() {
            let v = canon(&apps(&lt, &[a, b]))?;
            ensure(v <= 1, || format!("cnf_lt_nat {a} {b} = {v}"))?;
            less[i][j] = v == 1;
            let want = oracle::cmp(&trees.unrank(a), &trees.unrank(b)).is_lt();
            ensure(less[i][j] == want, || format!("cnf_lt_nat {a} {b} disagrees with the tree order"))?;
        }
    }
    for i in 0..n {
        ensure(!less[i][i], || format!("{} < {}", normal[i], normal[i]))?;
        for j in 0..n {
            ensure(i == j || less[i][j] != less[j][i], || format!("trichotomy fails at {} {}", normal[i], normal[j]))?;
            for k in 0..n {
                ensure(!(less[i][j] && less[j][k]) || less[i][k], || {
                    format!("transitivity fails at {} {} {}", normal[i], normal[j], normal[k])
                })?;
            }
        }
    }
    Ok(format!("isomorphism on codes < {N}; order strict and total on {n} normal forms"))
}

fn pairing() -> Outcome {
    let order = oracle::pairs_in_order(20_301);
    for (code, &(m, n)) in order.iter().enumerate() {
        let (m, n, code) = (Natural::from(m), Natural::from(n), Natural::from(code as u64));
        ensure(pair(&m, &n) == code, || format!("pair({m}, {n}) != {code}"))?;
    }
    for m in 0..=100u64 {
        for n in 0..=100u64 {
            let (m, n) = (Natural::from(m), Natural::from(n));
            ensure(unpair(&pair(&m, &n)) == (m.clone(), n.clone()), || format!("unpair(pair({m}, {n}))"))?;
        }
    }
    for p in 0..=5000u64 {
        let p = Natural::from(p);
        let (m, n) = unpair(&p);
        ensure(pair(&m, &n) == p, || format!("pair(unpair({p}))"))?;
        let i: usize = p.to_u64().unwrap() as usize;
        ensure((m.to_u64(), n.to_u64()) == (Some(order[i].0), Some(order[i].1)), || format!("unpair({p})"))?;
    }
    Ok("unpair . pair = id on 101^2 and pair . unpair = id on 0..=5000".into())
}

fn simple(ty: &Term) -> Option<SimpleType> {
    Some(match ty {
        Term::Nat => SimpleType::Nat,
        Term::Unit => SimpleType::Unit,
        Term::Empty => SimpleType::Empty,
        Term::Pi(a, b) => SimpleType::Arrow(Box::new(simple(a)?), Box::new(simple(b)?)),
        Term::Sigma(a, b) => SimpleType::Prod(Box::new(simple(a)?), Box::new(simple(b)?)),
        Term::Sum(a, b) => SimpleType::Sum(Box::new(simple(a)?), Box::new(simple(b)?)),
        _ => return None,
    })
}

fn inhabited(ty: &SimpleType) -> bool {
    match ty {
        SimpleType::Nat | SimpleType::Unit => true,
        SimpleType::Empty => false,
        SimpleType::Prod(a, b) => inhabited(a) && inhabited(b),
        SimpleType::Sum(a, b) => inhabited(a) || inhabited(b),
        SimpleType::Arrow(a, b) => !inhabited(a) || inhabited(b),
    }
}

/// Compares the normalizer and the reducer on `t : ty`. Small types are
/// compared by normal form; functions by applying them to generated
/// arguments, pairs and injections through their components.
fn observe(t: &Term, ty: &SimpleType, gen: &mut TermGen, seen: &mut usize) -> Result<(), String> {
    let normal = Nbe::default().normalize(&Context::new(), t, &ty.to_term()).map_err(|e| e.to_string())?;
    let value = Reducer::new(10_000_000).eval(t).map_err(|e| format!("reducer: {e:?}"))?;
    if ty.is_small() {
        *seen += 1;
        return ensure(normal == value, || format!("{t}: normalizer gives {normal}, reducer {value}"));
    }
    match (ty, &value) {
        (SimpleType::Arrow(a, b), Term::Lam(..)) => {
            ensure(matches!(normal, Term::Lam(..)), || format!("{t}: normal form {normal} is not a function"))?;
            if inhabited(a) {
                for _ in 0..3 {
                    let arg = gen.term_of(a, &mut vec![], 3);
                    observe(&Term::app(t.clone(), arg), b, gen, seen)?;
                }
            }
            Ok(())
        }
        (SimpleType::Prod(a, b), _) => {
            observe(&Term::fst(t.clone()), a, gen, seen)?;
            observe(&Term::snd(t.clone()), b, gen, seen)
        }
        (SimpleType::Sum(a, b), Term::Inl(v) | Term::Inr(v)) => {
            let left = matches!(value, Term::Inl(_));
            ensure(matches!(normal, Term::Inl(_)) == left, || format!("{t}: injections differ"))?;
            let side = if left { a } else { b };
            // Project the payload with the reducer's own payload as the
            // fallback for the other branch.
            let (lcase, rcase) = if left { (Term::Var(0), (**v).clone()) } else { ((**v).clone(), Term::Var(0)) };
            let proj = Term::sum_ind(side.to_term(), lcase, rcase, t.clone());
            observe(&proj, side, gen, seen)
        }
        _ => Err(format!("{t}: reducer value {value} does not fit its type")),
    }
}

fn nbe_vs_reducer() -> Outcome {
    let mut seen = 0;
    for seed in 0..500u64 {
        let mut g = TermGen::new(seed);
        let (t, ty) = g.closed_term(50);
        let st = simple(&ty).ok_or_else(|| format!("sample {seed}: unexpected type {ty}"))?;
        observe(&t, &st, &mut g, &mut seen).map_err(|e| format!("sample {seed}: {e}"))?;
        let n = g.nat_term(0, 50);
        observe(&n, &SimpleType::Nat, &mut g, &mut seen).map_err(|e| format!("sample {seed}: {e}"))?;
    }
    Ok(format!("500 typed samples and 500 naturals agree on {seen} ground observations"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("canonicity", canonicity),
        ("soundness differential", soundness),
        ("completeness round trip", completeness),
        ("restriction enforcement", restriction),
        ("ordinal notations", cnf),
        ("pairing bijection", pairing),
        ("normalizer vs reducer", nbe_vs_reducer),
    ];
    let failed = std::thread::Builder::new()
        .stack_size(1 << 30)
        .spawn(move || {
            let mut failed = 0;
            for (i, (name, run)) in criteria.iter().enumerate() {
                let start = Instant::now();
                let outcome = run();
                let secs = start.elapsed().as_secs_f64();
                match outcome {
                    Ok(msg) => println!("criterion {} {name}: PASS ({msg}; {secs:.1}s)", i + 1),
                    Err(msg) => {
                        failed += 1;
                        println!("criterion {} {name}: FAIL ({msg}; {secs:.1}s)", i + 1);
                    }
                }
            }
            failed
        })
        .expect("spawn")
        .join()
        .expect("criteria do not panic");
    if failed > 0 {
        std::process::exit(1);
    }
}
