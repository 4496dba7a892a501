use std::io::Write;
use std::path::Path;
use std::rc::Rc;

use prtt_checker::{Checker, Config};
use prtt_core::{Constant, Context, Natural, Term};
use prtt_extract::Extractor;
use prtt_nbe::Nbe;
use prtt_parser::Scope;
use prtt_prir::{from_json, to_json_shared, Evaluator, PRFun};
use serde_json::{json, Value};

use crate::suite::{self, SuiteConfig};
use crate::{Cli, CliError, Command, SCHEMA};

type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let io = |e| CliError::Io { path: "<stdout>".into(), source: e };
    match &cli.command {
        Command::Check { files } => check(cli, files, out, err),
        Command::Normalize { file, decl } => {
            let (_, c, ty) = load_decl(cli, file, decl)?;
            let nbe = Nbe::new(cli.step_budget);
            let normal = nbe
                .normalize(&Context::new(), &Term::Const(c), &ty)
                .map_err(|error| CliError::Eval { decl: decl.clone(), error })?;
            if cli.json {
                let v = json!({"schema": SCHEMA, "decl": decl, "type": ty.to_string(), "normal": normal.to_string()});
                writeln!(out, "{v}").map_err(io)
            } else {
                writeln!(out, "{decl} : {ty}\n  = {normal}").map_err(io)
            }
        }
        Command::Canon { file, decl } => {
            let (_, c, ty) = load_decl(cli, file, decl)?;
            if ty != Term::Nat {
                return Err(CliError::NotNat { decl: decl.clone(), ty });
            }
            let n = Nbe::new(cli.step_budget)
                .canonical_nat(&Term::Const(c))
                .map_err(|error| CliError::Eval { decl: decl.clone(), error })?;
            if cli.json {
                writeln!(out, "{}", json!({"schema": SCHEMA, "decl": decl, "value": n.to_string()})).map_err(io)
            } else {
                writeln!(out, "{n}").map_err(io)
            }
        }
        Command::Extract { file, decl, out: path } => {
            let (checker, c, ty) = load_decl(cli, file, decl)?;
            let fail = |error| CliError::Extract { decl: decl.clone(), error };
            let k = function_arity(&ty).ok_or_else(|| fail(prtt_extract::ExtractError::NotGroundType(ty.clone())))?;
            let body = Term::apps(Term::Const(c), (0..k).rev().map(Term::Var));
            let program = Extractor::with_checker(checker).extract(k, &body).map_err(fail)?;
            let doc = json!({
                "schema": SCHEMA,
                "source": file.to_string_lossy(),
                "decl": decl,
                "type": ty.to_string(),
                "arity": k,
                "size": program.size(),
                "nodes": program.dag_size(),
                "program": to_json_shared(&program),
            });
            std::fs::write(path, format!("{doc}\n")).map_err(|source| CliError::Io { path: path.clone(), source })?;
            if cli.json {
                let v = json!({"schema": SCHEMA, "decl": decl, "arity": k, "size": program.size(), "nodes": program.dag_size(), "out": path.to_string_lossy()});
                writeln!(out, "{v}").map_err(io)
            } else {
                writeln!(
                    out,
                    "{decl}: arity {k}, size {} ({} distinct nodes) -> {}",
                    program.size(),
                    program.dag_size(),
                    path.display()
                )
                .map_err(io)
            }
        }
        Command::Run { ir, args } => {
            let program = read_program(ir)?;
            let k = program.arity().map_err(CliError::Program)?;
            if args.len() != k {
                return Err(CliError::Usage(format!("program has arity {k} but {} arguments were given", args.len())));
            }
            let values = args
                .iter()
                .map(|a| a.parse::<Natural>().map_err(|_| CliError::Usage(format!("`{a}` is not a natural number"))))
                .collect::<Result<Vec<_>>>()?;
            let mut ev = Evaluator::new(cli.pr_budget);
            let v = ev.eval(&program, &values).map_err(CliError::Program)?;
            if cli.json {
                let t = ev.trace();
                writeln!(out, "{}", json!({"schema": SCHEMA, "value": v.to_string(), "steps": t.steps})).map_err(io)
            } else {
                writeln!(out, "{v}").map_err(io)
            }
        }
        Command::Test { dir, grid, seed, samples } => {
            let cfg = SuiteConfig {
                dir: dir.clone(),
                grid: *grid,
                seed: *seed,
                samples: *samples,
                step_budget: cli.step_budget,
                pr_budget: cli.pr_budget,
            };
            let report = suite::run(&cfg)?;
            if cli.json {
                writeln!(out, "{}", report.to_json()).map_err(io)?;
            } else {
                out.write_all(report.render().as_bytes()).map_err(io)?;
            }
            for w in &report.warnings {
                writeln!(err, "warning: {w}").map_err(io)?;
            }
            match report.failures() {
                0 => Ok(()),
                n => Err(CliError::Failures(n, report.rows.len())),
            }
        }
    }
}

pub(crate) fn checker(cli_step_budget: u64) -> Checker {
    Checker::new(Config { step_budget: cli_step_budget, ..Config::default() })
}

pub(crate) fn load(path: &Path) -> Result<Scope> {
    Ok(prtt_parser::load(path)?)
}

/// Check `c` and return its normal type, with the declaration's position
/// attached to any type error.
pub(crate) fn check_decl(checker: &Checker, scope: &Scope, c: &Rc<Constant>) -> Result<Term> {
    checker.check_constant(c).map_err(|error| {
        let error = match scope.span(&c.name) {
            Some(span) => error.at(span.clone()),
            None => error,
        };
        CliError::Type { decl: c.name.to_string(), error }
    })
}

fn load_decl(cli: &Cli, file: &Path, decl: &str) -> Result<(Checker, Rc<Constant>, Term)> {
    let scope = load(file)?;
    let Some(c) = scope.get(decl).cloned() else {
        return Err(CliError::Usage(format!("no definition `{decl}` in {}", file.display())));
    };
    let checker = checker(cli.step_budget);
    let ty = check_decl(&checker, &scope, &c)?;
    Ok((checker, c, ty))
}

/// `k` when `ty` is `Nat -> ... -> Nat` with `k` arrows.
pub(crate) fn function_arity(ty: &Term) -> Option<usize> {
    let mut k = 0;
    let mut t = ty;
    loop {
        match t {
            Term::Nat => return Some(k),
            Term::Pi(a, b) if **a == Term::Nat && !b.mentions(0) => {
                k += 1;
                t = b;
            }
            _ => return None,
        }
    }
}

fn read_program(path: &Path) -> Result<PRFun> {
    let bad = |message: String| CliError::BadProgram { path: path.to_path_buf(), message };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let program = doc.get("program").unwrap_or(&doc);
    from_json(program).map_err(|e| bad(e.to_string()))
}

fn check(cli: &Cli, files: &[std::path::PathBuf], out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let io = |e| CliError::Io { path: "<stdout>".into(), source: e };
    let mut worst = 0;
    let mut reports = Vec::new();
    for file in files {
        let result = load(file).and_then(|scope| {
            let checker = checker(cli.step_budget);
            for c in scope.decls() {
                check_decl(&checker, &scope, c)?;
            }
            Ok(scope.decls().len())
        });
        let name = file.to_string_lossy();
        match result {
            Ok(n) => {
                reports.push(json!({"file": name, "status": "ok", "declarations": n}));
                if !cli.json {
                    writeln!(out, "ok {name} ({n} declarations)").map_err(io)?;
                }
            }
            Err(e) => {
                worst = worst.max(e.exit_code());
                reports.push(json!({"file": name, "status": "error", "error": e.to_json()}));
                if !cli.json {
                    writeln!(err, "error: {e}").map_err(io)?;
                }
            }
        }
    }
    if cli.json {
        writeln!(out, "{}", json!({"schema": SCHEMA, "command": "check", "files": reports})).map_err(io)?;
    }
    match worst {
        0 => Ok(()),
        code => Err(CliError::Reported(code)),
    }
}
