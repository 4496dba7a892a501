use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use prtt_core::Natural;

use crate::{ill, PRFun, PrError, Result};

pub const DEFAULT_PR_BUDGET: u64 = 100_000_000;

/// Counters from one evaluation. `steps` counts recursion unfoldings
/// actually performed (the base case and every step application that was
/// run); `peak` is the bit length of the largest value produced.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalTrace {
    pub steps: u64,
    pub peak: u64,
}

/// An argument slot: either a value or a suspended application.
type Cell<'a> = Rc<RefCell<Slot<'a>>>;

enum Slot<'a> {
    Done(Natural),
    Pending(&'a PRFun, Rc<[Cell<'a>]>),
    Busy,
}

fn done<'a>(v: Natural) -> Cell<'a> {
    Rc::new(RefCell::new(Slot::Done(v)))
}

enum Task<'a> {
    Eval(&'a PRFun, Rc<[Cell<'a>]>),
    Exec(&'a PRFun, Rc<[Cell<'a>]>),
    Force(Cell<'a>, bool),
    Store(Cell<'a>),
    Succ,
    Rec(&'a PRFun, &'a PRFun, Rc<[Cell<'a>]>),
    Loop { step: &'a PRFun, i: u64, n: Natural, params: Rc<[Cell<'a>]> },
    AddN(Natural),
    SubN(Natural),
    AddTimes(Natural),
}

/// How a recursion step uses its accumulator. Steps that ignore it only
/// need the last unfolding; `acc + 1`, `pred acc`, `acc + x` and `acc`
/// have closed forms.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Increment,
    Decrement,
    AddParam(usize),
    Keep,
    IgnoresAcc,
    General,
}

fn shape(step: &PRFun, used: &mut HashMap<*const PRFun, Rc<[bool]>>) -> Shape {
    match step {
        PRFun::Proj(_, 1) => Shape::Keep,
        PRFun::Comp(o, gs) if **o == PRFun::Succ && matches!(*gs[0], PRFun::Proj(_, 1)) => Shape::Increment,
        PRFun::Comp(o, gs) if is_pred(o) && matches!(*gs[0], PRFun::Proj(_, 1)) => Shape::Decrement,
        PRFun::Comp(o, gs) if is_add(o) => match (&*gs[0], &*gs[1]) {
            (PRFun::Proj(_, j), PRFun::Proj(_, 1)) | (PRFun::Proj(_, 1), PRFun::Proj(_, j)) if *j >= 2 => {
                Shape::AddParam(j - 2)
            }
            _ => general(step, used),
        },
        _ => general(step, used),
    }
}

fn general(step: &PRFun, used: &mut HashMap<*const PRFun, Rc<[bool]>>) -> Shape {
    if uses(step, used)[1] {
        Shape::General
    } else {
        Shape::IgnoresAcc
    }
}

/// `add(n, x) = x + n` by recursion on `n`, with `x + 1` as the step.
fn is_add(f: &PRFun) -> bool {
    match f {
        PRFun::PrimRec(g, h) => {
            **g == PRFun::Proj(1, 0)
                && matches!(&**h, PRFun::Comp(o, gs) if **o == PRFun::Succ && *gs[0] == PRFun::Proj(3, 1))
        }
        _ => false,
    }
}

fn is_pred(f: &PRFun) -> bool {
    match f {
        PRFun::PrimRec(g, h) => matches!(&**g, PRFun::Const(0, v) if v.is_zero()) && **h == PRFun::Proj(2, 0),
        _ => false,
    }
}

/// Composite nodes reachable from `root` along more than one edge.
fn shared(root: &PRFun) -> HashSet<*const PRFun> {
    let mut parents: HashMap<*const PRFun, u32> = HashMap::new();
    let mut todo = vec![root];
    let mut out = HashSet::new();
    while let Some(f) = todo.pop() {
        let seen = parents.entry(f as *const PRFun).or_insert(0);
        *seen += 1;
        if *seen > 1 {
            if matches!(f, PRFun::Comp(..) | PRFun::PrimRec(..)) {
                out.insert(f as *const PRFun);
            }
            continue;
        }
        match f {
            PRFun::Comp(o, is) => {
                todo.push(o);
                todo.extend(is.iter().map(|i| &**i));
            }
            PRFun::PrimRec(g, h) => todo.extend([&**g, &**h]),
            _ => {}
        }
    }
    out
}

/// Which arguments can influence the result.
fn uses(f: &PRFun, memo: &mut HashMap<*const PRFun, Rc<[bool]>>) -> Rc<[bool]> {
    let key = f as *const PRFun;
    if let Some(u) = memo.get(&key) {
        return u.clone();
    }
    let u: Rc<[bool]> = match f {
        PRFun::Const(k, _) => vec![false; *k].into(),
        PRFun::Succ => vec![true].into(),
        PRFun::Proj(k, i) => (0..*k).map(|j| j == *i).collect(),
        PRFun::Comp(o, gs) => {
            let uo = uses(o, memo);
            let mut out = vec![false; gs.first().map_or(0, |g| g.arity().unwrap_or(0))];
            for (t, g) in gs.iter().enumerate() {
                if uo[t] {
                    for (j, b) in uses(g, memo).iter().enumerate() {
                        out[j] |= *b;
                    }
                }
            }
            out.into()
        }
        PRFun::PrimRec(g, h) => {
            let (ug, uh) = (uses(g, memo), uses(h, memo));
            std::iter::once(true).chain(ug.iter().enumerate().map(|(j, b)| *b || uh[j + 2])).collect()
        }
    };
    memo.insert(key, u.clone());
    u
}

/// Evaluator with an unfolding budget shared across calls.
pub struct Evaluator {
    budget: u64,
    trace: EvalTrace,
}

impl Evaluator {
    pub fn new(budget: u64) -> Self {
        Evaluator { budget, trace: EvalTrace::default() }
    }

    pub fn trace(&self) -> EvalTrace {
        self.trace
    }

    fn spend(&mut self) -> Result<()> {
        if self.trace.steps >= self.budget {
            return Err(PrError::BudgetExceeded(self.budget));
        }
        self.trace.steps += 1;
        Ok(())
    }

    fn produce(&mut self, values: &mut Vec<Natural>, v: Natural) {
        self.trace.peak = self.trace.peak.max(v.bits());
        values.push(v);
    }

    pub fn eval(&mut self, f: &PRFun, args: &[Natural]) -> Result<Natural> {
        let k = f.arity()?;
        if k != args.len() {
            return ill(format!("function of arity {k} applied to {} arguments", args.len()));
        }
        let mut shapes: HashMap<*const PRFun, Shape> = HashMap::new();
        let mut used = HashMap::new();
        let mut values: Vec<Natural> = Vec::new();
        let env: Rc<[Cell]> = args.iter().cloned().map(done).collect();
        // Results of shared subprograms, per argument environment. The
        // environments are kept alive so their addresses stay unique.
        let shared = shared(f);
        let mut memo: HashMap<(*const PRFun, *const Cell), Cell> = HashMap::new();
        let mut alive: Vec<Rc<[Cell]>> = Vec::new();
        let mut tasks = vec![Task::Eval(f, env)];
        while let Some(task) = tasks.pop() {
            match task {
                Task::Eval(f, env) if shared.contains(&(f as *const PRFun)) => {
                    let key = (f as *const PRFun, env.as_ptr());
                    let cell = memo
                        .entry(key)
                        .or_insert_with(|| {
                            alive.push(env.clone());
                            Rc::new(RefCell::new(Slot::Pending(f, env)))
                        })
                        .clone();
                    tasks.push(Task::Force(cell, true));
                }
                Task::Eval(f, env) | Task::Exec(f, env) => match f {
                    PRFun::Const(_, v) => self.produce(&mut values, v.clone()),
                    PRFun::Succ => {
                        tasks.push(Task::Succ);
                        tasks.push(Task::Force(env[0].clone(), false));
                    }
                    PRFun::Proj(_, i) => tasks.push(Task::Force(env[*i].clone(), false)),
                    PRFun::Comp(outer, inners) => {
                        let cells: Rc<[Cell]> = inners
                            .iter()
                            .map(|g| match &**g {
                                PRFun::Proj(_, j) => env[*j].clone(),
                                PRFun::Const(_, v) => done(v.clone()),
                                _ => Rc::new(RefCell::new(Slot::Pending(g, env.clone()))),
                            })
                            .collect();
                        tasks.push(Task::Eval(outer, cells));
                    }
                    PRFun::PrimRec(base, step) => {
                        tasks.push(Task::Rec(base, step, env.clone()));
                        tasks.push(Task::Force(env[0].clone(), false));
                    }
                },
                Task::Force(cell, exec) => {
                    let slot = std::mem::replace(&mut *cell.borrow_mut(), Slot::Busy);
                    match slot {
                        Slot::Done(v) => {
                            values.push(v.clone());
                            *cell.borrow_mut() = Slot::Done(v);
                        }
                        Slot::Pending(g, env) => {
                            tasks.push(Task::Store(cell.clone()));
                            tasks.push(if exec { Task::Exec(g, env) } else { Task::Eval(g, env) });
                        }
                        Slot::Busy => return ill("cyclic argument"),
                    }
                }
                Task::Store(cell) => {
                    let v = values.last().expect("forced value").clone();
                    *cell.borrow_mut() = Slot::Done(v);
                }
                Task::Succ => {
                    let v = values.pop().expect("successor argument");
                    self.produce(&mut values, v.succ());
                }
                Task::Rec(base, step, env) => {
                    self.spend()?;
                    let n = values.pop().expect("recursion argument");
                    let params: Rc<[Cell]> = Rc::from(&env[1..]);
                    let key = step as *const PRFun;
                    let sh = *shapes.entry(key).or_insert_with(|| shape(step, &mut used));
                    match sh {
                        Shape::Keep => {}
                        Shape::Increment => tasks.push(Task::AddN(n)),
                        Shape::Decrement => tasks.push(Task::SubN(n)),
                        Shape::AddParam(j) => {
                            tasks.push(Task::AddTimes(n));
                            tasks.push(Task::Force(params[j].clone(), false));
                        }
                        Shape::IgnoresAcc => {
                            if let Some(last) = n.pred() {
                                self.spend()?;
                                let a: Rc<[Cell]> = [done(last), done(Natural::ZERO)]
                                    .into_iter()
                                    .chain(params.iter().cloned())
                                    .collect();
                                tasks.push(Task::Eval(step, a));
                                continue;
                            }
                        }
                        Shape::General => tasks.push(Task::Loop { step, i: 0, n, params: params.clone() }),
                    }
                    tasks.push(Task::Eval(base, params));
                }
                Task::AddN(n) => {
                    let v = values.pop().expect("recursion value");
                    self.produce(&mut values, v.add(&n));
                }
                Task::AddTimes(n) => {
                    let x = values.pop().expect("recursion parameter");
                    let base = values.pop().expect("recursion value");
                    let v = Natural::from(base.to_biguint() + n.to_biguint() * x.to_biguint());
                    self.produce(&mut values, v);
                }
                Task::SubN(n) => {
                    let v = values.pop().expect("recursion value");
                    values.push(v.checked_sub(&n).unwrap_or(Natural::ZERO));
                }
                Task::Loop { step, i, n, params } => {
                    if Natural::from(i) == n {
                        continue;
                    }
                    self.spend()?;
                    let acc = values.pop().expect("recursion value");
                    let a: Rc<[Cell]> =
                        [done(Natural::from(i)), done(acc)].into_iter().chain(params.iter().cloned()).collect();
                    tasks.push(Task::Loop { step, i: i + 1, n, params });
                    tasks.push(Task::Eval(step, a));
                }
            }
        }
        debug_assert_eq!(values.len(), 1);
        Ok(values.pop().expect("result value"))
    }
}

/// Evaluate with the default budget.
pub fn eval_pr(f: &PRFun, args: &[Natural]) -> Result<Natural> {
    Evaluator::new(DEFAULT_PR_BUDGET).eval(f, args)
}

pub fn eval_pr_traced(f: &PRFun, args: &[Natural], budget: u64) -> Result<(Natural, EvalTrace)> {
    let mut ev = Evaluator::new(budget);
    let v = ev.eval(f, args)?;
    Ok((v, ev.trace()))
}
