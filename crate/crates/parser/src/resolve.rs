//! Elaboration of surface syntax into nameless core terms.

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::rc::Rc;

use prtt_core::{shift, Constant, SourceSpan, Term};

use crate::error::{LoadError, ResolveError};
use crate::parse::parse_module_named;
use crate::syntax::*;

/// Top-level definitions visible so far, in definition order.
#[derive(Debug, Default, Clone)]
pub struct Scope {
    by_name: HashMap<String, Rc<Constant>>,
    order: Vec<Rc<Constant>>,
    spans: HashMap<String, SourceSpan>,
}

impl Scope {
    pub fn new() -> Self {
        Scope::default()
    }

    pub fn get(&self, name: &str) -> Option<&Rc<Constant>> {
        self.by_name.get(name)
    }

    /// Where `name` was declared.
    pub fn span(&self, name: &str) -> Option<&SourceSpan> {
        self.spans.get(name)
    }

    pub fn decls(&self) -> &[Rc<Constant>] {
        &self.order
    }

    pub fn into_decls(self) -> Vec<Rc<Constant>> {
        self.order
    }

    fn define(&mut self, c: Rc<Constant>, span: SourceSpan) {
        self.spans.insert(c.name.to_string(), span);
        self.by_name.insert(c.name.to_string(), c.clone());
        self.order.push(c);
    }
}

/// Resolve a module that has no imports, or whose imports are handled elsewhere.
pub fn resolve(m: &SurfaceModule) -> Result<Vec<Rc<Constant>>, ResolveError> {
    let mut scope = Scope::new();
    resolve_into(m, &mut scope)?;
    Ok(scope.into_decls())
}

/// Resolve the declarations of `m` on top of `scope`, extending it.
pub fn resolve_into(m: &SurfaceModule, scope: &mut Scope) -> Result<(), ResolveError> {
    for d in &m.decls {
        if scope.get(&d.name).is_some() {
            return Err(ResolveError::DuplicateDefinition { name: d.name.clone(), span: d.span.clone() });
        }
        let mut r = Resolver { scope, locals: vec![] };
        let ty = d.ty.as_ref().map(|t| r.expr(t)).transpose()?;
        let body = r.expr(&d.body)?;
        scope.define(Rc::new(Constant { name: Rc::from(d.name.as_str()), ty, body }), d.span.clone());
    }
    Ok(())
}

/// Elaborate a closed expression against existing definitions.
pub fn resolve_expr(e: &Expr, scope: &Scope) -> Result<Term, ResolveError> {
    Resolver { scope, locals: vec![] }.expr(e)
}

/// Read, parse and resolve `path` together with everything it imports.
/// Imports are relative to the importing file and loaded once each.
pub fn load(path: &Path) -> Result<Scope, LoadError> {
    let mut loader = Loader { scope: Scope::new(), done: HashSet::new(), active: vec![] };
    loader.file(path, None)?;
    Ok(loader.scope)
}

/// Like [`load`] but for in-memory text whose imports resolve against `dir`.
pub fn load_str(file: &str, text: &str, dir: &Path) -> Result<Scope, LoadError> {
    let mut loader = Loader { scope: Scope::new(), done: HashSet::new(), active: vec![] };
    let m = parse_module_named(file, text)?;
    loader.module(&m, dir)?;
    Ok(loader.scope)
}

struct Loader {
    scope: Scope,
    done: HashSet<PathBuf>,
    active: Vec<PathBuf>,
}

impl Loader {
    fn file(&mut self, path: &Path, from: Option<&SourceSpan>) -> Result<(), LoadError> {
        let io = |source| LoadError::Io { path: path.to_path_buf(), source };
        let key = path.canonicalize().map_err(io)?;
        if self.done.contains(&key) {
            return Ok(());
        }
        if self.active.contains(&key) {
            let span =
                from.cloned().unwrap_or_else(|| SourceSpan::new(Rc::from(path.to_string_lossy().as_ref()), 1, 1, 1));
            return Err(LoadError::ImportCycle { path: path.to_path_buf(), span });
        }
        let text = std::fs::read_to_string(path).map_err(io)?;
        let m = parse_module_named(&path.to_string_lossy(), &text)?;
        self.active.push(key.clone());
        self.module(&m, path.parent().unwrap_or(Path::new(".")))?;
        self.active.pop();
        self.done.insert(key);
        Ok(())
    }

    fn module(&mut self, m: &SurfaceModule, dir: &Path) -> Result<(), LoadError> {
        for imp in &m.imports {
            self.file(&dir.join(&imp.path), Some(&imp.span))?;
        }
        resolve_into(m, &mut self.scope)?;
        Ok(())
    }
}

struct Resolver<'a> {
    scope: &'a Scope,
    locals: Vec<String>,
}

impl Resolver<'_> {
    fn malformed<T>(&self, span: &SourceSpan, message: impl Into<String>) -> Result<T, ResolveError> {
        Err(ResolveError::Malformed { message: message.into(), span: span.clone() })
    }

    fn under<T>(&mut self, names: &[&str], f: impl FnOnce(&mut Self) -> T) -> T {
        let n = self.locals.len();
        self.locals.extend(names.iter().map(|s| s.to_string()));
        let out = f(self);
        self.locals.truncate(n);
        out
    }

    /// Nested binder formers: each binder's type is resolved in the scope of
    /// the binders before it.
    fn telescope(&mut self, bs: &[Binder], body: &Expr, mk: fn(Term, Term) -> Term) -> Result<Term, ResolveError> {
        let Some((b, rest)) = bs.split_first() else { return self.expr(body) };
        let Some(ty) = &b.ty else {
            return self.malformed(&b.span, format!("binder `{}` needs a type annotation here", b.name));
        };
        let ty = self.expr(ty)?;
        let inner = self.under(&[&b.name], |r| r.telescope(rest, body, mk))?;
        Ok(mk(ty, inner))
    }

    /// An argument that binds `n` variables. `fun x y => e` binds them
    /// directly; anything else is applied to them.
    fn binder_arg(&mut self, e: &Expr, n: usize) -> Result<Term, ResolveError> {
        if n == 0 {
            return self.expr(e);
        }
        if let ExprKind::Fun(bs, body) = &e.kind {
            if bs.iter().all(|b| b.ty.is_none()) {
                if bs.len() > n {
                    return self.malformed(&e.span, format!("this position binds {n} variable(s), found {}", bs.len()));
                }
                let names: Vec<&str> = bs.iter().map(|b| b.name.as_str()).collect();
                let inner = self.under(&names, |r| r.expr(body))?;
                return Ok(apply_fresh(inner, n - bs.len()));
            }
        }
        let t = self.expr(e)?;
        Ok(apply_fresh(t, n))
    }

    fn expr(&mut self, e: &Expr) -> Result<Term, ResolveError> {
        Ok(match &e.kind {
            ExprKind::Ident(name) => match self.locals.iter().rposition(|l| l == name) {
                Some(k) => Term::Var(self.locals.len() - 1 - k),
                None => match self.scope.get(name) {
                    Some(c) => Term::Const(c.clone()),
                    None => {
                        return Err(ResolveError::UnboundIdentifier { name: name.clone(), span: e.span.clone() });
                    }
                },
            },
            ExprKind::Num(n) => Term::numeral(*n),
            ExprKind::Univ(l) => Term::Univ(*l),
            ExprKind::Nat => Term::Nat,
            ExprKind::Unit => Term::Unit,
            ExprKind::Empty => Term::Empty,
            ExprKind::Star => Term::Star,
            ExprKind::Zero => Term::Zero,
            ExprKind::Fun(bs, body) => self.telescope(bs, body, Term::lam)?,
            ExprKind::Pi(bs, body) => self.telescope(bs, body, Term::pi)?,
            ExprKind::Sigma(bs, body) => self.telescope(bs, body, Term::sigma)?,
            ExprKind::Arrow(a, b) => Term::arrow(self.expr(a)?, self.expr(b)?),
            ExprKind::Prod(a, b) => Term::product(self.expr(a)?, self.expr(b)?),
            ExprKind::Sum(a, b) => Term::sum(self.expr(a)?, self.expr(b)?),
            ExprKind::App(f, a) => Term::app(self.expr(f)?, self.expr(a)?),
            ExprKind::Pair(a, b) => Term::pair(self.expr(a)?, self.expr(b)?),
            ExprKind::Ann(x, ty) => Term::app(Term::lam(self.expr(ty)?, Term::Var(0)), self.expr(x)?),
            ExprKind::Keyword(kw, args) => {
                let mut ts = Vec::with_capacity(args.len());
                for (a, &n) in args.iter().zip(kw.binders()) {
                    ts.push(self.binder_arg(a, n)?);
                }
                let mut it = ts.into_iter();
                let mut next = || it.next().expect("arity fixed by the parser");
                match kw {
                    Keyword::Eq => Term::eq(next(), next(), next()),
                    Keyword::Refl => Term::refl(next()),
                    Keyword::J => Term::eq_ind(next(), next(), next(), next(), next()),
                    Keyword::Ind => Term::nat_ind(next(), next(), next(), next()),
                    Keyword::Case => Term::sum_ind(next(), next(), next(), next()),
                    Keyword::UnitInd => Term::unit_ind(next(), next(), next()),
                    Keyword::ExFalso => Term::ex_falso(next(), next()),
                    Keyword::Suc => Term::suc(next()),
                    Keyword::Fst => Term::fst(next()),
                    Keyword::Snd => Term::snd(next()),
                    Keyword::Inl => Term::inl(next()),
                    Keyword::Inr => Term::inr(next()),
                    Keyword::Lift(from, to) => {
                        if from > to {
                            return self.malformed(&e.span, format!("cannot lift from U{from} down to U{to}"));
                        }
                        Term::lift(*from, *to, next())
                    }
                }
            }
        })
    }
}

/// `t` moved under `n` new binders and applied to them, outermost first.
fn apply_fresh(t: Term, n: usize) -> Term {
    let t = shift(&t, 0, n as isize);
    (0..n).rev().fold(t, |f, i| Term::app(f, Term::Var(i)))
}
