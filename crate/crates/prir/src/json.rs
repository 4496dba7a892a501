//! JSON form: objects tagged by `"op"`.
//!
//! ```text
//! {"op":"const","arity":k,"value":n}     n is a number, or a decimal string when large
//! {"op":"succ"}
//! {"op":"proj","arity":k,"index":i}
//! {"op":"comp","outer":f,"inners":[g, ...]}
//! {"op":"primrec","base":g,"step":h}
//! ```
//!
//! The shared form `{"defs":[f0, f1, ...],"main":f}` lets any node be
//! `{"op":"ref","index":i}`, naming `defs[i]`; a def may only refer to
//! earlier defs.

use std::collections::HashMap;
use std::rc::Rc;

use prtt_core::Natural;
use serde_json::{json, Map, Value};

use crate::{ill, PRFun, Result};

pub fn to_json(f: &PRFun) -> Value {
    match f {
        PRFun::Const(k, v) => {
            let value = match v.to_u64() {
                Some(n) => json!(n),
                None => json!(v.to_string()),
            };
            json!({"op": "const", "arity": k, "value": value})
        }
        PRFun::Succ => json!({"op": "succ"}),
        PRFun::Proj(k, i) => json!({"op": "proj", "arity": k, "index": i}),
        PRFun::Comp(o, is) => {
            json!({"op": "comp", "outer": to_json(o), "inners": is.iter().map(|g| to_json(g)).collect::<Vec<_>>()})
        }
        PRFun::PrimRec(g, h) => json!({"op": "primrec", "base": to_json(g), "step": to_json(h)}),
    }
}

/// Shared form: every composite node reachable along more than one edge is
/// written once in `defs`.
pub fn to_json_shared(f: &PRFun) -> Value {
    let mut parents: HashMap<*const PRFun, u32> = HashMap::new();
    let mut todo = vec![f];
    while let Some(g) = todo.pop() {
        let n = parents.entry(g as *const PRFun).or_insert(0);
        *n += 1;
        if *n > 1 {
            continue;
        }
        match g {
            PRFun::Comp(o, is) => {
                todo.push(o);
                todo.extend(is.iter().map(|i| &**i));
            }
            PRFun::PrimRec(b, h) => todo.extend([&**b, &**h]),
            _ => {}
        }
    }
    let mut w = SharedWriter { parents, index: HashMap::new(), defs: Vec::new() };
    let main = w.node(f);
    json!({"defs": w.defs, "main": main})
}

struct SharedWriter {
    parents: HashMap<*const PRFun, u32>,
    index: HashMap<*const PRFun, usize>,
    defs: Vec<Value>,
}

impl SharedWriter {
    fn node(&mut self, f: &PRFun) -> Value {
        let key = f as *const PRFun;
        if let Some(&i) = self.index.get(&key) {
            return json!({"op": "ref", "index": i});
        }
        let v = match f {
            PRFun::Comp(o, is) => {
                let outer = self.node(o);
                let inners: Vec<Value> = is.iter().map(|g| self.node(g)).collect();
                json!({"op": "comp", "outer": outer, "inners": inners})
            }
            PRFun::PrimRec(g, h) => {
                let (base, step) = (self.node(g), self.node(h));
                json!({"op": "primrec", "base": base, "step": step})
            }
            leaf => return to_json(leaf),
        };
        if self.parents.get(&key).copied().unwrap_or(0) > 1 {
            self.defs.push(v);
            self.index.insert(key, self.defs.len() - 1);
            json!({"op": "ref", "index": self.defs.len() - 1})
        } else {
            v
        }
    }
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    match obj.get(name) {
        Some(v) => Ok(v),
        None => ill(format!("missing field `{name}`")),
    }
}

fn index(obj: &Map<String, Value>, name: &str) -> Result<usize> {
    match field(obj, name)?.as_u64().and_then(|n| usize::try_from(n).ok()) {
        Some(n) => Ok(n),
        None => ill(format!("field `{name}` must be a natural number")),
    }
}

fn natural(v: &Value) -> Result<Natural> {
    if let Some(n) = v.as_u64() {
        return Ok(Natural::from(n));
    }
    match v.as_str().map(str::parse::<Natural>) {
        Some(Ok(n)) => Ok(n),
        _ => ill("constant value must be a natural number or a decimal string"),
    }
}

/// Decode either form and check well-formedness.
pub fn from_json(v: &Value) -> Result<PRFun> {
    let mut defs = Vec::new();
    let main = match v.as_object() {
        Some(obj) if obj.contains_key("defs") => {
            let Some(list) = obj["defs"].as_array() else { return ill("`defs` must be an array") };
            for d in list {
                let f = decode(d, &defs)?;
                defs.push(f);
            }
            decode(field(obj, "main")?, &defs)?
        }
        _ => decode(v, &defs)?,
    };
    main.arity()?;
    Ok(Rc::try_unwrap(main).unwrap_or_else(|f| (*f).clone()))
}

fn decode(v: &Value, defs: &[Rc<PRFun>]) -> Result<Rc<PRFun>> {
    let Some(obj) = v.as_object() else { return ill("expected an object") };
    let op = field(obj, "op")?.as_str().unwrap_or_default();
    if op == "ref" {
        return match defs.get(index(obj, "index")?) {
            Some(f) => Ok(f.clone()),
            None => ill("`ref` to an undefined index"),
        };
    }
    let sub = |name: &str| decode(field(obj, name)?, defs);
    Ok(Rc::new(match op {
        "const" => PRFun::Const(index(obj, "arity")?, natural(field(obj, "value")?)?),
        "succ" => PRFun::Succ,
        "proj" => PRFun::Proj(index(obj, "arity")?, index(obj, "index")?),
        "comp" => {
            let outer = sub("outer")?;
            let Some(list) = field(obj, "inners")?.as_array() else { return ill("`inners` must be an array") };
            let inners = list.iter().map(|g| decode(g, defs)).collect::<Result<Vec<_>>>()?;
            PRFun::Comp(outer, inners)
        }
        "primrec" => PRFun::PrimRec(sub("base")?, sub("step")?),
        other => return ill(format!("unknown op {other:?}")),
    }))
}
