//! The bundle file format: named groups, homomorphisms, actions and
//! composite structures, as a JSON document.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::catalog;
use crate::format::canonical;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown reference {name:?} at {path}")]
    UnknownReference { name: String, path: String },
    #[error("shape error at {path}: {message}")]
    Shape { path: String, message: String },
}

fn shape(path: &str, message: impl Into<String>) -> BundleError {
    BundleError::Shape { path: path.to_owned(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Table(Vec<Vec<usize>>),
    Cyclic(usize),
    Builtin(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpec {
    pub dom: String,
    pub cod: String,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub actor: String,
    pub space: String,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModData {
    pub boundary: String,
    pub action: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GgpdData {
    pub g1: String,
    pub g0: String,
    pub source: String,
    pub target: String,
    pub identity: String,
    pub composition: Option<Vec<[usize; 3]>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatXModData {
    pub c1: String,
    pub c0: String,
    pub source_a: String,
    pub source_b: String,
    pub target_a: String,
    pub target_b: String,
    pub identity_a: String,
    pub identity_b: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSqData {
    pub l: String,
    pub m: String,
    pub n: String,
    pub p: String,
    pub lambda: String,
    pub lambda_p: String,
    pub mu: String,
    pub nu: String,
    pub act_l: String,
    pub act_m: String,
    pub act_n: String,
    pub h: Vec<Vec<usize>>,
}

/// A composite entry: either inline data or a built-in catalog name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry<T> {
    Builtin(String),
    Data(T),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bundle {
    pub groups: BTreeMap<String, GroupSpec>,
    pub homs: BTreeMap<String, HomSpec>,
    pub actions: BTreeMap<String, ActionSpec>,
    pub xmods: BTreeMap<String, Entry<XModData>>,
    pub ggpds: BTreeMap<String, Entry<GgpdData>>,
    pub catxmods: BTreeMap<String, Entry<CatXModData>>,
    pub xsqs: BTreeMap<String, Entry<XSqData>>,
}

const SECTIONS: [&str; 7] = ["groups", "homs", "actions", "xmods", "ggpds", "catxmods", "xsqs"];

struct Obj<'a> {
    path: String,
    map: &'a Map<String, Value>,
}

impl<'a> Obj<'a> {
    fn new(path: String, v: &'a Value) -> Result<Self, BundleError> {
        v.as_object().map(|map| Obj { path: path.clone(), map }).ok_or_else(|| shape(&path, "expected an object"))
    }

    fn sub(&self, key: &str) -> String {
        format!("{}.{key}", self.path)
    }

    fn allow(&self, keys: &[&str]) -> Result<(), BundleError> {
        match self.map.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(shape(&self.sub(k), "unexpected field")),
            None => Ok(()),
        }
    }

    fn get(&self, key: &str) -> Result<&'a Value, BundleError> {
        self.map.get(key).ok_or_else(|| shape(&self.sub(key), "missing field"))
    }

    fn string(&self, key: &str) -> Result<String, BundleError> {
        self.get(key)?.as_str().map(str::to_owned).ok_or_else(|| shape(&self.sub(key), "expected a string"))
    }

    fn uint(&self, key: &str) -> Result<usize, BundleError> {
        uint(self.get(key)?, &self.sub(key))
    }

    fn vector(&self, key: &str) -> Result<Vec<usize>, BundleError> {
        vector(self.get(key)?, &self.sub(key))
    }

    fn matrix(&self, key: &str) -> Result<Vec<Vec<usize>>, BundleError> {
        let path = self.sub(key);
        let rows = self.get(key)?.as_array().ok_or_else(|| shape(&path, "expected an array of arrays"))?;
        rows.iter().enumerate().map(|(i, r)| vector(r, &format!("{path}[{i}]"))).collect()
    }

    fn kind(&self) -> Option<&'a str> {
        self.map.get("kind").and_then(Value::as_str)
    }
}

fn uint(v: &Value, path: &str) -> Result<usize, BundleError> {
    v.as_u64().and_then(|x| usize::try_from(x).ok()).ok_or_else(|| shape(path, "expected a non-negative integer"))
}

fn vector(v: &Value, path: &str) -> Result<Vec<usize>, BundleError> {
    let items = v.as_array().ok_or_else(|| shape(path, "expected an array of integers"))?;
    items.iter().enumerate().map(|(i, x)| uint(x, &format!("{path}[{i}]"))).collect()
}

fn builtin_name(o: &Obj<'_>, kind: &str) -> Result<String, BundleError> {
    o.allow(&["kind", "name"])?;
    let name = o.string("name")?;
    if !catalog::contains(kind, &name) {
        return Err(BundleError::UnknownReference { name, path: o.sub("name") });
    }
    Ok(name)
}

/// Parse and structurally validate a bundle.
pub fn parse_bundle(text: &str) -> Result<Bundle, BundleError> {
    let root: Value = serde_json::from_str(text).map_err(|e| BundleError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let top = Obj::new("$".into(), &root)?;
    top.allow(&SECTIONS)?;
    let section = |name: &str| -> Result<Vec<(String, Obj<'_>)>, BundleError> {
        match top.map.get(name) {
            None => Ok(vec![]),
            Some(v) => {
                let s = Obj::new(top.sub(name), v)?;
                s.map.iter().map(|(k, v)| Obj::new(s.sub(k), v).map(|o| (k.clone(), o))).collect()
            }
        }
    };
    let mut b = Bundle::default();
    let mut orders: BTreeMap<String, usize> = BTreeMap::new();

    for (name, o) in section("groups")? {
        let spec = match o.kind() {
            Some("table") => {
                o.allow(&["kind", "table"])?;
                let t = o.matrix("table")?;
                if t.is_empty() {
                    return Err(shape(&o.sub("table"), "empty table"));
                }
                if let Some(i) = t.iter().position(|r| r.len() != t.len()) {
                    return Err(shape(
                        &format!("{}[{i}]", o.sub("table")),
                        format!("row length differs from {}", t.len()),
                    ));
                }
                GroupSpec::Table(t)
            }
            Some("cyclic") => {
                o.allow(&["kind", "n"])?;
                let n = o.uint("n")?;
                if n == 0 {
                    return Err(shape(&o.sub("n"), "order must be positive"));
                }
                GroupSpec::Cyclic(n)
            }
            Some("builtin") => GroupSpec::Builtin(builtin_name(&o, "group")?),
            _ => return Err(shape(&o.sub("kind"), "expected \"table\", \"cyclic\" or \"builtin\"")),
        };
        let order = match &spec {
            GroupSpec::Table(t) => t.len(),
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Builtin(g) => catalog::group(g).expect("checked above").order(),
        };
        orders.insert(name.clone(), order);
        b.groups.insert(name, spec);
    }

    let order_of = |o: &Obj<'_>, key: &str| -> Result<(String, usize), BundleError> {
        let name = o.string(key)?;
        match orders.get(&name) {
            Some(&n) => Ok((name, n)),
            None => Err(BundleError::UnknownReference { name, path: o.sub(key) }),
        }
    };

    for (name, o) in section("homs")? {
        o.allow(&["dom", "cod", "map"])?;
        let (dom, n) = order_of(&o, "dom")?;
        let (cod, _) = order_of(&o, "cod")?;
        let map = o.vector("map")?;
        if map.len() != n {
            return Err(shape(&o.sub("map"), format!("expected {n} entries, found {}", map.len())));
        }
        b.homs.insert(name, HomSpec { dom, cod, map });
    }

    for (name, o) in section("actions")? {
        o.allow(&["actor", "space", "table"])?;
        let (actor, nb) = order_of(&o, "actor")?;
        let (space, na) = order_of(&o, "space")?;
        let table = o.matrix("table")?;
        if table.len() != nb || table.iter().any(|r| r.len() != na) {
            return Err(shape(&o.sub("table"), format!("expected {nb} rows of length {na}")));
        }
        b.actions.insert(name, ActionSpec { actor, space, table });
    }

    let reference = |o: &Obj<'_>, key: &str, known: &dyn Fn(&str) -> bool| -> Result<String, BundleError> {
        let name = o.string(key)?;
        if known(&name) {
            Ok(name)
        } else {
            Err(BundleError::UnknownReference { name, path: o.sub(key) })
        }
    };
    let is_group = |n: &str| b.groups.contains_key(n);
    let is_hom = |n: &str| b.homs.contains_key(n);
    let is_action = |n: &str| b.actions.contains_key(n);

    let mut xmods = BTreeMap::new();
    for (name, o) in section("xmods")? {
        let entry = if o.kind() == Some("builtin") {
            Entry::Builtin(builtin_name(&o, "xmod")?)
        } else {
            o.allow(&["boundary", "action"])?;
            Entry::Data(XModData {
                boundary: reference(&o, "boundary", &is_hom)?,
                action: reference(&o, "action", &is_action)?,
            })
        };
        xmods.insert(name, entry);
    }

    let mut ggpds = BTreeMap::new();
    for (name, o) in section("ggpds")? {
        let entry = if o.kind() == Some("builtin") {
            Entry::Builtin(builtin_name(&o, "ggpd")?)
        } else {
            o.allow(&["g1", "g0", "source", "target", "identity", "composition"])?;
            let composition = match o.map.get("composition") {
                None => None,
                Some(_) => {
                    let rows = o.matrix("composition")?;
                    if let Some(i) = rows.iter().position(|r| r.len() != 3) {
                        return Err(shape(&format!("{}[{i}]", o.sub("composition")), "expected [b, a, b∘a]"));
                    }
                    Some(rows.iter().map(|r| [r[0], r[1], r[2]]).collect())
                }
            };
            Entry::Data(GgpdData {
                g1: reference(&o, "g1", &is_group)?,
                g0: reference(&o, "g0", &is_group)?,
                source: reference(&o, "source", &is_hom)?,
                target: reference(&o, "target", &is_hom)?,
                identity: reference(&o, "identity", &is_hom)?,
                composition,
            })
        };
        ggpds.insert(name, entry);
    }

    let is_xmod = |n: &str| xmods.contains_key(n);
    let mut catxmods = BTreeMap::new();
    for (name, o) in section("catxmods")? {
        let entry = if o.kind() == Some("builtin") {
            Entry::Builtin(builtin_name(&o, "catxmod")?)
        } else {
            o.allow(&["c1", "c0", "source_a", "source_b", "target_a", "target_b", "identity_a", "identity_b"])?;
            Entry::Data(CatXModData {
                c1: reference(&o, "c1", &is_xmod)?,
                c0: reference(&o, "c0", &is_xmod)?,
                source_a: reference(&o, "source_a", &is_hom)?,
                source_b: reference(&o, "source_b", &is_hom)?,
                target_a: reference(&o, "target_a", &is_hom)?,
                target_b: reference(&o, "target_b", &is_hom)?,
                identity_a: reference(&o, "identity_a", &is_hom)?,
                identity_b: reference(&o, "identity_b", &is_hom)?,
            })
        };
        catxmods.insert(name, entry);
    }

    let mut xsqs = BTreeMap::new();
    for (name, o) in section("xsqs")? {
        let entry = if o.kind() == Some("builtin") {
            Entry::Builtin(builtin_name(&o, "xsq")?)
        } else {
            o.allow(&["l", "m", "n", "p", "lambda", "lambda_p", "mu", "nu", "act_l", "act_m", "act_n", "h"])?;
            let (m, nm) = order_of(&o, "m")?;
            let (n, nn) = order_of(&o, "n")?;
            let h = o.matrix("h")?;
            if h.len() != nm || h.iter().any(|r| r.len() != nn) {
                return Err(shape(&o.sub("h"), format!("expected {nm} rows of length {nn}")));
            }
            Entry::Data(XSqData {
                l: reference(&o, "l", &is_group)?,
                m,
                n,
                p: reference(&o, "p", &is_group)?,
                lambda: reference(&o, "lambda", &is_hom)?,
                lambda_p: reference(&o, "lambda_p", &is_hom)?,
                mu: reference(&o, "mu", &is_hom)?,
                nu: reference(&o, "nu", &is_hom)?,
                act_l: reference(&o, "act_l", &is_action)?,
                act_m: reference(&o, "act_m", &is_action)?,
                act_n: reference(&o, "act_n", &is_action)?,
                h,
            })
        };
        xsqs.insert(name, entry);
    }

    b.xmods = xmods;
    b.ggpds = ggpds;
    b.catxmods = catxmods;
    b.xsqs = xsqs;
    Ok(b)
}

fn builtin(name: &str) -> Value {
    json!({"kind": "builtin", "name": name})
}

fn entry_value<T>(e: &Entry<T>, data: impl Fn(&T) -> Value) -> Value {
    match e {
        Entry::Builtin(n) => builtin(n),
        Entry::Data(d) => data(d),
    }
}

impl Bundle {
    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        let mut put = |key: &str, m: Map<String, Value>| {
            if !m.is_empty() {
                top.insert(key.to_owned(), Value::Object(m));
            }
        };
        put(
            "groups",
            self.groups
                .iter()
                .map(|(k, g)| {
                    let v = match g {
                        GroupSpec::Table(t) => json!({"kind": "table", "table": t}),
                        GroupSpec::Cyclic(n) => json!({"kind": "cyclic", "n": n}),
                        GroupSpec::Builtin(n) => builtin(n),
                    };
                    (k.clone(), v)
                })
                .collect(),
        );
        put(
            "homs",
            self.homs.iter().map(|(k, h)| (k.clone(), json!({"dom": h.dom, "cod": h.cod, "map": h.map}))).collect(),
        );
        put(
            "actions",
            self.actions
                .iter()
                .map(|(k, a)| (k.clone(), json!({"actor": a.actor, "space": a.space, "table": a.table})))
                .collect(),
        );
        put(
            "xmods",
            self.xmods
                .iter()
                .map(|(k, e)| (k.clone(), entry_value(e, |d| json!({"boundary": d.boundary, "action": d.action}))))
                .collect(),
        );
        put(
            "ggpds",
            self.ggpds
                .iter()
                .map(|(k, e)| {
                    let v = entry_value(e, |d| {
                        let mut v = json!({"g1": d.g1, "g0": d.g0, "source": d.source, "target": d.target, "identity": d.identity});
                        if let Some(c) = &d.composition {
                            v["composition"] = json!(c);
                        }
                        v
                    });
                    (k.clone(), v)
                })
                .collect(),
        );
        put(
            "catxmods",
            self.catxmods
                .iter()
                .map(|(k, e)| {
                    let v = entry_value(e, |d| {
                        json!({
                            "c1": d.c1, "c0": d.c0,
                            "source_a": d.source_a, "source_b": d.source_b,
                            "target_a": d.target_a, "target_b": d.target_b,
                            "identity_a": d.identity_a, "identity_b": d.identity_b,
                        })
                    });
                    (k.clone(), v)
                })
                .collect(),
        );
        put(
            "xsqs",
            self.xsqs
                .iter()
                .map(|(k, e)| {
                    let v = entry_value(e, |d| {
                        json!({
                            "l": d.l, "m": d.m, "n": d.n, "p": d.p,
                            "lambda": d.lambda, "lambda_p": d.lambda_p, "mu": d.mu, "nu": d.nu,
                            "act_l": d.act_l, "act_m": d.act_m, "act_n": d.act_n,
                            "h": d.h,
                        })
                    });
                    (k.clone(), v)
                })
                .collect(),
        );
        Value::Object(top)
    }
}

/// Canonical text for a bundle.
pub fn serialize_bundle(b: &Bundle) -> String {
    canonical(&b.to_value())
}
