//! Turning bundle entries into validated structures.

use std::fmt;
use std::sync::Arc;

use xalg_core::catxmod::{catxmod_check, CatXMod, CatXModCandidate};
use xalg_core::group::{FiniteGroup, GroupAction, GroupError, GroupHom, GroupRef};
use xalg_core::groupoid::{ggpd_check, GroupGroupoid, GroupoidCandidate};
use xalg_core::laws::Witnessed;
use xalg_core::limits::size_limit;
use xalg_core::xmod::{xmod_check, CrossedModule, XModCandidate};
use xalg_core::xsq::{xsq_check, CrossedSquare, XSqCandidate};

use crate::bundle::{Bundle, Entry, GroupSpec};
use crate::catalog::catalog;
use crate::report::{CheckReport, Failure};

/// Components whose declared groups disagree with where they are used.
#[derive(Debug)]
struct Mismatch(String);

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Witnessed for Mismatch {
    fn tag(&self) -> String {
        "carrier".into()
    }

    fn witness(&self) -> Vec<usize> {
        vec![]
    }
}

fn missing(kind: &str, name: &str) -> Failure {
    Failure::input(format!("no {kind} named {name:?}"))
}

/// Re-attribute a component failure to the structure that uses it.
fn within(f: Failure, subject: &str, field: &str) -> Failure {
    match f {
        Failure::Check(mut r) => {
            r.axiom = r.axiom.map(|a| format!("{field}.{a}"));
            r.message = r.message.map(|m| format!("{} ({m})", r.subject));
            r.subject = subject.to_owned();
            Failure::Check(r)
        }
        other => other,
    }
}

fn limit_error(e: &GroupError) -> Option<Failure> {
    match e {
        GroupError::SizeLimit { .. } => Some(Failure::input(e)),
        _ => None,
    }
}

pub struct Resolver<'a> {
    bundle: &'a Bundle,
}

impl<'a> Resolver<'a> {
    pub fn new(bundle: &'a Bundle) -> Self {
        Resolver { bundle }
    }

    pub fn bundle(&self) -> &Bundle {
        self.bundle
    }

    pub fn group(&self, name: &str) -> Result<GroupRef, Failure> {
        match self.bundle.groups.get(name).ok_or_else(|| missing("group", name))? {
            GroupSpec::Builtin(b) => crate::catalog::group(b).ok_or_else(|| missing("built-in group", b)),
            GroupSpec::Cyclic(n) => {
                if *n > size_limit() {
                    return Err(Failure::input(format!(
                        "cyclic group of order {n} exceeds the size limit {}",
                        size_limit()
                    )));
                }
                Ok(Arc::new(FiniteGroup::cyclic(*n)))
            }
            GroupSpec::Table(rows) => match FiniteGroup::from_table(rows.clone()) {
                Ok(g) => Ok(Arc::new(g.with_name(name))),
                Err(e) => Err(limit_error(&e).unwrap_or_else(|| {
                    Failure::check(CheckReport::fail(name, "group", &e, FiniteGroup::reproduces(rows, &e)))
                })),
            },
        }
    }

    fn expect_group(&self, subject: &str, field: &str, declared: &str, expected: &GroupRef) -> Result<(), Failure> {
        let g = self.group(declared).map_err(|f| within(f, subject, field))?;
        if g.rows() == expected.rows() {
            Ok(())
        } else {
            let m = Mismatch(format!("{field} is declared over {declared:?}, which differs from where it is used"));
            Err(Failure::check(CheckReport::fail(subject, field, &m, true)))
        }
    }

    /// Raw map of a named hom, after checking its declared groups.
    fn hom_map(
        &self,
        subject: &str,
        field: &str,
        name: &str,
        dom: &GroupRef,
        cod: &GroupRef,
    ) -> Result<Vec<usize>, Failure> {
        let spec = self.bundle.homs.get(name).ok_or_else(|| missing("hom", name))?;
        self.expect_group(subject, field, &spec.dom, dom)?;
        self.expect_group(subject, field, &spec.cod, cod)?;
        Ok(spec.map.clone())
    }

    fn action_table(
        &self,
        subject: &str,
        field: &str,
        name: &str,
        actor: &GroupRef,
        space: &GroupRef,
    ) -> Result<Vec<Vec<usize>>, Failure> {
        let spec = self.bundle.actions.get(name).ok_or_else(|| missing("action", name))?;
        self.expect_group(subject, field, &spec.actor, actor)?;
        self.expect_group(subject, field, &spec.space, space)?;
        Ok(spec.table.clone())
    }

    pub fn hom(&self, name: &str) -> Result<GroupHom, Failure> {
        let spec = self.bundle.homs.get(name).ok_or_else(|| missing("hom", name))?;
        let dom = self.group(&spec.dom).map_err(|f| within(f, name, "dom"))?;
        let cod = self.group(&spec.cod).map_err(|f| within(f, name, "cod"))?;
        GroupHom::new(dom.clone(), cod.clone(), spec.map.clone()).map_err(|e| {
            Failure::check(CheckReport::fail(name, "", &e, GroupHom::reproduces(&dom, &cod, &spec.map, &e)))
        })
    }

    pub fn action(&self, name: &str) -> Result<GroupAction, Failure> {
        let spec = self.bundle.actions.get(name).ok_or_else(|| missing("action", name))?;
        let actor = self.group(&spec.actor).map_err(|f| within(f, name, "actor"))?;
        let space = self.group(&spec.space).map_err(|f| within(f, name, "space"))?;
        GroupAction::new(actor.clone(), space.clone(), spec.table.clone()).map_err(|e| {
            Failure::check(CheckReport::fail(name, "", &e, GroupAction::reproduces(&actor, &space, &spec.table, &e)))
        })
    }

    pub fn xmod_candidate(&self, name: &str) -> Result<XModCandidate, Failure> {
        match self.bundle.xmods.get(name).ok_or_else(|| missing("xmod", name))? {
            Entry::Builtin(b) => {
                catalog().xmods.get(b).map(CrossedModule::to_candidate).ok_or_else(|| missing("built-in xmod", b))
            }
            Entry::Data(d) => {
                let hom = self.bundle.homs.get(&d.boundary).ok_or_else(|| missing("hom", &d.boundary))?;
                let a = self.group(&hom.dom).map_err(|f| within(f, name, "a"))?;
                let b = self.group(&hom.cod).map_err(|f| within(f, name, "b"))?;
                let action = self.action_table(name, "action", &d.action, &b, &a)?;
                Ok(XModCandidate { a, b, boundary: hom.map.clone(), action })
            }
        }
    }

    pub fn xmod(&self, name: &str) -> Result<CrossedModule, Failure> {
        let cand = self.xmod_candidate(name)?;
        xmod_check(&cand).map_err(|e| Failure::check(CheckReport::fail(name, "", &e, cand.reproduces(&e))))
    }

    pub fn ggpd_candidate(&self, name: &str) -> Result<GroupoidCandidate, Failure> {
        match self.bundle.ggpds.get(name).ok_or_else(|| missing("ggpd", name))? {
            Entry::Builtin(b) => {
                catalog().ggpds.get(b).map(GroupGroupoid::to_candidate).ok_or_else(|| missing("built-in ggpd", b))
            }
            Entry::Data(d) => {
                let g1 = self.group(&d.g1).map_err(|f| within(f, name, "g1"))?;
                let g0 = self.group(&d.g0).map_err(|f| within(f, name, "g0"))?;
                Ok(GroupoidCandidate {
                    source: self.hom_map(name, "source", &d.source, &g1, &g0)?,
                    target: self.hom_map(name, "target", &d.target, &g1, &g0)?,
                    identity: self.hom_map(name, "identity", &d.identity, &g0, &g1)?,
                    composition: d.composition.clone(),
                    g1,
                    g0,
                })
            }
        }
    }

    pub fn ggpd(&self, name: &str) -> Result<GroupGroupoid, Failure> {
        let cand = self.ggpd_candidate(name)?;
        ggpd_check(&cand).map_err(|e| Failure::check(CheckReport::fail(name, "", &e, cand.reproduces(&e))))
    }

    pub fn catxmod_candidate(&self, name: &str) -> Result<CatXModCandidate, Failure> {
        match self.bundle.catxmods.get(name).ok_or_else(|| missing("catxmod", name))? {
            Entry::Builtin(b) => {
                catalog().catxmods.get(b).map(CatXMod::to_candidate).ok_or_else(|| missing("built-in catxmod", b))
            }
            Entry::Data(d) => {
                let c1 = self.xmod(&d.c1).map_err(|f| within(f, name, "c1"))?;
                let c0 = self.xmod(&d.c0).map_err(|f| within(f, name, "c0"))?;
                let (a1, b1, a0, b0) = (c1.a().clone(), c1.b().clone(), c0.a().clone(), c0.b().clone());
                Ok(CatXModCandidate {
                    source_a: self.hom_map(name, "source_a", &d.source_a, &a1, &a0)?,
                    source_b: self.hom_map(name, "source_b", &d.source_b, &b1, &b0)?,
                    target_a: self.hom_map(name, "target_a", &d.target_a, &a1, &a0)?,
                    target_b: self.hom_map(name, "target_b", &d.target_b, &b1, &b0)?,
                    identity_a: self.hom_map(name, "identity_a", &d.identity_a, &a0, &a1)?,
                    identity_b: self.hom_map(name, "identity_b", &d.identity_b, &b0, &b1)?,
                    c1,
                    c0,
                })
            }
        }
    }

    pub fn catxmod(&self, name: &str) -> Result<CatXMod, Failure> {
        let cand = self.catxmod_candidate(name)?;
        catxmod_check(&cand).map_err(|e| Failure::check(CheckReport::fail(name, "", &e, cand.reproduces(&e))))
    }

    pub fn xsq_candidate(&self, name: &str) -> Result<XSqCandidate, Failure> {
        match self.bundle.xsqs.get(name).ok_or_else(|| missing("xsq", name))? {
            Entry::Builtin(b) => {
                catalog().xsqs.get(b).map(CrossedSquare::to_candidate).ok_or_else(|| missing("built-in xsq", b))
            }
            Entry::Data(d) => {
                let l = self.group(&d.l).map_err(|f| within(f, name, "l"))?;
                let m = self.group(&d.m).map_err(|f| within(f, name, "m"))?;
                let n = self.group(&d.n).map_err(|f| within(f, name, "n"))?;
                let p = self.group(&d.p).map_err(|f| within(f, name, "p"))?;
                Ok(XSqCandidate {
                    lambda: self.hom_map(name, "lambda", &d.lambda, &l, &m)?,
                    lambda_p: self.hom_map(name, "lambda_p", &d.lambda_p, &l, &n)?,
                    mu: self.hom_map(name, "mu", &d.mu, &m, &p)?,
                    nu: self.hom_map(name, "nu", &d.nu, &n, &p)?,
                    act_l: self.action_table(name, "act_l", &d.act_l, &p, &l)?,
                    act_m: self.action_table(name, "act_m", &d.act_m, &p, &m)?,
                    act_n: self.action_table(name, "act_n", &d.act_n, &p, &n)?,
                    h: d.h.clone(),
                    l,
                    m,
                    n,
                    p,
                })
            }
        }
    }

    pub fn xsq(&self, name: &str) -> Result<CrossedSquare, Failure> {
        let cand = self.xsq_candidate(name)?;
        xsq_check(&cand).map_err(|e| Failure::check(CheckReport::fail(name, "", &e, cand.reproduces(&e))))
    }
}
