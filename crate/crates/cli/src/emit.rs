//! Spelling validated structures out as bundle data.

use xalg_core::catxmod::CatXMod;
use xalg_core::group::{GroupAction, GroupHom, GroupRef};
use xalg_core::groupoid::GroupGroupoid;
use xalg_core::xmod::CrossedModule;
use xalg_core::xsq::CrossedSquare;

use crate::bundle::{ActionSpec, Bundle, CatXModData, Entry, GgpdData, GroupSpec, HomSpec, XModData, XSqData};
use crate::catalog;

/// Accumulates entries; groups with identical tables share one name, and
/// catalog groups are written as built-in references.
#[derive(Default)]
pub struct Emitter {
    bundle: Bundle,
    seen: Vec<(GroupRef, String)>,
}

impl Emitter {
    pub fn finish(self) -> Bundle {
        self.bundle
    }

    pub fn group(&mut self, name: &str, g: &GroupRef) -> String {
        if let Some((_, n)) = self.seen.iter().find(|(h, _)| h.rows() == g.rows()) {
            return n.clone();
        }
        let builtin = g.name().filter(|n| catalog::group(n).is_some_and(|c| c.rows() == g.rows()));
        let (key, spec) = match builtin {
            Some(n) => (n.to_owned(), GroupSpec::Builtin(n.to_owned())),
            None => (name.to_owned(), GroupSpec::Table(g.rows())),
        };
        self.bundle.groups.insert(key.clone(), spec);
        self.seen.push((g.clone(), key.clone()));
        key
    }

    pub fn hom(&mut self, name: &str, f: &GroupHom) -> String {
        let dom = self.group(&format!("{name}.dom"), f.dom());
        let cod = self.group(&format!("{name}.cod"), f.cod());
        self.bundle.homs.insert(name.to_owned(), HomSpec { dom, cod, map: f.map().to_vec() });
        name.to_owned()
    }

    pub fn action(&mut self, name: &str, act: &GroupAction) -> String {
        let actor = self.group(&format!("{name}.actor"), act.actor());
        let space = self.group(&format!("{name}.space"), act.space());
        self.bundle.actions.insert(name.to_owned(), ActionSpec { actor, space, table: act.rows() });
        name.to_owned()
    }

    pub fn xmod(&mut self, name: &str, x: &CrossedModule) -> String {
        self.group(&format!("{name}.a"), x.a());
        self.group(&format!("{name}.b"), x.b());
        let boundary = self.hom(&format!("{name}.boundary"), x.alpha());
        let action = self.action(&format!("{name}.action"), x.action());
        self.bundle.xmods.insert(name.to_owned(), Entry::Data(XModData { boundary, action }));
        name.to_owned()
    }

    pub fn ggpd(&mut self, name: &str, g: &GroupGroupoid) -> String {
        let g1 = self.group(&format!("{name}.g1"), g.g1());
        let g0 = self.group(&format!("{name}.g0"), g.g0());
        let data = GgpdData {
            g1,
            g0,
            source: self.hom(&format!("{name}.source"), g.s()),
            target: self.hom(&format!("{name}.target"), g.t()),
            identity: self.hom(&format!("{name}.identity"), g.eps()),
            composition: None,
        };
        self.bundle.ggpds.insert(name.to_owned(), Entry::Data(data));
        name.to_owned()
    }

    pub fn catxmod(&mut self, name: &str, c: &CatXMod) -> String {
        let c1 = self.xmod(&format!("{name}.c1"), c.c1());
        let c0 = self.xmod(&format!("{name}.c0"), c.c0());
        let (s, t, eps) = (c.s(), c.t(), c.eps());
        let data = CatXModData {
            c1,
            c0,
            source_a: self.hom(&format!("{name}.source_a"), s.f_a()),
            source_b: self.hom(&format!("{name}.source_b"), s.f_b()),
            target_a: self.hom(&format!("{name}.target_a"), t.f_a()),
            target_b: self.hom(&format!("{name}.target_b"), t.f_b()),
            identity_a: self.hom(&format!("{name}.identity_a"), eps.f_a()),
            identity_b: self.hom(&format!("{name}.identity_b"), eps.f_b()),
        };
        self.bundle.catxmods.insert(name.to_owned(), Entry::Data(data));
        name.to_owned()
    }

    pub fn xsq(&mut self, name: &str, s: &CrossedSquare) -> String {
        let f = s.frame();
        let data = XSqData {
            l: self.group(&format!("{name}.l"), s.l()),
            m: self.group(&format!("{name}.m"), s.m()),
            n: self.group(&format!("{name}.n"), s.n()),
            p: self.group(&format!("{name}.p"), s.p()),
            lambda: self.hom(&format!("{name}.lambda"), &f.lambda),
            lambda_p: self.hom(&format!("{name}.lambda_p"), &f.lambda_p),
            mu: self.hom(&format!("{name}.mu"), &f.mu),
            nu: self.hom(&format!("{name}.nu"), &f.nu),
            act_l: self.action(&format!("{name}.act_l"), &f.act_l),
            act_m: self.action(&format!("{name}.act_m"), &f.act_m),
            act_n: self.action(&format!("{name}.act_n"), &f.act_n),
            h: s.h_rows(),
        };
        self.bundle.xsqs.insert(name.to_owned(), Entry::Data(data));
        name.to_owned()
    }
}
