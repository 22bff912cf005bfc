//! Built-in example structures, addressable by name.
//!
//! Groups: `z1` … `z8`, `klein4`, `sym3`, `dih4`, `quat8` with the tables
//! documented on the corresponding [`FiniteGroup`] constructors.
//!
//! Crossed modules: `incl_a3_s3`, `conj_s3`, `inner_s3`, `trivmod_z3_z2`,
//! `incl_2z4_z4`. Over each crossed module `x` there are the group-groupoid
//! `bs_x`, the internal categories `pair_x` and `discrete_x`, and the
//! squares `identity_sq_x`, `trivial_sq_x` and `normal_inclusion_sq_x`.
//! `identity_sq_sym3` names `identity_sq_conj_s3`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use xalg_core::catxmod::{discrete_catxmod, pair_catxmod, CatXMod};
use xalg_core::group::{FiniteGroup, GroupAction, GroupRef, Subgroup};
use xalg_core::groupoid::{psi_bs, GroupGroupoid};
use xalg_core::xmod::{
    conjugation_xmod, inclusion_xmod, inner_automorphism_xmod, trivial_module_xmod, CrossedModule, SubXMod,
};
use xalg_core::xsq::{identity_square, normal_inclusion_square, trivial_square, CrossedSquare};

use crate::bundle::{Bundle, Entry, GroupSpec};
use crate::emit::Emitter;

pub const KINDS: [&str; 5] = ["group", "xmod", "ggpd", "catxmod", "xsq"];

pub struct Catalog {
    pub groups: BTreeMap<String, GroupRef>,
    pub xmods: BTreeMap<String, CrossedModule>,
    pub normal_subs: BTreeMap<String, SubXMod>,
    pub ggpds: BTreeMap<String, GroupGroupoid>,
    pub catxmods: BTreeMap<String, CatXMod>,
    pub xsqs: BTreeMap<String, CrossedSquare>,
}

fn build() -> Catalog {
    let mut groups = BTreeMap::new();
    for n in 1..=8 {
        groups.insert(format!("z{n}"), Arc::new(FiniteGroup::cyclic(n)));
    }
    for g in [FiniteGroup::klein4(), FiniteGroup::sym3(), FiniteGroup::dih4(), FiniteGroup::quat8()] {
        groups.insert(g.name().expect("named").to_owned(), Arc::new(g));
    }
    let s3 = groups["sym3"].clone();
    let z4 = groups["z4"].clone();
    let a3 = Subgroup::new(s3.clone(), vec![0, 3, 4]).expect("A3");

    let mut xmods = BTreeMap::new();
    xmods.insert("incl_a3_s3".to_owned(), inclusion_xmod(&a3).expect("A3 is normal"));
    xmods.insert("conj_s3".to_owned(), conjugation_xmod(&s3));
    xmods.insert("inner_s3".to_owned(), inner_automorphism_xmod(&s3).expect("Aut(S3)"));
    let z3 = groups["z3"].clone();
    let z2 = groups["z2"].clone();
    let inversion = GroupAction::new(z2, z3.clone(), vec![vec![0, 1, 2], vec![0, 2, 1]]).expect("inversion");
    xmods.insert("trivmod_z3_z2".to_owned(), trivial_module_xmod(&inversion).expect("Z3 is abelian"));
    let two_z4 = Subgroup::new(z4, vec![0, 2]).expect("2Z4");
    xmods.insert("incl_2z4_z4".to_owned(), inclusion_xmod(&two_z4).expect("abelian"));

    let sub = |x: &CrossedModule, s: Vec<usize>, t: Vec<usize>| {
        let s = Subgroup::new(x.a().clone(), s).expect("S");
        let t = Subgroup::new(x.b().clone(), t).expect("T");
        SubXMod::new(x.clone(), s, t).expect("sub crossed module")
    };
    let mut normal_subs = BTreeMap::new();
    for (name, x) in &xmods {
        let whole_a: Vec<usize> = x.a().elements().collect();
        let (s, t) = match name.as_str() {
            "incl_a3_s3" => (whole_a, vec![0, 3, 4]),
            "conj_s3" => (vec![0, 3, 4], vec![0, 3, 4]),
            "inner_s3" => (vec![0, 3, 4], [0, 3, 4].iter().map(|&a| x.boundary(a)).collect()),
            "trivmod_z3_z2" => (whole_a, vec![0]),
            "incl_2z4_z4" => (whole_a, vec![0, 2]),
            _ => unreachable!(),
        };
        normal_subs.insert(name.clone(), sub(x, s, t));
    }

    let mut ggpds = BTreeMap::new();
    let mut catxmods = BTreeMap::new();
    let mut xsqs = BTreeMap::new();
    for (name, x) in &xmods {
        ggpds.insert(format!("bs_{name}"), psi_bs(x).expect("psi_bs"));
        catxmods.insert(format!("pair_{name}"), pair_catxmod(x).expect("pair"));
        catxmods.insert(format!("discrete_{name}"), discrete_catxmod(x));
        xsqs.insert(format!("identity_sq_{name}"), identity_square(x));
        xsqs.insert(format!("trivial_sq_{name}"), trivial_square(x));
        xsqs.insert(
            format!("normal_inclusion_sq_{name}"),
            normal_inclusion_square(&normal_subs[name]).expect("normal"),
        );
    }
    xsqs.insert("identity_sq_sym3".to_owned(), xsqs["identity_sq_conj_s3"].clone());

    Catalog { groups, xmods, normal_subs, ggpds, catxmods, xsqs }
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(build)
}

impl Catalog {
    pub fn names(&self, kind: &str) -> Vec<String> {
        let keys: Vec<&String> = match kind {
            "group" => self.groups.keys().collect(),
            "xmod" => self.xmods.keys().collect(),
            "ggpd" => self.ggpds.keys().collect(),
            "catxmod" => self.catxmods.keys().collect(),
            "xsq" => self.xsqs.keys().collect(),
            _ => vec![],
        };
        keys.into_iter().cloned().collect()
    }

    /// Every entry as `(kind, name)`.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        KINDS.iter().flat_map(|&k| self.names(k).into_iter().map(move |n| (k, n))).collect()
    }

    pub fn kind_of(&self, name: &str) -> Option<&'static str> {
        KINDS.into_iter().find(|k| contains(k, name))
    }

    /// A bundle that refers to every entry by its built-in name.
    pub fn reference_bundle(&self) -> Bundle {
        let mut b = Bundle::default();
        for name in self.groups.keys() {
            b.groups.insert(name.clone(), GroupSpec::Builtin(name.clone()));
        }
        for name in self.xmods.keys() {
            b.xmods.insert(name.clone(), Entry::Builtin(name.clone()));
        }
        for name in self.ggpds.keys() {
            b.ggpds.insert(name.clone(), Entry::Builtin(name.clone()));
        }
        for name in self.catxmods.keys() {
            b.catxmods.insert(name.clone(), Entry::Builtin(name.clone()));
        }
        for name in self.xsqs.keys() {
            b.xsqs.insert(name.clone(), Entry::Builtin(name.clone()));
        }
        b
    }

    /// A self-contained bundle spelling out one entry as inline data.
    pub fn emit(&self, name: &str) -> Option<Bundle> {
        let mut e = Emitter::default();
        match self.kind_of(name)? {
            "group" => {
                e.group(name, &self.groups[name]);
            }
            "xmod" => {
                e.xmod(name, &self.xmods[name]);
            }
            "ggpd" => {
                e.ggpd(name, &self.ggpds[name]);
            }
            "catxmod" => {
                e.catxmod(name, &self.catxmods[name]);
            }
            _ => {
                e.xsq(name, &self.xsqs[name]);
            }
        }
        Some(e.finish())
    }
}

pub fn group(name: &str) -> Option<GroupRef> {
    catalog().groups.get(name).cloned()
}

pub fn contains(kind: &str, name: &str) -> bool {
    let c = catalog();
    match kind {
        "group" => c.groups.contains_key(name),
        "xmod" => c.xmods.contains_key(name),
        "ggpd" => c.ggpds.contains_key(name),
        "catxmod" => c.catxmods.contains_key(name),
        "xsq" => c.xsqs.contains_key(name),
        _ => false,
    }
}
