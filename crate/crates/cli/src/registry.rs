//! Named strategies chosen at run time: checkers, functor conversions,
//! enumerators and round trips.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use xalg_core::catxmod::{discrete_catxmod, pair_catxmod, CatXModMorphism};
use xalg_core::group::GroupRef;
use xalg_core::groupoid::{bs_counit, phi_bs, psi_bs};
use xalg_core::laws::count_checks;
use xalg_core::oracle::{
    classify_up_to_iso, enumerate_actions, enumerate_ggpd_structures, enumerate_h_maps, enumerate_xmods, Classifiable,
    Enumeration, EnumerationReport,
};
use xalg_core::xmod::CrossedModule;
use xalg_core::xsq::{eta, natural_iso_t, natural_iso_u, psi_sq, u_naturality};

use crate::bundle::Bundle;
use crate::emit::Emitter;
use crate::report::{CheckReport, Failure};
use crate::resolve::Resolver;

pub struct Registry<T: ?Sized> {
    items: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized> Default for Registry<T> {
    fn default() -> Self {
        Registry { items: BTreeMap::new() }
    }
}

impl<T: ?Sized> Registry<T> {
    pub fn register(&mut self, name: &'static str, item: Box<T>) -> &mut Self {
        self.items.insert(name, item);
        self
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.items.get(name).map(|b| &**b)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.items.keys().copied().collect()
    }
}

/// Validates one kind of bundle entry.
pub trait Checker: Send + Sync {
    fn names(&self, bundle: &Bundle) -> Vec<String>;
    fn validate(&self, r: &Resolver<'_>, name: &str) -> Result<(), Failure>;

    /// Run the check, counting law evaluations; input errors pass through.
    fn check(&self, r: &Resolver<'_>, name: &str) -> Result<CheckReport, Failure> {
        let (out, n) = count_checks(|| self.validate(r, name));
        match out {
            Ok(()) => Ok(CheckReport::pass(name).with_checks(n)),
            Err(Failure::Check(rep)) => Ok(rep.with_checks(n)),
            Err(e) => Err(e),
        }
    }
}

struct EntryChecker {
    names: fn(&Bundle) -> Vec<String>,
    validate: fn(&Resolver<'_>, &str) -> Result<(), Failure>,
}

impl Checker for EntryChecker {
    fn names(&self, bundle: &Bundle) -> Vec<String> {
        (self.names)(bundle)
    }

    fn validate(&self, r: &Resolver<'_>, name: &str) -> Result<(), Failure> {
        (self.validate)(r, name)
    }
}

pub fn checkers() -> Registry<dyn Checker> {
    let mut reg: Registry<dyn Checker> = Registry::default();
    reg.register(
        "group",
        Box::new(EntryChecker { names: |b| b.groups.keys().cloned().collect(), validate: |r, n| r.group(n).map(drop) }),
    )
    .register(
        "hom",
        Box::new(EntryChecker { names: |b| b.homs.keys().cloned().collect(), validate: |r, n| r.hom(n).map(drop) }),
    )
    .register(
        "action",
        Box::new(EntryChecker {
            names: |b| b.actions.keys().cloned().collect(),
            validate: |r, n| r.action(n).map(drop),
        }),
    )
    .register(
        "xmod",
        Box::new(EntryChecker { names: |b| b.xmods.keys().cloned().collect(), validate: |r, n| r.xmod(n).map(drop) }),
    )
    .register(
        "ggpd",
        Box::new(EntryChecker { names: |b| b.ggpds.keys().cloned().collect(), validate: |r, n| r.ggpd(n).map(drop) }),
    )
    .register(
        "catxmod",
        Box::new(EntryChecker {
            names: |b| b.catxmods.keys().cloned().collect(),
            validate: |r, n| r.catxmod(n).map(drop),
        }),
    )
    .register(
        "xsq",
        Box::new(EntryChecker { names: |b| b.xsqs.keys().cloned().collect(), validate: |r, n| r.xsq(n).map(drop) }),
    );
    reg
}

/// One functor between the structure kinds, writing its output as a bundle.
pub trait Conversion: Send + Sync {
    fn input_kind(&self) -> &'static str;
    fn convert(&self, r: &Resolver<'_>, name: &str, out: &str) -> Result<Bundle, Failure>;
}

fn failed<E: xalg_core::laws::Witnessed + std::fmt::Display>(subject: &str, prefix: &str, e: &E) -> Failure {
    Failure::check(CheckReport::fail(subject, prefix, e, true))
}

struct Phi;
struct Psi;
struct Eta;
struct PsiSq;
struct Pair;
struct Discrete;

impl Conversion for Phi {
    fn input_kind(&self) -> &'static str {
        "ggpd"
    }

    fn convert(&self, r: &Resolver<'_>, name: &str, out: &str) -> Result<Bundle, Failure> {
        let mut e = Emitter::default();
        e.xmod(out, &phi_bs(&r.ggpd(name)?));
        Ok(e.finish())
    }
}

impl Conversion for Psi {
    fn input_kind(&self) -> &'static str {
        "xmod"
    }

    fn convert(&self, r: &Resolver<'_>, name: &str, out: &str) -> Result<Bundle, Failure> {
        let g = psi_bs(&r.xmod(name)?).map_err(|err| failed(name, "psi_bs", &err))?;
        let mut e = Emitter::default();
        e.ggpd(out, &g);
        Ok(e.finish())
    }
}

impl Conversion for Eta {
    fn input_kind(&self) -> &'static str {
        "catxmod"
    }

    fn convert(&self, r: &Resolver<'_>, name: &str, out: &str) -> Result<Bundle, Failure> {
        let mut e = Emitter::default();
        e.xsq(out, &eta(&r.catxmod(name)?));
        Ok(e.finish())
    }
}

impl Conversion for PsiSq {
    fn input_kind(&self) -> &'static str {
        "xsq"
    }

    fn convert(&self, r: &Resolver<'_>, name: &str, out: &str) -> Result<Bundle, Failure> {
        let c = psi_sq(&r.xsq(name)?).map_err(|err| failed(name, "psi_sq", &err))?;
        let mut e = Emitter::default();
        e.catxmod(out, &c);
        Ok(e.finish())
    }
}

impl Conversion for Pair {
    fn input_kind(&self) -> &'static str {
        "xmod"
    }

    fn convert(&self, r: &Resolver<'_>, name: &str, out: &str) -> Result<Bundle, Failure> {
        let c = pair_catxmod(&r.xmod(name)?).map_err(|err| failed(name, "pair", &err))?;
        let mut e = Emitter::default();
        e.catxmod(out, &c);
        Ok(e.finish())
    }
}

impl Conversion for Discrete {
    fn input_kind(&self) -> &'static str {
        "xmod"
    }

    fn convert(&self, r: &Resolver<'_>, name: &str, out: &str) -> Result<Bundle, Failure> {
        let mut e = Emitter::default();
        e.catxmod(out, &discrete_catxmod(&r.xmod(name)?));
        Ok(e.finish())
    }
}

pub fn conversions() -> Registry<dyn Conversion> {
    let mut reg: Registry<dyn Conversion> = Registry::default();
    reg.register("phi", Box::new(Phi))
        .register("psi", Box::new(Psi))
        .register("eta", Box::new(Eta))
        .register("psi_sq", Box::new(PsiSq))
        .register("pair", Box::new(Pair))
        .register("discrete", Box::new(Discrete));
    reg
}

/// Arguments shared by the enumerators.
#[derive(Clone, Debug, Default)]
pub struct EnumArgs {
    pub a: Option<String>,
    pub b: Option<String>,
    pub square: Option<String>,
    pub classify: bool,
}

/// A brute-force enumeration, reported as text.
pub trait Enumerator: Send + Sync {
    fn run(&self, r: &Resolver<'_>, args: &EnumArgs) -> Result<EnumerationReport, Failure>;
}

fn group_arg(r: &Resolver<'_>, value: &Option<String>, flag: &str) -> Result<GroupRef, Failure> {
    let name = value.as_deref().ok_or_else(|| Failure::input(format!("missing --{flag}")))?;
    r.group(name)
}

fn summarize<T: Classifiable + Clone>(
    e: Result<Enumeration<T>, impl std::fmt::Display>,
    classify: bool,
) -> Result<EnumerationReport, Failure> {
    let mut e = e.map_err(Failure::input)?;
    if classify {
        e.report.representatives = Some(classify_up_to_iso(&e.items).len());
    }
    Ok(e.report)
}

struct ActionEnumerator;
struct XModEnumerator;
struct GgpdEnumerator;
struct HMapEnumerator;

impl Enumerator for ActionEnumerator {
    /// Actions of `--b` on `--a`.
    fn run(&self, r: &Resolver<'_>, args: &EnumArgs) -> Result<EnumerationReport, Failure> {
        let (a, b) = (group_arg(r, &args.a, "a")?, group_arg(r, &args.b, "b")?);
        summarize(enumerate_actions(&b, &a), args.classify)
    }
}

impl Enumerator for XModEnumerator {
    fn run(&self, r: &Resolver<'_>, args: &EnumArgs) -> Result<EnumerationReport, Failure> {
        let (a, b) = (group_arg(r, &args.a, "a")?, group_arg(r, &args.b, "b")?);
        summarize(enumerate_xmods(&a, &b), args.classify)
    }
}

impl Enumerator for GgpdEnumerator {
    /// Group-groupoids with arrows `--a` and objects `--b`.
    fn run(&self, r: &Resolver<'_>, args: &EnumArgs) -> Result<EnumerationReport, Failure> {
        let (a, b) = (group_arg(r, &args.a, "a")?, group_arg(r, &args.b, "b")?);
        summarize(enumerate_ggpd_structures(&a, &b), args.classify)
    }
}

impl Enumerator for HMapEnumerator {
    /// `h` maps completing the frame of the square `--square`.
    fn run(&self, r: &Resolver<'_>, args: &EnumArgs) -> Result<EnumerationReport, Failure> {
        let name = args.square.as_deref().ok_or_else(|| Failure::input("missing --square"))?;
        let s = r.xsq(name)?;
        summarize(enumerate_h_maps(s.frame()), args.classify)
    }
}

pub fn enumerators() -> Registry<dyn Enumerator> {
    let mut reg: Registry<dyn Enumerator> = Registry::default();
    reg.register("action", Box::new(ActionEnumerator))
        .register("xmod", Box::new(XModEnumerator))
        .register("ggpd", Box::new(GgpdEnumerator))
        .register("hmap", Box::new(HMapEnumerator));
    reg
}

/// Checks that a pair of functors returns a structure to itself.
pub trait Roundtrip: Send + Sync {
    fn run(&self, r: &Resolver<'_>, name: &str) -> Result<Vec<CheckReport>, Failure>;
}

fn verdict(subject: String, ok: bool, axiom: &str, witness: Vec<usize>, message: &str) -> CheckReport {
    if ok {
        CheckReport::pass(&subject)
    } else {
        CheckReport::violated(&subject, axiom, witness, message)
    }
}

/// First index where two crossed modules' tables differ.
fn xmod_difference(x: &CrossedModule, y: &CrossedModule) -> Vec<usize> {
    if x.a().order() != y.a().order() || x.b().order() != y.b().order() {
        return vec![];
    }
    if let Some(a) = x.a().elements().find(|&a| x.boundary(a) != y.boundary(a)) {
        return vec![a];
    }
    for b in x.b().elements() {
        if let Some(a) = x.a().elements().find(|&a| x.act(b, a) != y.act(b, a)) {
            return vec![b, a];
        }
    }
    vec![]
}

struct XModRoundtrip;
struct CatXModRoundtrip;
struct XSqRoundtrip;

impl Roundtrip for XModRoundtrip {
    fn run(&self, r: &Resolver<'_>, name: &str) -> Result<Vec<CheckReport>, Failure> {
        let x = r.xmod(name)?;
        let ((g, back), n) = count_checks(|| {
            let g = psi_bs(&x).map_err(|e| failed(name, "psi_bs", &e));
            let back = g.as_ref().ok().map(phi_bs);
            (g, back)
        });
        let (g, back) = (g?, back.expect("psi_bs succeeded"));
        let eq = verdict(
            format!("phi_bs(psi_bs({name})) = {name}"),
            back == x,
            "bs.equality",
            xmod_difference(&back, &x),
            "tables differ",
        )
        .with_checks(n);
        let (counit, n) = count_checks(|| bs_counit(&g));
        let counit = match counit {
            Ok(m) => verdict(
                format!("counit psi_bs(phi_bs(G)) from G = psi_bs({name})"),
                m.is_isomorphism(),
                "bs.counit.bijective",
                vec![],
                "counit is not bijective",
            ),
            Err(e) => CheckReport::fail(&format!("counit for psi_bs({name})"), "bs.counit", &e, true),
        }
        .with_checks(n);
        Ok(vec![eq, counit])
    }
}

impl Roundtrip for CatXModRoundtrip {
    fn run(&self, r: &Resolver<'_>, name: &str) -> Result<Vec<CheckReport>, Failure> {
        let c = r.catxmod(name)?;
        Ok(vec![u_report(name, &c), {
            let (nat, n) = count_checks(|| u_naturality(&CatXModMorphism::identity(&c)));
            match nat {
                Ok(ok) => verdict(
                    format!("U naturality at 1_{name}"),
                    ok,
                    "U.naturality",
                    vec![],
                    "naturality square differs",
                ),
                Err(e) => CheckReport::fail(&format!("U naturality at 1_{name}"), "U", &e, true),
            }
            .with_checks(n)
        }])
    }
}

fn u_report(name: &str, c: &xalg_core::catxmod::CatXMod) -> CheckReport {
    let subject = format!("U_{name}");
    let (u, n) = count_checks(|| natural_iso_u(c));
    match u {
        Ok(u) => verdict(subject, u.is_isomorphism(), "U.bijective", vec![], "a component is not bijective"),
        Err(e) => CheckReport::fail(&subject, "U", &e, true),
    }
    .with_checks(n)
}

impl Roundtrip for XSqRoundtrip {
    fn run(&self, r: &Resolver<'_>, name: &str) -> Result<Vec<CheckReport>, Failure> {
        let s = r.xsq(name)?;
        let subject = format!("T_{name}");
        let (t, n) = count_checks(|| natural_iso_t(&s));
        let t = match t {
            Ok(t) => verdict(subject, t.is_isomorphism(), "T.bijective", vec![], "a corner is not bijective"),
            Err(e) => CheckReport::fail(&subject, "T", &e, true),
        }
        .with_checks(n);
        let u = match psi_sq(&s) {
            Ok(c) => u_report(&format!("psi_sq({name})"), &c),
            Err(e) => CheckReport::fail(&format!("U_psi_sq({name})"), "psi_sq", &e, true),
        };
        Ok(vec![t, u])
    }
}

pub fn roundtrips() -> Registry<dyn Roundtrip> {
    let mut reg: Registry<dyn Roundtrip> = Registry::default();
    reg.register("xmod", Box::new(XModRoundtrip))
        .register("catxmod", Box::new(CatXModRoundtrip))
        .register("xsq", Box::new(XSqRoundtrip));
    reg
}

/// Every registered strategy name, grouped by registry.
pub fn describe() -> String {
    let mut s = String::new();
    let _ = writeln!(s, "checkers: {}", checkers().names().join(" "));
    let conv = conversions();
    let functors: Vec<String> =
        conv.names().into_iter().map(|n| format!("{n}({})", conv.get(n).expect("registered").input_kind())).collect();
    let _ = writeln!(s, "functors: {}", functors.join(" "));
    let _ = writeln!(s, "enumerators: {}", enumerators().names().join(" "));
    let _ = writeln!(s, "roundtrips: {}", roundtrips().names().join(" "));
    s
}
