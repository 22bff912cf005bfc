//! Crossed modules `(A, B, α, ·)`, their morphisms, subcrossed modules,
//! kernels, images and pullbacks.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{
    automorphism_group, direct_product, pullback_group, FiniteGroup, GroupAction, GroupError, GroupHom, GroupRef,
    Subgroup,
};
use crate::laws::{self, Law, Witnessed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XModError {
    #[error("boundary map: {0}")]
    Boundary(GroupError),
    #[error("action: {0}")]
    Action(GroupError),
    #[error("{0}")]
    Group(GroupError),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(&'static str),
    #[error("CM1 fails at b={b}, a={a}")]
    Cm1Fail { b: usize, a: usize },
    #[error("CM2 fails at a={a}, a'={a2}")]
    Cm2Fail { a: usize, a2: usize },
    #[error("subgroup is not normal: {g} conjugates {s} outside it")]
    NotNormal { g: usize, s: usize },
    #[error("module is not abelian: {x} and {y} do not commute")]
    NotAbelian { x: usize, y: usize },
    #[error("morphism component {which}: {source}")]
    Component { which: &'static str, source: GroupError },
    #[error("f_B∘α ≠ α'∘f_A at a={a}")]
    SquareFail { a: usize },
    #[error("f_A(b·a) ≠ f_B(b)·f_A(a) at b={b}, a={a}")]
    EquivarianceFail { b: usize, a: usize },
    #[error("α sends {s} outside T")]
    BoundaryLeaves { s: usize },
    #[error("{t}·{s} leaves S")]
    ActionLeaves { t: usize, s: usize },
    #[error("condition (i): T is not normal in B ({b} conjugates {t} outside T)")]
    Cond1Fail { b: usize, t: usize },
    #[error("condition (ii): {b}·{s} leaves S")]
    Cond2Fail { b: usize, s: usize },
    #[error("condition (iii): {t}·{a} − {a} leaves S")]
    Cond3Fail { t: usize, a: usize },
    #[error("morphisms do not share a target")]
    TargetMismatch,
}

impl Witnessed for XModError {
    fn tag(&self) -> String {
        match self {
            XModError::Boundary(e) => format!("boundary.{}", e.tag()),
            XModError::Action(e) => e.tag(),
            XModError::Group(e) => e.tag(),
            XModError::Component { which, source } => format!("{which}.{}", source.tag()),
            XModError::CarrierMismatch(_) => "carrier".into(),
            XModError::Cm1Fail { .. } => "CM1".into(),
            XModError::Cm2Fail { .. } => "CM2".into(),
            XModError::NotNormal { .. } => "not_normal".into(),
            XModError::NotAbelian { .. } => "not_abelian".into(),
            XModError::SquareFail { .. } => "square".into(),
            XModError::EquivarianceFail { .. } => "equivariance".into(),
            XModError::BoundaryLeaves { .. } => "boundary_leaves".into(),
            XModError::ActionLeaves { .. } => "action_leaves".into(),
            XModError::Cond1Fail { .. } => "cond1".into(),
            XModError::Cond2Fail { .. } => "cond2".into(),
            XModError::Cond3Fail { .. } => "cond3".into(),
            XModError::TargetMismatch => "target_mismatch".into(),
        }
    }

    fn witness(&self) -> Vec<usize> {
        match *self {
            XModError::Boundary(ref e) | XModError::Action(ref e) | XModError::Group(ref e) => e.witness(),
            XModError::Component { ref source, .. } => source.witness(),
            XModError::CarrierMismatch(_) | XModError::TargetMismatch => vec![],
            XModError::Cm1Fail { b, a } => vec![b, a],
            XModError::Cm2Fail { a, a2 } => vec![a, a2],
            XModError::NotNormal { g, s } => vec![g, s],
            XModError::NotAbelian { x, y } => vec![x, y],
            XModError::SquareFail { a } => vec![a],
            XModError::EquivarianceFail { b, a } => vec![b, a],
            XModError::BoundaryLeaves { s } => vec![s],
            XModError::ActionLeaves { t, s } => vec![t, s],
            XModError::Cond1Fail { b, t } => vec![b, t],
            XModError::Cond2Fail { b, s } => vec![b, s],
            XModError::Cond3Fail { t, a } => vec![t, a],
        }
    }
}

impl From<GroupError> for XModError {
    fn from(e: GroupError) -> Self {
        XModError::Group(e)
    }
}

/// A validated crossed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    alpha: GroupHom,
    action: GroupAction,
}

/// Unvalidated crossed-module data: the boundary map and the action table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModCandidate {
    pub a: GroupRef,
    pub b: GroupRef,
    pub boundary: Vec<usize>,
    /// `action[b][a] = b·a`
    pub action: Vec<Vec<usize>>,
}

fn xmod_laws<'a>(alpha: &'a GroupHom, action: &'a GroupAction) -> Vec<Law<'a>> {
    let (a, b) = (alpha.dom(), alpha.cod());
    vec![
        Law::new("CM1", vec![b.order(), a.order()], move |t| {
            alpha.apply(action.apply(t[0], t[1])) == b.conj(t[0], alpha.apply(t[1]))
        }),
        Law::new("CM2", vec![a.order(), a.order()], move |t| {
            action.apply(alpha.apply(t[0]), t[1]) == a.conj(t[0], t[1])
        }),
    ]
}

fn cm_error(v: laws::Violation) -> XModError {
    match v.tag {
        "CM1" => XModError::Cm1Fail { b: v.witness[0], a: v.witness[1] },
        _ => XModError::Cm2Fail { a: v.witness[0], a2: v.witness[1] },
    }
}

/// Validate every component of a candidate, then CM1 and CM2 over all pairs.
pub fn xmod_check(c: &XModCandidate) -> Result<CrossedModule, XModError> {
    let alpha = GroupHom::new(c.a.clone(), c.b.clone(), c.boundary.clone()).map_err(XModError::Boundary)?;
    let action = GroupAction::new(c.b.clone(), c.a.clone(), c.action.clone()).map_err(XModError::Action)?;
    CrossedModule::new(alpha, action)
}

impl XModCandidate {
    /// True if re-evaluating the failing law at the reported witness fails again.
    pub fn reproduces(&self, err: &XModError) -> bool {
        match err {
            XModError::Boundary(e) => GroupHom::reproduces(&self.a, &self.b, &self.boundary, e),
            XModError::Action(e) => GroupAction::reproduces(&self.b, &self.a, &self.action, e),
            XModError::Cm1Fail { .. } | XModError::Cm2Fail { .. } => {
                let (Ok(alpha), Ok(action)) = (
                    GroupHom::new(self.a.clone(), self.b.clone(), self.boundary.clone()),
                    GroupAction::new(self.b.clone(), self.a.clone(), self.action.clone()),
                ) else {
                    return false;
                };
                let laws = xmod_laws(&alpha, &action);
                laws::holds_at(&laws, &err.tag(), &err.witness()) == Some(false)
            }
            _ => xmod_check(self).err().as_ref() == Some(err),
        }
    }
}

impl CrossedModule {
    /// Check CM1 and CM2 for an already validated boundary and action.
    pub fn new(alpha: GroupHom, action: GroupAction) -> Result<Self, XModError> {
        if **action.space() != **alpha.dom() || **action.actor() != **alpha.cod() {
            return Err(XModError::CarrierMismatch("boundary and action"));
        }
        laws::scan(&xmod_laws(&alpha, &action)).map_err(cm_error)?;
        Ok(CrossedModule { alpha, action })
    }

    pub(crate) fn new_unchecked(alpha: GroupHom, action: GroupAction) -> Self {
        CrossedModule { alpha, action }
    }

    pub fn a(&self) -> &GroupRef {
        self.alpha.dom()
    }

    pub fn b(&self) -> &GroupRef {
        self.alpha.cod()
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    #[inline]
    pub fn boundary(&self, a: usize) -> usize {
        self.alpha.apply(a)
    }

    #[inline]
    pub fn act(&self, b: usize, a: usize) -> usize {
        self.action.apply(b, a)
    }

    pub fn to_candidate(&self) -> XModCandidate {
        XModCandidate {
            a: self.a().clone(),
            b: self.b().clone(),
            boundary: self.alpha.map().to_vec(),
            action: self.action.rows(),
        }
    }
}

/// `(N, G, inclusion, conjugation)` for a normal subgroup `N ◁ G`.
pub fn inclusion_xmod(n: &Subgroup) -> Result<CrossedModule, XModError> {
    n.is_normal().map_err(|e| match e {
        GroupError::NotNormal { g, s } => XModError::NotNormal { g, s },
        other => XModError::Group(other),
    })?;
    let g = n.ambient().clone();
    let (ng, inc) = n.as_group();
    let action = GroupAction::conjugation(g.clone())
        .restricted(&Subgroup::whole(g.clone()), g, n, ng)
        .map_err(XModError::Group)?;
    CrossedModule::new(inc, action)
}

/// `(G, G, id, conjugation)`
pub fn conjugation_xmod(g: &GroupRef) -> CrossedModule {
    CrossedModule::new_unchecked(GroupHom::identity(g.clone()), GroupAction::conjugation(g.clone()))
}

/// `G → Aut(G)`, `g ↦ (x ↦ g∘x∘g⁻¹)`, with `ψ·g = ψ(g)`.
pub fn inner_automorphism_xmod(g: &GroupRef) -> Result<CrossedModule, XModError> {
    let aut = automorphism_group(g)?;
    let mut boundary = Vec::with_capacity(g.order());
    for x in g.elements() {
        let inner: Vec<usize> = g.elements().map(|y| g.conj(x, y)).collect();
        boundary.push(aut.index_of(&inner).expect("inner automorphisms are automorphisms"));
    }
    let alpha = GroupHom::new(g.clone(), aut.group.clone(), boundary).map_err(XModError::Boundary)?;
    CrossedModule::new(alpha, aut.action)
}

/// Zero boundary `M → G` with a given action; requires `M` abelian.
pub fn trivial_module_xmod(act: &GroupAction) -> Result<CrossedModule, XModError> {
    let m = act.space();
    if let Some((x, y)) = m.noncommuting_pair() {
        return Err(XModError::NotAbelian { x, y });
    }
    CrossedModule::new(GroupHom::zero(m.clone(), act.actor().clone()), act.clone())
}

/// `(A×A′, B×B′, α×α′)` with the componentwise action.
pub fn product_xmod(x: &CrossedModule, y: &CrossedModule) -> Result<CrossedModule, XModError> {
    let order_a = x.a().order() * y.a().order();
    let order_b = x.b().order() * y.b().order();
    let limit = crate::limits::product_limit();
    if let Some(&order) = [order_a, order_b].iter().find(|&&o| o > limit) {
        return Err(XModError::Group(GroupError::SizeLimit { order, limit }));
    }
    let pa = Arc::new(direct_product(x.a(), y.a()));
    let pb = Arc::new(direct_product(x.b(), y.b()));
    let (ma, mb) = (y.a().order(), y.b().order());
    let alpha = GroupHom::from_fn(pa.clone(), pb.clone(), |z| x.boundary(z / ma) * mb + y.boundary(z % ma));
    let action = GroupAction::from_fn(pb, pa, |w, z| x.act(w / mb, z / ma) * ma + y.act(w % mb, z % ma));
    Ok(CrossedModule::new_unchecked(alpha, action))
}

/// A validated morphism of crossed modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModMorphism {
    source: CrossedModule,
    target: CrossedModule,
    f_a: GroupHom,
    f_b: GroupHom,
}

fn morphism_laws<'a>(
    source: &'a CrossedModule,
    target: &'a CrossedModule,
    f_a: &'a GroupHom,
    f_b: &'a GroupHom,
) -> Vec<Law<'a>> {
    vec![
        Law::new("square", vec![source.a().order()], move |t| {
            f_b.apply(source.boundary(t[0])) == target.boundary(f_a.apply(t[0]))
        }),
        Law::new("equivariance", vec![source.b().order(), source.a().order()], move |t| {
            f_a.apply(source.act(t[0], t[1])) == target.act(f_b.apply(t[0]), f_a.apply(t[1]))
        }),
    ]
}

/// Validate raw component maps as a morphism `source → target`.
pub fn xmod_morphism_check(
    f_a: Vec<usize>,
    f_b: Vec<usize>,
    source: &CrossedModule,
    target: &CrossedModule,
) -> Result<XModMorphism, XModError> {
    let f_a = GroupHom::new(source.a().clone(), target.a().clone(), f_a)
        .map_err(|e| XModError::Component { which: "f_a", source: e })?;
    let f_b = GroupHom::new(source.b().clone(), target.b().clone(), f_b)
        .map_err(|e| XModError::Component { which: "f_b", source: e })?;
    XModMorphism::new(source.clone(), target.clone(), f_a, f_b)
}

impl XModMorphism {
    pub fn new(source: CrossedModule, target: CrossedModule, f_a: GroupHom, f_b: GroupHom) -> Result<Self, XModError> {
        if **f_a.dom() != **source.a()
            || **f_a.cod() != **target.a()
            || **f_b.dom() != **source.b()
            || **f_b.cod() != **target.b()
        {
            return Err(XModError::CarrierMismatch("morphism components"));
        }
        laws::scan(&morphism_laws(&source, &target, &f_a, &f_b)).map_err(|v| match v.tag {
            "square" => XModError::SquareFail { a: v.witness[0] },
            _ => XModError::EquivarianceFail { b: v.witness[0], a: v.witness[1] },
        })?;
        Ok(XModMorphism { source, target, f_a, f_b })
    }

    pub(crate) fn new_unchecked(source: CrossedModule, target: CrossedModule, f_a: GroupHom, f_b: GroupHom) -> Self {
        XModMorphism { source, target, f_a, f_b }
    }

    pub fn identity(x: &CrossedModule) -> Self {
        Self::new_unchecked(x.clone(), x.clone(), GroupHom::identity(x.a().clone()), GroupHom::identity(x.b().clone()))
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    pub fn f_a(&self) -> &GroupHom {
        &self.f_a
    }

    pub fn f_b(&self) -> &GroupHom {
        &self.f_b
    }

    /// `self ∘ inner`
    pub fn after(&self, inner: &XModMorphism) -> Result<XModMorphism, XModError> {
        if inner.target != self.source {
            return Err(XModError::CarrierMismatch("morphism composition"));
        }
        Ok(Self::new_unchecked(
            inner.source.clone(),
            self.target.clone(),
            self.f_a.after(&inner.f_a)?,
            self.f_b.after(&inner.f_b)?,
        ))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f_a.is_bijective() && self.f_b.is_bijective()
    }

    /// `(A×A′, B×B′) → (A, B)` onto the first factor.
    pub fn first_projection(x: &CrossedModule, y: &CrossedModule) -> Result<Self, XModError> {
        let p = product_xmod(x, y)?;
        let (ma, mb) = (y.a().order(), y.b().order());
        let f_a = GroupHom::from_fn(p.a().clone(), x.a().clone(), |z| z / ma);
        let f_b = GroupHom::from_fn(p.b().clone(), x.b().clone(), |w| w / mb);
        Ok(Self::new_unchecked(p, x.clone(), f_a, f_b))
    }

    /// `(A×A′, B×B′) → (A′, B′)` onto the second factor.
    pub fn second_projection(x: &CrossedModule, y: &CrossedModule) -> Result<Self, XModError> {
        let p = product_xmod(x, y)?;
        let (ma, mb) = (y.a().order(), y.b().order());
        let f_a = GroupHom::from_fn(p.a().clone(), y.a().clone(), move |z| z % ma);
        let f_b = GroupHom::from_fn(p.b().clone(), y.b().clone(), move |w| w % mb);
        Ok(Self::new_unchecked(p, y.clone(), f_a, f_b))
    }

    /// `X → X×X`, `x ↦ (x, x)`.
    pub fn diagonal(x: &CrossedModule) -> Result<Self, XModError> {
        let p = product_xmod(x, x)?;
        let (ma, mb) = (x.a().order(), x.b().order());
        let f_a = GroupHom::from_fn(x.a().clone(), p.a().clone(), |a| a * ma + a);
        let f_b = GroupHom::from_fn(x.b().clone(), p.b().clone(), |b| b * mb + b);
        Ok(Self::new_unchecked(x.clone(), p, f_a, f_b))
    }
}

/// A subcrossed module `(S, T, α|S)` of an ambient crossed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubXMod {
    ambient: CrossedModule,
    s: Subgroup,
    t: Subgroup,
}

/// Validate `S ≤ A`, `T ≤ B`, `α(S) ⊆ T` and `T·S ⊆ S`.
pub fn subxmod_check(
    ambient: &CrossedModule,
    s_members: Vec<usize>,
    t_members: Vec<usize>,
) -> Result<SubXMod, XModError> {
    let s =
        Subgroup::new(ambient.a().clone(), s_members).map_err(|e| XModError::Component { which: "s", source: e })?;
    let t =
        Subgroup::new(ambient.b().clone(), t_members).map_err(|e| XModError::Component { which: "t", source: e })?;
    SubXMod::new(ambient.clone(), s, t)
}

impl SubXMod {
    pub fn new(ambient: CrossedModule, s: Subgroup, t: Subgroup) -> Result<Self, XModError> {
        if let Some(&x) = s.members().iter().find(|&&x| !t.contains(ambient.boundary(x))) {
            return Err(XModError::BoundaryLeaves { s: x });
        }
        for &y in t.members() {
            if let Some(&x) = s.members().iter().find(|&&x| !s.contains(ambient.act(y, x))) {
                return Err(XModError::ActionLeaves { t: y, s: x });
            }
        }
        Ok(SubXMod { ambient, s, t })
    }

    pub fn whole(x: &CrossedModule) -> Self {
        SubXMod { ambient: x.clone(), s: Subgroup::whole(x.a().clone()), t: Subgroup::whole(x.b().clone()) }
    }

    pub fn ambient(&self) -> &CrossedModule {
        &self.ambient
    }

    pub fn s(&self) -> &Subgroup {
        &self.s
    }

    pub fn t(&self) -> &Subgroup {
        &self.t
    }

    /// Conditions (i) `T ◁ B`, (ii) `b·s ∈ S`, (iii) `t·a − a ∈ S`, in that order.
    pub fn normal_check(&self) -> Result<(), XModError> {
        let x = &self.ambient;
        self.t.is_normal().map_err(|e| match e {
            GroupError::NotNormal { g, s } => XModError::Cond1Fail { b: g, t: s },
            other => XModError::Group(other),
        })?;
        let (s, t) = (&self.s, &self.t);
        let laws = [
            Law::new("cond2", vec![x.b().order(), s.order()], |w| s.contains(x.act(w[0], s.members()[w[1]]))),
            Law::new("cond3", vec![t.order(), x.a().order()], |w| {
                s.contains(x.a().div(x.act(t.members()[w[0]], w[1]), w[1]))
            }),
        ];
        laws::scan(&laws).map(|_| ()).map_err(|v| match v.tag {
            "cond2" => XModError::Cond2Fail { b: v.witness[0], s: s.members()[v.witness[1]] },
            _ => XModError::Cond3Fail { t: t.members()[v.witness[0]], a: v.witness[1] },
        })
    }

    /// The subcrossed module as a crossed module, relabelled through
    /// [`Subgroup::as_group`], with its inclusion morphism.
    pub fn as_xmod(&self) -> (CrossedModule, XModMorphism) {
        let (sg, s_inc) = self.s.as_group();
        let (tg, t_inc) = self.t.as_group();
        let alpha =
            self.ambient.alpha().restrict(&self.s, sg.clone()).corestrict(&self.t, tg.clone()).expect("α(S) ⊆ T");
        let action = self.ambient.action().restricted(&self.t, tg, &self.s, sg).expect("T·S ⊆ S");
        let x = CrossedModule::new_unchecked(alpha, action);
        let inc = XModMorphism::new_unchecked(x.clone(), self.ambient.clone(), s_inc, t_inc);
        (x, inc)
    }
}

/// Normality of a subcrossed module.
pub fn normal_subxmod_check(s: &SubXMod) -> Result<(), XModError> {
    s.normal_check()
}

/// `(ker f_A, ker f_B)` inside the source.
pub fn kernel_xmod(f: &XModMorphism) -> SubXMod {
    SubXMod::new(f.source.clone(), f.f_a.kernel(), f.f_b.kernel()).expect("kernels form a subcrossed module")
}

/// `(im f_A, im f_B)` inside the target.
pub fn image_xmod(f: &XModMorphism) -> SubXMod {
    SubXMod::new(f.target.clone(), f.f_a.image(), f.f_b.image()).expect("images form a subcrossed module")
}

/// Pullback of two morphisms with a common target, with both projections.
#[derive(Clone, Debug)]
pub struct XModPullback {
    pub xmod: CrossedModule,
    pub p1: XModMorphism,
    pub p2: XModMorphism,
}

pub fn pullback_xmod(f: &XModMorphism, g: &XModMorphism) -> Result<XModPullback, XModError> {
    if f.target != g.target {
        return Err(XModError::TargetMismatch);
    }
    let pa = pullback_group(&f.f_a, &g.f_a)?;
    let pb = pullback_group(&f.f_b, &g.f_b)?;
    let (x, y) = (&f.source, &g.source);
    let boundary: Vec<usize> = pa
        .group
        .elements()
        .map(|z| {
            let (a, c) = pa.pair(z);
            pb.element(x.boundary(a), y.boundary(c)).expect("boundary lands in the pullback")
        })
        .collect();
    let alpha = GroupHom::new(pa.group.clone(), pb.group.clone(), boundary).map_err(XModError::Boundary)?;
    let mut rows = Vec::with_capacity(pb.group.order());
    for w in pb.group.elements() {
        let (b, d) = pb.pair(w);
        let row = pa
            .group
            .elements()
            .map(|z| {
                let (a, c) = pa.pair(z);
                pa.element(x.act(b, a), y.act(d, c)).expect("action preserves the pullback")
            })
            .collect();
        rows.push(row);
    }
    let action = GroupAction::new(pb.group.clone(), pa.group.clone(), rows).map_err(XModError::Action)?;
    let xmod = CrossedModule::new(alpha, action)?;
    let p1 = XModMorphism::new(xmod.clone(), x.clone(), pa.pi1.clone(), pb.pi1.clone())?;
    let p2 = XModMorphism::new(xmod.clone(), y.clone(), pa.pi2, pb.pi2)?;
    Ok(XModPullback { xmod, p1, p2 })
}

/// The crossed module `(1, B, 0, trivial)`.
pub fn trivial_over(b: &GroupRef) -> CrossedModule {
    let one = Arc::new(FiniteGroup::trivial());
    CrossedModule::new_unchecked(GroupHom::zero(one.clone(), b.clone()), GroupAction::trivial(b.clone(), one))
}
