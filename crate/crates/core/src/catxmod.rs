//! Internal categories in crossed modules: two crossed modules `C1`, `C0`
//! with source, target and identity morphisms, composition derived on the
//! `A` and `B` sides as in a group-groupoid.

use thiserror::Error;

use crate::group::{GroupError, GroupHom};
use crate::groupoid::{GroupGroupoid, GroupoidError, GroupoidMorphism};
use crate::laws::{self, Law, Witnessed};
use crate::xmod::{CrossedModule, XModError, XModMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatXModError {
    #[error("structure map {which}: {source}")]
    Component { which: &'static str, source: GroupError },
    #[error("condition ({tag}) fails at {witness:?}")]
    Condition { tag: &'static str, witness: Vec<usize> },
    #[error("identity section fails on the {side} side at {x}")]
    IdentitySectionFail { side: &'static str, x: usize },
    #[error("{side} side: {source}")]
    Side { side: &'static str, source: GroupoidError },
    #[error("inverse compatibility fails at b1={b1}, a1={a1}")]
    InverseCompatFail { b1: usize, a1: usize },
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(&'static str),
    #[error("{0}")]
    XMod(XModError),
    #[error("{0}")]
    Group(GroupError),
}

impl From<XModError> for CatXModError {
    fn from(e: XModError) -> Self {
        CatXModError::XMod(e)
    }
}

impl From<GroupError> for CatXModError {
    fn from(e: GroupError) -> Self {
        CatXModError::Group(e)
    }
}

impl Witnessed for CatXModError {
    fn tag(&self) -> String {
        match self {
            CatXModError::Component { which, source } => format!("{which}.{}", source.tag()),
            CatXModError::Condition { tag, .. } => (*tag).into(),
            CatXModError::IdentitySectionFail { side, .. } => format!("{side}.identity_section"),
            CatXModError::Side { side, source } => format!("{side}.{}", source.tag()),
            CatXModError::InverseCompatFail { .. } => "inverse_compat".into(),
            CatXModError::CarrierMismatch(_) => "carrier".into(),
            CatXModError::XMod(e) => e.tag(),
            CatXModError::Group(e) => e.tag(),
        }
    }

    fn witness(&self) -> Vec<usize> {
        match self {
            CatXModError::Component { source, .. } | CatXModError::Group(source) => source.witness(),
            CatXModError::Condition { witness, .. } => witness.clone(),
            CatXModError::IdentitySectionFail { x, .. } => vec![*x],
            CatXModError::Side { source, .. } => source.witness(),
            CatXModError::InverseCompatFail { b1, a1 } => vec![*b1, *a1],
            CatXModError::CarrierMismatch(_) => vec![],
            CatXModError::XMod(e) => e.witness(),
        }
    }
}

/// Raw internal-category data over two validated crossed modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatXModCandidate {
    pub c1: CrossedModule,
    pub c0: CrossedModule,
    pub source_a: Vec<usize>,
    pub source_b: Vec<usize>,
    pub target_a: Vec<usize>,
    pub target_b: Vec<usize>,
    pub identity_a: Vec<usize>,
    pub identity_b: Vec<usize>,
}

/// A validated internal category in crossed modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatXMod {
    c1: CrossedModule,
    c0: CrossedModule,
    side_a: GroupGroupoid,
    side_b: GroupGroupoid,
}

fn structure_laws(c: &CatXMod) -> Vec<Law<'_>> {
    let (c1, c0, ga, gb) = (&c.c1, &c.c0, &c.side_a, &c.side_b);
    vec![
        Law::new("ii", vec![c1.a().order()], move |w| {
            let a = w[0];
            c0.boundary(ga.source(a)) == gb.source(c1.boundary(a))
                && c0.boundary(ga.target(a)) == gb.target(c1.boundary(a))
        }),
        Law::new("iii", vec![c1.b().order(), c1.a().order()], move |w| {
            let (b, a) = (w[0], w[1]);
            ga.source(c1.act(b, a)) == c0.act(gb.source(b), ga.source(a))
                && ga.target(c1.act(b, a)) == c0.act(gb.target(b), ga.target(a))
        }),
        Law::new("v", vec![c0.a().order()], move |w| c1.boundary(ga.identity(w[0])) == gb.identity(c0.boundary(w[0]))),
        Law::new("vi", vec![c0.b().order(), c0.a().order()], move |w| {
            ga.identity(c0.act(w[0], w[1])) == c1.act(gb.identity(w[0]), ga.identity(w[1]))
        }),
    ]
}

fn composition_laws(c: &CatXMod) -> Vec<Law<'_>> {
    let (c1, ga, gb) = (&c.c1, &c.side_a, &c.side_b);
    let (a1, b1) = (c1.a(), c1.b());
    let (na, nb) = (a1.order(), b1.order());
    let a_pair = move |w: &[usize]| w[0] < na && w[1] < na && ga.is_composable(w[0], w[1]);
    let b_pair = move |w: &[usize]| w[0] < nb && w[1] < nb && gb.is_composable(w[0], w[1]);
    vec![
        Law::over(
            "viii",
            move || ga.composable_pairs().map(|(x, y)| vec![x, y]),
            move |w| w.len() == 2 && a_pair(w),
            move |w| {
                c1.boundary(ga.compose_unchecked(w[0], w[1]))
                    == gb.compose_unchecked(c1.boundary(w[0]), c1.boundary(w[1]))
            },
        ),
        Law::over(
            "ix",
            move || {
                gb.composable_pairs()
                    .flat_map(move |(b, b2)| ga.composable_pairs().map(move |(a, a2)| vec![b, b2, a, a2]))
            },
            move |w| w.len() == 4 && b_pair(&w[..2]) && a_pair(&w[2..]),
            move |w| {
                let (b, b2, a, a2) = (w[0], w[1], w[2], w[3]);
                c1.act(gb.compose_unchecked(b, b2), ga.compose_unchecked(a, a2))
                    == ga.compose_unchecked(c1.act(b, a), c1.act(b2, a2))
            },
        ),
        Law::new("n.hom_a", vec![na, na], move |w| {
            ga.inverse(a1.op(w[0], w[1])) == a1.op(ga.inverse(w[0]), ga.inverse(w[1]))
        }),
        Law::new("n.hom_b", vec![nb, nb], move |w| {
            gb.inverse(b1.op(w[0], w[1])) == b1.op(gb.inverse(w[0]), gb.inverse(w[1]))
        }),
        Law::new("n.square", vec![na], move |w| c1.boundary(ga.inverse(w[0])) == gb.inverse(c1.boundary(w[0]))),
        Law::new("inverse_compat", vec![nb, na], move |w| {
            c1.act(gb.inverse(w[0]), ga.inverse(w[1])) == ga.inverse(c1.act(w[0], w[1]))
        }),
    ]
}

fn violation(v: laws::Violation) -> CatXModError {
    match v.tag {
        "inverse_compat" => CatXModError::InverseCompatFail { b1: v.witness[0], a1: v.witness[1] },
        tag => CatXModError::Condition { tag, witness: v.witness },
    }
}

impl CatXModCandidate {
    fn hom(
        &self,
        which: &'static str,
        condition: &'static str,
        to_c0: bool,
        a_side: bool,
    ) -> Result<GroupHom, CatXModError> {
        let (x1, x0) = (&self.c1, &self.c0);
        let (g1, g0) = if a_side { (x1.a(), x0.a()) } else { (x1.b(), x0.b()) };
        let (dom, cod) = if to_c0 { (g1, g0) } else { (g0, g1) };
        let map = match which {
            "s_a" => &self.source_a,
            "s_b" => &self.source_b,
            "t_a" => &self.target_a,
            "t_b" => &self.target_b,
            "eps_a" => &self.identity_a,
            _ => &self.identity_b,
        };
        GroupHom::new(dom.clone(), cod.clone(), map.clone()).map_err(|e| match e {
            GroupError::NotHomomorphism { x, y } => CatXModError::Condition { tag: condition, witness: vec![x, y] },
            e => CatXModError::Component { which, source: e },
        })
    }

    fn assemble(&self) -> Result<CatXMod, CatXModError> {
        let s_a = self.hom("s_a", "i", true, true)?;
        let s_b = self.hom("s_b", "i", true, false)?;
        let t_a = self.hom("t_a", "i", true, true)?;
        let t_b = self.hom("t_b", "i", true, false)?;
        let e_a = self.hom("eps_a", "iv", false, true)?;
        let e_b = self.hom("eps_b", "iv", false, false)?;
        Ok(CatXMod {
            c1: self.c1.clone(),
            c0: self.c0.clone(),
            side_a: GroupGroupoid::new_unchecked(s_a, t_a, e_a),
            side_b: GroupGroupoid::new_unchecked(s_b, t_b, e_b),
        })
    }

    /// True if the reported failure recurs when its witness is re-evaluated.
    pub fn reproduces(&self, err: &CatXModError) -> bool {
        let Ok(c) = self.assemble() else {
            return catxmod_check(self).err().as_ref() == Some(err);
        };
        match err {
            CatXModError::Condition { .. } | CatXModError::InverseCompatFail { .. } => {
                let mut all = structure_laws(&c);
                all.extend(composition_laws(&c));
                laws::holds_at(&all, &err.tag(), &err.witness()) == Some(false)
            }
            CatXModError::Side { side, source } => {
                let g = if *side == "A" { &c.side_a } else { &c.side_b };
                g.to_candidate().reproduces(source)
            }
            _ => catxmod_check(self).err().as_ref() == Some(err),
        }
    }
}

/// Check conditions (i) to (ix), both groupoid sides, the inverse morphism and
/// inverse compatibility, stopping at the first failure.
pub fn catxmod_check(cand: &CatXModCandidate) -> Result<CatXMod, CatXModError> {
    let c = cand.assemble()?;
    for (side, g) in [("A", &c.side_a), ("B", &c.side_b)] {
        if let Some(x) = g.g0().elements().find(|&x| g.source(g.identity(x)) != x || g.target(g.identity(x)) != x) {
            return Err(CatXModError::IdentitySectionFail { side, x });
        }
    }
    let verdict = laws::scan(&structure_laws(&c));
    verdict.map_err(violation)?;
    let side_a = GroupGroupoid::new(c.side_a.s().clone(), c.side_a.t().clone(), c.side_a.eps().clone())
        .map_err(|e| CatXModError::Side { side: "A", source: e })?;
    let side_b = GroupGroupoid::new(c.side_b.s().clone(), c.side_b.t().clone(), c.side_b.eps().clone())
        .map_err(|e| CatXModError::Side { side: "B", source: e })?;
    let c = CatXMod { side_a, side_b, ..c };
    let verdict = laws::scan(&composition_laws(&c));
    verdict.map_err(violation)?;
    Ok(c)
}

impl CatXMod {
    pub fn c1(&self) -> &CrossedModule {
        &self.c1
    }

    pub fn c0(&self) -> &CrossedModule {
        &self.c0
    }

    /// The group-groupoid `(A1, A0, s_A, t_A, ε_A)`.
    pub fn side_a(&self) -> &GroupGroupoid {
        &self.side_a
    }

    /// The group-groupoid `(B1, B0, s_B, t_B, ε_B)`.
    pub fn side_b(&self) -> &GroupGroupoid {
        &self.side_b
    }

    pub fn s(&self) -> XModMorphism {
        XModMorphism::new_unchecked(self.c1.clone(), self.c0.clone(), self.side_a.s().clone(), self.side_b.s().clone())
    }

    pub fn t(&self) -> XModMorphism {
        XModMorphism::new_unchecked(self.c1.clone(), self.c0.clone(), self.side_a.t().clone(), self.side_b.t().clone())
    }

    pub fn eps(&self) -> XModMorphism {
        XModMorphism::new_unchecked(
            self.c0.clone(),
            self.c1.clone(),
            self.side_a.eps().clone(),
            self.side_b.eps().clone(),
        )
    }

    /// `a1∘a1′ = a1 − 1_{s_A(a1)} + a1′`
    pub fn compose_a(&self, a1: usize, a1p: usize) -> Result<usize, GroupoidError> {
        self.side_a.compose(a1, a1p)
    }

    pub fn compose_b(&self, b1: usize, b1p: usize) -> Result<usize, GroupoidError> {
        self.side_b.compose(b1, b1p)
    }

    /// `n_A(a1) = 1_{s_A(a1)} − a1 + 1_{t_A(a1)}`
    pub fn inverse_a(&self, a1: usize) -> usize {
        self.side_a.inverse(a1)
    }

    pub fn inverse_b(&self, b1: usize) -> usize {
        self.side_b.inverse(b1)
    }

    /// `n = (n_A, n_B)` as a morphism `C1 → C1`.
    pub fn inverse_morphism(&self) -> XModMorphism {
        let na = GroupHom::new(
            self.c1.a().clone(),
            self.c1.a().clone(),
            self.c1.a().elements().map(|a| self.inverse_a(a)).collect(),
        );
        let nb = GroupHom::new(
            self.c1.b().clone(),
            self.c1.b().clone(),
            self.c1.b().elements().map(|b| self.inverse_b(b)).collect(),
        );
        XModMorphism::new(
            self.c1.clone(),
            self.c1.clone(),
            na.expect("n_A is a homomorphism"),
            nb.expect("n_B is a homomorphism"),
        )
        .expect("n is a morphism of crossed modules")
    }

    pub fn to_candidate(&self) -> CatXModCandidate {
        CatXModCandidate {
            c1: self.c1.clone(),
            c0: self.c0.clone(),
            source_a: self.side_a.s().map().to_vec(),
            source_b: self.side_b.s().map().to_vec(),
            target_a: self.side_a.t().map().to_vec(),
            target_b: self.side_b.t().map().to_vec(),
            identity_a: self.side_a.eps().map().to_vec(),
            identity_b: self.side_b.eps().map().to_vec(),
        }
    }

    pub(crate) fn from_morphisms(s: &XModMorphism, t: &XModMorphism, eps: &XModMorphism) -> Self {
        CatXMod {
            c1: s.source().clone(),
            c0: s.target().clone(),
            side_a: GroupGroupoid::new_unchecked(s.f_a().clone(), t.f_a().clone(), eps.f_a().clone()),
            side_b: GroupGroupoid::new_unchecked(s.f_b().clone(), t.f_b().clone(), eps.f_b().clone()),
        }
    }
}

/// `catxmod_compose` on the `A` side.
pub fn catxmod_compose(c: &CatXMod, a1: usize, a1p: usize) -> Result<usize, GroupoidError> {
    c.compose_a(a1, a1p)
}

/// `catxmod_inverse` on the `A` side.
pub fn catxmod_inverse(c: &CatXMod, a1: usize) -> usize {
    c.inverse_a(a1)
}

/// `C1 = X×X`, `C0 = X`, `s = π₁`, `t = π₂`, `ε = Δ`.
pub fn pair_catxmod(x: &CrossedModule) -> Result<CatXMod, CatXModError> {
    let s = XModMorphism::first_projection(x, x)?;
    let t = XModMorphism::second_projection(x, x)?;
    let eps = XModMorphism::diagonal(x)?;
    Ok(CatXMod::from_morphisms(&s, &t, &eps))
}

/// `C1 = C0 = X` with every structure map the identity.
pub fn discrete_catxmod(x: &CrossedModule) -> CatXMod {
    let id = XModMorphism::identity(x);
    CatXMod::from_morphisms(&id, &id, &id)
}

/// A validated internal functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatXModMorphism {
    source: CatXMod,
    target: CatXMod,
    f1: XModMorphism,
    f0: XModMorphism,
}

/// Check that `(f1, f0)` commutes with source, target and identities and
/// preserves composition, on the `A` side and then the `B` side.
pub fn catxmod_morphism_check(
    f1: &XModMorphism,
    f0: &XModMorphism,
    source: &CatXMod,
    target: &CatXMod,
) -> Result<CatXModMorphism, CatXModError> {
    if f1.source() != source.c1()
        || f1.target() != target.c1()
        || f0.source() != source.c0()
        || f0.target() != target.c0()
    {
        return Err(CatXModError::CarrierMismatch("internal functor components"));
    }
    GroupoidMorphism::new(source.side_a.clone(), target.side_a.clone(), f1.f_a().clone(), f0.f_a().clone())
        .map_err(|e| CatXModError::Side { side: "A", source: e })?;
    GroupoidMorphism::new(source.side_b.clone(), target.side_b.clone(), f1.f_b().clone(), f0.f_b().clone())
        .map_err(|e| CatXModError::Side { side: "B", source: e })?;
    Ok(CatXModMorphism { source: source.clone(), target: target.clone(), f1: f1.clone(), f0: f0.clone() })
}

impl CatXModMorphism {
    pub fn identity(c: &CatXMod) -> Self {
        CatXModMorphism {
            source: c.clone(),
            target: c.clone(),
            f1: XModMorphism::identity(c.c1()),
            f0: XModMorphism::identity(c.c0()),
        }
    }

    pub fn source(&self) -> &CatXMod {
        &self.source
    }

    pub fn target(&self) -> &CatXMod {
        &self.target
    }

    pub fn f1(&self) -> &XModMorphism {
        &self.f1
    }

    pub fn f0(&self) -> &XModMorphism {
        &self.f0
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f1.is_isomorphism() && self.f0.is_isomorphism()
    }

    /// `self ∘ inner`
    pub fn after(&self, inner: &CatXModMorphism) -> Result<CatXModMorphism, CatXModError> {
        if inner.target != self.source {
            return Err(CatXModError::CarrierMismatch("internal functor composition"));
        }
        Ok(CatXModMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            f1: self.f1.after(&inner.f1)?,
            f0: self.f0.after(&inner.f0)?,
        })
    }

    /// `pair(f): pair_catxmod(X) → pair_catxmod(Y)` with `f1 = f×f`, `f0 = f`.
    pub fn pair_map(f: &XModMorphism) -> Result<Self, CatXModError> {
        let (cx, cy) = (pair_catxmod(f.source())?, pair_catxmod(f.target())?);
        let (x, y) = (f.source(), f.target());
        let (nxa, nxb, nya, nyb) = (x.a().order(), x.b().order(), y.a().order(), y.b().order());
        let f_a = GroupHom::new(
            cx.c1().a().clone(),
            cy.c1().a().clone(),
            cx.c1().a().elements().map(|z| f.f_a().apply(z / nxa) * nya + f.f_a().apply(z % nxa)).collect(),
        )?;
        let f_b = GroupHom::new(
            cx.c1().b().clone(),
            cy.c1().b().clone(),
            cx.c1().b().elements().map(|z| f.f_b().apply(z / nxb) * nyb + f.f_b().apply(z % nxb)).collect(),
        )?;
        let f1 = XModMorphism::new(cx.c1().clone(), cy.c1().clone(), f_a, f_b)?;
        catxmod_morphism_check(&f1, f, &cx, &cy)
    }

    /// `discrete_catxmod(X) → pair_catxmod(X)`, `f1 = Δ`, `f0 = id`.
    pub fn diagonal(x: &CrossedModule) -> Result<Self, CatXModError> {
        let (d, p) = (discrete_catxmod(x), pair_catxmod(x)?);
        catxmod_morphism_check(&XModMorphism::diagonal(x)?, &XModMorphism::identity(x), &d, &p)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{FiniteGroup, GroupRef, Subgroup};
    use crate::xmod::{conjugation_xmod, inclusion_xmod};

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn a3_in_s3() -> CrossedModule {
        inclusion_xmod(&Subgroup::generated(Arc::new(FiniteGroup::sym3()), &[3])).unwrap()
    }

    #[test]
    fn pair_and_discrete_pass() {
        for x in [conjugation_xmod(&z(2)), a3_in_s3(), conjugation_xmod(&z(3))] {
            catxmod_check(&pair_catxmod(&x).unwrap().to_candidate()).unwrap();
            catxmod_check(&discrete_catxmod(&x).to_candidate()).unwrap();
        }
        let p = pair_catxmod(&conjugation_xmod(&z(3))).unwrap();
        assert_eq!((p.c1().a().order(), p.c1().b().order()), (9, 9));
    }

    #[test]
    fn pair_composition_rule() {
        let x = conjugation_xmod(&z(2));
        let p = pair_catxmod(&x).unwrap();
        for a in 0..2 {
            for a1 in 0..2 {
                for a2 in 0..2 {
                    assert_eq!(p.compose_a(a1 * 2 + a2, a * 2 + a1), Ok(a * 2 + a2));
                }
            }
        }
    }

    #[test]
    fn zero_identity_fails_section() {
        let p = pair_catxmod(&a3_in_s3()).unwrap();
        let mut c = p.to_candidate();
        c.identity_a = vec![0; 3];
        let err = catxmod_check(&c).unwrap_err();
        assert_eq!(err, CatXModError::IdentitySectionFail { side: "A", x: 1 });
        assert!(c.reproduces(&err));
    }

    #[test]
    fn inverses_and_forms() {
        let p = pair_catxmod(&a3_in_s3()).unwrap();
        let g1 = p.c1().a();
        for a in g1.elements() {
            let ga = p.side_a();
            let other = g1.op(g1.op(ga.identity(ga.target(a)), g1.inv(a)), ga.identity(ga.source(a)));
            assert_eq!(p.inverse_a(a), other);
        }
        assert!(p.inverse_morphism().is_isomorphism());
        let d = discrete_catxmod(&a3_in_s3());
        assert_eq!(d.compose_a(2, 2), Ok(2));
    }

    #[test]
    fn functors() {
        let x = a3_in_s3();
        let p = pair_catxmod(&x).unwrap();
        let id = CatXModMorphism::identity(&p);
        catxmod_morphism_check(id.f1(), id.f0(), &p, &p).unwrap();
        CatXModMorphism::diagonal(&x).unwrap();
        CatXModMorphism::pair_map(&XModMorphism::identity(&x)).unwrap();

        let swap_a: Vec<usize> = p.c1().a().elements().map(|z| (z % 3) * 3 + z / 3).collect();
        let swap_b: Vec<usize> = p.c1().b().elements().map(|z| (z % 6) * 6 + z / 6).collect();
        let f1 = crate::xmod::xmod_morphism_check(swap_a, swap_b, p.c1(), p.c1()).unwrap();
        let err = catxmod_morphism_check(&f1, &XModMorphism::identity(&x), &p, &p).unwrap_err();
        assert_eq!(err.tag(), "A.functor.source");
        assert_eq!(err.witness(), vec![1]);

        // (π₁, π₁) does not commute with targets
        let d = discrete_catxmod(&x);
        let pi = XModMorphism::first_projection(&x, &x).unwrap();
        let err = catxmod_morphism_check(&pi, &XModMorphism::identity(&x), &p, &d).unwrap_err();
        assert_eq!(err.tag(), "A.functor.target");
    }
}
