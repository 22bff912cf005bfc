//! Internal categories in groups (group-groupoids) and the two functors
//! between group-groupoids and crossed modules.
//!
//! Composition is never stored. For `s(b) = t(a)` it is derived as
//! `b∘a = b·ε(s(b))⁻¹·a`, and inverses as `ε(s(a))·a⁻¹·ε(t(a))`.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{
    direct_product, pullback_group, semidirect_product, GroupAction, GroupError, GroupHom, GroupRef, Pullback,
};
use crate::laws::{self, Law, Witnessed};
use crate::xmod::CrossedModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("structure map {which}: {source}")]
    Component { which: &'static str, source: GroupError },
    #[error("identity section fails at object {x}")]
    IdentitySectionFail { x: usize },
    #[error("kernel elements {ks} (of s) and {kt} (of t) do not commute")]
    KernelCommutationFail { ks: usize, kt: usize },
    #[error("category axiom {tag} fails at {witness:?}")]
    CategoryAxiomFail { tag: &'static str, witness: Vec<usize> },
    #[error("arrows are not composable: s(b)={s_b}, t(a)={t_a}")]
    NotComposable { s_b: usize, t_a: usize },
    #[error("explicit composition disagrees with the derived one at b={b}, a={a}")]
    CompositionMismatch { b: usize, a: usize },
    #[error("explicit composition omits the composable pair b={b}, a={a}")]
    CompositionMissing { b: usize, a: usize },
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(&'static str),
    #[error("{0}")]
    Group(GroupError),
}

impl From<GroupError> for GroupoidError {
    fn from(e: GroupError) -> Self {
        GroupoidError::Group(e)
    }
}

impl Witnessed for GroupoidError {
    fn tag(&self) -> String {
        match self {
            GroupoidError::Component { which, source } => format!("{which}.{}", source.tag()),
            GroupoidError::IdentitySectionFail { .. } => "identity_section".into(),
            GroupoidError::KernelCommutationFail { .. } => "kernel_commutation".into(),
            GroupoidError::CategoryAxiomFail { tag, .. } => (*tag).into(),
            GroupoidError::NotComposable { .. } => "not_composable".into(),
            GroupoidError::CompositionMismatch { .. } => "composition_mismatch".into(),
            GroupoidError::CompositionMissing { .. } => "composition_missing".into(),
            GroupoidError::CarrierMismatch(_) => "carrier".into(),
            GroupoidError::Group(e) => e.tag(),
        }
    }

    fn witness(&self) -> Vec<usize> {
        match self {
            GroupoidError::Component { source, .. } | GroupoidError::Group(source) => source.witness(),
            GroupoidError::IdentitySectionFail { x } => vec![*x],
            GroupoidError::KernelCommutationFail { ks, kt } => vec![*ks, *kt],
            GroupoidError::CategoryAxiomFail { witness, .. } => witness.clone(),
            GroupoidError::NotComposable { s_b, t_a } => vec![*s_b, *t_a],
            GroupoidError::CompositionMismatch { b, a } | GroupoidError::CompositionMissing { b, a } => vec![*b, *a],
            GroupoidError::CarrierMismatch(_) => vec![],
        }
    }
}

/// Raw group-groupoid data. `composition`, when present, lists triples
/// `[b, a, b∘a]` and must cover every composable pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidCandidate {
    pub g1: GroupRef,
    pub g0: GroupRef,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    pub composition: Option<Vec<[usize; 3]>>,
}

/// A validated group-groupoid `(G1, G0, s, t, ε)`.
#[derive(Clone, Debug)]
pub struct GroupGroupoid {
    s: GroupHom,
    t: GroupHom,
    eps: GroupHom,
    /// arrows grouped by target, each list ascending
    by_target: Vec<Vec<usize>>,
}

impl PartialEq for GroupGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.t == other.t && self.eps == other.eps
    }
}

impl Eq for GroupGroupoid {}

/// The category laws of the derived composition, in scan order.
pub(crate) fn category_laws(g: &GroupGroupoid) -> Vec<Law<'_>> {
    let n = g.g1().order();
    let pairs = move || (0..n).flat_map(move |b| g.arrows_into(g.source(b)).iter().map(move |&a| vec![b, a]));
    let pair_ok = move |w: &[usize]| w.len() == 2 && w.iter().all(|&x| x < n) && g.is_composable(w[0], w[1]);
    let triples =
        move || pairs().flat_map(move |cb| g.arrows_into(g.source(cb[1])).iter().map(move |&a| vec![cb[0], cb[1], a]));
    let quads = move || pairs().flat_map(move |ba| pairs().map(move |b2a2| vec![ba[0], ba[1], b2a2[0], b2a2[1]]));
    let g1 = g.g1();
    vec![
        Law::over("composition_forms", pairs, pair_ok, move |w| {
            let mid = g1.inv(g.identity(g.source(w[0])));
            g1.op(g1.op(w[0], mid), w[1]) == g1.op(g1.op(w[1], mid), w[0])
        }),
        Law::over("composite_source", pairs, pair_ok, move |w| {
            g.source(g.compose_unchecked(w[0], w[1])) == g.source(w[1])
        }),
        Law::over("composite_target", pairs, pair_ok, move |w| {
            g.target(g.compose_unchecked(w[0], w[1])) == g.target(w[0])
        }),
        Law::new("identities", vec![n], move |w| {
            let a = w[0];
            g.compose_unchecked(g.identity(g.target(a)), a) == a && g.compose_unchecked(a, g.identity(g.source(a))) == a
        }),
        Law::over(
            "associativity",
            triples,
            move |w| {
                w.len() == 3 && w.iter().all(|&x| x < n) && g.is_composable(w[0], w[1]) && g.is_composable(w[1], w[2])
            },
            move |w| {
                let (c, b, a) = (w[0], w[1], w[2]);
                g.compose_unchecked(g.compose_unchecked(c, b), a) == g.compose_unchecked(c, g.compose_unchecked(b, a))
            },
        ),
        Law::over(
            "interchange",
            quads,
            move |w| w.len() == 4 && pair_ok(&w[..2]) && pair_ok(&w[2..]),
            move |w| {
                let (b, a, b2, a2) = (w[0], w[1], w[2], w[3]);
                g.compose_unchecked(g1.op(b, b2), g1.op(a, a2))
                    == g1.op(g.compose_unchecked(b, a), g.compose_unchecked(b2, a2))
            },
        ),
        Law::new("inverse", vec![n], move |w| {
            let a = w[0];
            let inv = g.inverse(a);
            let other = g1.op(g1.op(g.identity(g.target(a)), g1.inv(a)), g.identity(g.source(a)));
            inv == other
                && g.is_composable(inv, a)
                && g.compose_unchecked(inv, a) == g.identity(g.source(a))
                && g.compose_unchecked(a, inv) == g.identity(g.target(a))
        }),
    ]
}

impl GroupoidCandidate {
    fn homs(&self) -> Result<(GroupHom, GroupHom, GroupHom), GroupoidError> {
        let comp = |which, dom: &GroupRef, cod: &GroupRef, map: &[usize]| {
            GroupHom::new(dom.clone(), cod.clone(), map.to_vec())
                .map_err(|e| GroupoidError::Component { which, source: e })
        };
        Ok((
            comp("source", &self.g1, &self.g0, &self.source)?,
            comp("target", &self.g1, &self.g0, &self.target)?,
            comp("identity", &self.g0, &self.g1, &self.identity)?,
        ))
    }

    /// True if the reported failure recurs when its witness is re-evaluated.
    pub fn reproduces(&self, err: &GroupoidError) -> bool {
        let Ok((s, t, eps)) = self.homs() else {
            return ggpd_check(self).err().as_ref() == Some(err);
        };
        let g = GroupGroupoid::new_unchecked(s, t, eps);
        match err {
            GroupoidError::IdentitySectionFail { x } => {
                *x < g.g0().order() && (g.source(g.identity(*x)) != *x || g.target(g.identity(*x)) != *x)
            }
            GroupoidError::KernelCommutationFail { ks, kt } => {
                let g1 = g.g1();
                g.source(*ks) == 0 && g.target(*kt) == 0 && g1.op(*ks, *kt) != g1.op(*kt, *ks)
            }
            GroupoidError::CategoryAxiomFail { tag, witness } => {
                laws::holds_at(&category_laws(&g), tag, witness) == Some(false)
            }
            _ => ggpd_check(self).err().as_ref() == Some(err),
        }
    }
}

/// Validate the structure maps, the identity section, kernel commutation and
/// every category law of the derived composition.
pub fn ggpd_check(c: &GroupoidCandidate) -> Result<GroupGroupoid, GroupoidError> {
    let (s, t, eps) = c.homs()?;
    let g = GroupGroupoid::new(s, t, eps)?;
    if let Some(triples) = &c.composition {
        g.validate_composition(triples)?;
    }
    Ok(g)
}

impl GroupGroupoid {
    pub fn new(s: GroupHom, t: GroupHom, eps: GroupHom) -> Result<Self, GroupoidError> {
        if **s.dom() != **t.dom() || **s.cod() != **t.cod() || **eps.dom() != **s.cod() || **eps.cod() != **s.dom() {
            return Err(GroupoidError::CarrierMismatch("structure maps"));
        }
        let g = Self::new_unchecked(s, t, eps);
        if let Some(x) = g.g0().elements().find(|&x| g.source(g.identity(x)) != x || g.target(g.identity(x)) != x) {
            return Err(GroupoidError::IdentitySectionFail { x });
        }
        let (ks, kt) = (g.s.kernel(), g.t.kernel());
        let g1 = g.g1();
        let law = [Law::new("kernel_commutation", vec![ks.order(), kt.order()], |w| {
            let (x, y) = (ks.members()[w[0]], kt.members()[w[1]]);
            g1.op(x, y) == g1.op(y, x)
        })];
        laws::scan(&law).map_err(|v| GroupoidError::KernelCommutationFail {
            ks: ks.members()[v.witness[0]],
            kt: kt.members()[v.witness[1]],
        })?;
        drop(law);
        let verdict = laws::scan(&category_laws(&g));
        verdict.map_err(|v| GroupoidError::CategoryAxiomFail { tag: v.tag, witness: v.witness })?;
        Ok(g)
    }

    pub(crate) fn new_unchecked(s: GroupHom, t: GroupHom, eps: GroupHom) -> Self {
        let mut by_target = vec![Vec::new(); s.cod().order()];
        for a in s.dom().elements() {
            by_target[t.apply(a)].push(a);
        }
        GroupGroupoid { s, t, eps, by_target }
    }

    pub fn g1(&self) -> &GroupRef {
        self.s.dom()
    }

    pub fn g0(&self) -> &GroupRef {
        self.s.cod()
    }

    pub fn s(&self) -> &GroupHom {
        &self.s
    }

    pub fn t(&self) -> &GroupHom {
        &self.t
    }

    pub fn eps(&self) -> &GroupHom {
        &self.eps
    }

    #[inline]
    pub fn source(&self, a: usize) -> usize {
        self.s.apply(a)
    }

    #[inline]
    pub fn target(&self, a: usize) -> usize {
        self.t.apply(a)
    }

    #[inline]
    pub fn identity(&self, x: usize) -> usize {
        self.eps.apply(x)
    }

    /// Arrows with target `x`, ascending.
    pub fn arrows_into(&self, x: usize) -> &[usize] {
        &self.by_target[x]
    }

    pub fn is_composable(&self, b: usize, a: usize) -> bool {
        self.source(b) == self.target(a)
    }

    /// Composable pairs `(b, a)` in lexicographic order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.g1().elements().flat_map(move |b| self.arrows_into(self.source(b)).iter().map(move |&a| (b, a)))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, b: usize, a: usize) -> usize {
        let g1 = self.g1();
        g1.op(g1.op(b, g1.inv(self.identity(self.source(b)))), a)
    }

    /// `b∘a`, computed both as `b·1⁻¹·a` and `a·1⁻¹·b`.
    pub fn compose(&self, b: usize, a: usize) -> Result<usize, GroupoidError> {
        if !self.is_composable(b, a) {
            return Err(GroupoidError::NotComposable { s_b: self.source(b), t_a: self.target(a) });
        }
        let g1 = self.g1();
        let mid = g1.inv(self.identity(self.source(b)));
        let left = g1.op(g1.op(b, mid), a);
        let right = g1.op(g1.op(a, mid), b);
        assert_eq!(left, right, "composition forms disagree in a validated group-groupoid");
        Ok(left)
    }

    /// The groupoid inverse `ε(s(a))·a⁻¹·ε(t(a))`.
    pub fn inverse(&self, a: usize) -> usize {
        let g1 = self.g1();
        g1.op(g1.op(self.identity(self.source(a)), g1.inv(a)), self.identity(self.target(a)))
    }

    /// The composition as a homomorphism on `G1 ×_{s,t} G1`.
    pub fn composition_hom(&self) -> Result<(Pullback, GroupHom), GroupoidError> {
        let pb = pullback_group(&self.s, &self.t)?;
        let map = pb.group.elements().map(|z| {
            let (b, a) = pb.pair(z);
            self.compose_unchecked(b, a)
        });
        let m = GroupHom::new(pb.group.clone(), self.g1().clone(), map.collect())?;
        Ok((pb, m))
    }

    /// Validate explicit composition triples against the derived composition.
    pub fn validate_composition(&self, triples: &[[usize; 3]]) -> Result<(), GroupoidError> {
        let n = self.g1().order();
        let mut seen = vec![false; n * n];
        for &[b, a, c] in triples {
            if b >= n || a >= n || c >= n {
                return Err(GroupoidError::Group(GroupError::MapOutOfRange { x: b.max(a).max(c) }));
            }
            let derived = self.compose(b, a)?;
            if derived != c {
                return Err(GroupoidError::CompositionMismatch { b, a });
            }
            seen[b * n + a] = true;
        }
        if let Some((b, a)) = self.composable_pairs().find(|&(b, a)| !seen[b * n + a]) {
            return Err(GroupoidError::CompositionMissing { b, a });
        }
        Ok(())
    }

    pub fn to_candidate(&self) -> GroupoidCandidate {
        GroupoidCandidate {
            g1: self.g1().clone(),
            g0: self.g0().clone(),
            source: self.s.map().to_vec(),
            target: self.t.map().to_vec(),
            identity: self.eps.map().to_vec(),
            composition: None,
        }
    }
}

/// `ggpd_compose`
pub fn ggpd_compose(g: &GroupGroupoid, b: usize, a: usize) -> Result<usize, GroupoidError> {
    g.compose(b, a)
}

/// `ggpd_inverse`
pub fn ggpd_inverse(g: &GroupGroupoid, a: usize) -> usize {
    g.inverse(a)
}

/// Every arrow an identity: `G1 = G0`, `s = t = ε = id`.
pub fn discrete_ggpd(g: &GroupRef) -> GroupGroupoid {
    let id = GroupHom::identity(g.clone());
    GroupGroupoid::new_unchecked(id.clone(), id.clone(), id)
}

/// `G×G` with `s = π₁`, `t = π₂`, `ε = Δ`, so `(y, z)∘(x, y) = (x, z)`.
pub fn pair_ggpd(g: &GroupRef) -> Result<GroupGroupoid, GroupoidError> {
    let n = g.order();
    let limit = crate::limits::product_limit();
    if n * n > limit {
        return Err(GroupoidError::Group(GroupError::SizeLimit { order: n * n, limit }));
    }
    let g1 = Arc::new(direct_product(g, g));
    let s = GroupHom::from_fn(g1.clone(), g.clone(), |z| z / n);
    let t = GroupHom::from_fn(g1.clone(), g.clone(), |z| z % n);
    let eps = GroupHom::from_fn(g.clone(), g1, |x| x * n + x);
    Ok(GroupGroupoid::new_unchecked(s, t, eps))
}

/// `(ker s, G0, t|, x·a = ε(x)·a·ε(x)⁻¹)`, with `ker s` relabelled in
/// ascending order of its members.
pub fn phi_bs(g: &GroupGroupoid) -> CrossedModule {
    let ker = g.s.kernel();
    let (a, _) = ker.as_group();
    let alpha = g.t.restrict(&ker, a.clone());
    let g1 = g.g1();
    let action = GroupAction::from_fn(g.g0().clone(), a, |x, k| {
        ker.position(g1.conj(g.identity(x), ker.members()[k])).expect("ker s is normal")
    });
    CrossedModule::new(alpha, action).expect("the kernel of s with t restricted is a crossed module")
}

/// `G1 = A⋊B`, `G0 = B`, `s(a,b) = b`, `t(a,b) = α(a)·b`, `ε(b) = (0,b)`.
pub fn psi_bs(x: &CrossedModule) -> Result<GroupGroupoid, GroupoidError> {
    let sd = semidirect_product(x.action())?;
    let b = x.b().clone();
    let t = GroupHom::from_fn(sd.group.clone(), b.clone(), |z| {
        let (a, y) = sd.split(z);
        b.op(x.boundary(a), y)
    });
    Ok(GroupGroupoid::new(sd.proj.clone(), t, sd.inj_actor.clone()).expect("psi_bs yields a group-groupoid"))
}

/// An internal functor between group-groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidMorphism {
    source: GroupGroupoid,
    target: GroupGroupoid,
    f1: GroupHom,
    f0: GroupHom,
}

/// Validate raw maps as an internal functor `source → target`.
pub fn ggpd_morphism_check(
    f1: Vec<usize>,
    f0: Vec<usize>,
    source: &GroupGroupoid,
    target: &GroupGroupoid,
) -> Result<GroupoidMorphism, GroupoidError> {
    let f1 = GroupHom::new(source.g1().clone(), target.g1().clone(), f1)
        .map_err(|e| GroupoidError::Component { which: "f1", source: e })?;
    let f0 = GroupHom::new(source.g0().clone(), target.g0().clone(), f0)
        .map_err(|e| GroupoidError::Component { which: "f0", source: e })?;
    GroupoidMorphism::new(source.clone(), target.clone(), f1, f0)
}

impl GroupoidMorphism {
    pub fn new(
        source: GroupGroupoid,
        target: GroupGroupoid,
        f1: GroupHom,
        f0: GroupHom,
    ) -> Result<Self, GroupoidError> {
        if **f1.dom() != **source.g1()
            || **f1.cod() != **target.g1()
            || **f0.dom() != **source.g0()
            || **f0.cod() != **target.g0()
        {
            return Err(GroupoidError::CarrierMismatch("functor components"));
        }
        let (g, h) = (&source, &target);
        let n = g.g1().order();
        let laws = [
            Law::new("functor.source", vec![n], |w| f0.apply(g.source(w[0])) == h.source(f1.apply(w[0]))),
            Law::new("functor.target", vec![n], |w| f0.apply(g.target(w[0])) == h.target(f1.apply(w[0]))),
            Law::new("functor.identity", vec![g.g0().order()], |w| {
                f1.apply(g.identity(w[0])) == h.identity(f0.apply(w[0]))
            }),
            Law::over(
                "functor.composition",
                || g.composable_pairs().map(|(b, a)| vec![b, a]),
                |w| w.len() == 2 && w[0] < n && w[1] < n && g.is_composable(w[0], w[1]),
                |w| f1.apply(g.compose_unchecked(w[0], w[1])) == h.compose_unchecked(f1.apply(w[0]), f1.apply(w[1])),
            ),
        ];
        laws::scan(&laws).map_err(|v| GroupoidError::CategoryAxiomFail { tag: v.tag, witness: v.witness })?;
        drop(laws);
        Ok(GroupoidMorphism { source, target, f1, f0 })
    }

    pub fn source(&self) -> &GroupGroupoid {
        &self.source
    }

    pub fn target(&self) -> &GroupGroupoid {
        &self.target
    }

    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }

    pub fn f0(&self) -> &GroupHom {
        &self.f0
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f1.is_bijective() && self.f0.is_bijective()
    }
}

/// `g ↦ (g·ε(s(g))⁻¹, s(g))`, from `G` to `psi_bs(phi_bs(G))`.
pub fn bs_counit(g: &GroupGroupoid) -> Result<GroupoidMorphism, GroupoidError> {
    let x = phi_bs(g);
    let target = psi_bs(&x)?;
    let ker = g.s.kernel();
    let nb = g.g0().order();
    let g1 = g.g1();
    let f1 = GroupHom::new(
        g1.clone(),
        target.g1().clone(),
        g1.elements()
            .map(|a| {
                let y = g.source(a);
                let k = ker.position(g1.div(a, g.identity(y))).expect("a·ε(s(a))⁻¹ lies in ker s");
                k * nb + y
            })
            .collect(),
    )?;
    GroupoidMorphism::new(g.clone(), target, f1, GroupHom::identity(g.g0().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::xmod::{conjugation_xmod, inclusion_xmod, trivial_over};

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::sym3())
    }

    #[test]
    fn discrete_on_z2_passes() {
        let c = GroupoidCandidate {
            g1: z(2),
            g0: z(2),
            source: vec![0, 1],
            target: vec![0, 1],
            identity: vec![0, 1],
            composition: None,
        };
        let g = ggpd_check(&c).unwrap();
        assert_eq!(g, discrete_ggpd(&z(2)));
        assert_eq!(g.compose(1, 1), Ok(1));
    }

    #[test]
    fn nonabelian_kernels_fail() {
        let one = z(1);
        let c = GroupoidCandidate {
            g1: s3(),
            g0: one,
            source: vec![0; 6],
            target: vec![0; 6],
            identity: vec![0],
            composition: None,
        };
        let err = ggpd_check(&c).unwrap_err();
        let (x, y) = FiniteGroup::sym3().noncommuting_pair().unwrap();
        assert_eq!(err, GroupoidError::KernelCommutationFail { ks: x, kt: y });
        assert!(c.reproduces(&err));
    }

    #[test]
    fn bad_identity_section() {
        let c = GroupoidCandidate {
            g1: z(2),
            g0: z(2),
            source: vec![0, 1],
            target: vec![0, 1],
            identity: vec![0, 0],
            composition: None,
        };
        assert_eq!(ggpd_check(&c).unwrap_err(), GroupoidError::IdentitySectionFail { x: 1 });
    }

    #[test]
    fn psi_bs_of_2z4() {
        let x = inclusion_xmod(&Subgroup::generated(z(4), &[2])).unwrap();
        let g = psi_bs(&x).unwrap();
        assert_eq!(g.g1().order(), 8);
        // arrows (a, b) sit at a·4 + b; A relabels {0,2} as {0,1}
        let (a10, a12) = (4, 4 + 2);
        assert_eq!(g.compose(a12, a10), Ok(0));
        assert!(g.compose(a10, a10).is_err());
        ggpd_check(&g.to_candidate()).unwrap();
    }

    #[test]
    fn psi_bs_sizes_and_discrete_case() {
        let g = psi_bs(&conjugation_xmod(&s3())).unwrap();
        assert_eq!(g.g1().order(), 36);
        let g = psi_bs(&trivial_over(&s3())).unwrap();
        assert_eq!(g, discrete_ggpd(&s3()));
    }

    #[test]
    fn inverses() {
        let g = psi_bs(&conjugation_xmod(&s3())).unwrap();
        for x in g.g0().elements() {
            assert_eq!(g.inverse(g.identity(x)), g.identity(x));
        }
        let g1 = g.g1();
        let mut differ = false;
        for a in g1.elements() {
            assert_eq!(g.source(g.inverse(a)), g.target(a));
            if g.source(a) == 0 && g.target(a) == 0 {
                assert_eq!(g.inverse(a), g1.inv(a));
            } else if g.inverse(a) != g1.inv(a) {
                differ = true;
            }
        }
        assert!(differ);
    }

    #[test]
    fn explicit_composition_is_validated() {
        let g = pair_ggpd(&z(2)).unwrap();
        let mut triples: Vec<[usize; 3]> =
            g.composable_pairs().map(|(b, a)| [b, a, g.compose(b, a).unwrap()]).collect();
        g.validate_composition(&triples).unwrap();
        triples[0][2] ^= 1;
        assert!(matches!(g.validate_composition(&triples), Err(GroupoidError::CompositionMismatch { .. })));
        triples.remove(0);
        assert!(matches!(g.validate_composition(&triples), Err(GroupoidError::CompositionMissing { .. })));
    }

    #[test]
    fn pair_groupoid_of_z3() {
        let g = pair_ggpd(&z(3)).unwrap();
        ggpd_check(&g.to_candidate()).unwrap();
        let x = phi_bs(&g);
        assert_eq!(x.a().order(), 3);
        assert_eq!(x.alpha().map(), &[0, 1, 2]);
        assert_eq!(phi_bs(&discrete_ggpd(&z(3))).a().order(), 1);
    }

    #[test]
    fn round_trips() {
        for x in [conjugation_xmod(&s3()), inclusion_xmod(&Subgroup::generated(s3(), &[3])).unwrap()] {
            let g = psi_bs(&x).unwrap();
            assert_eq!(phi_bs(&g), x);
            let u = bs_counit(&g).unwrap();
            assert!(u.is_isomorphism());
        }
        let g = pair_ggpd(&s3()).unwrap();
        assert!(bs_counit(&g).unwrap().is_isomorphism());
    }

    #[test]
    fn composition_is_a_hom_on_the_pullback() {
        let g = psi_bs(&conjugation_xmod(&s3())).unwrap();
        let (pb, m) = g.composition_hom().unwrap();
        assert_eq!(pb.group.order(), 216);
        assert_eq!(m.dom().order(), 216);
    }
}
