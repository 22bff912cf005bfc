//! Crossed squares, their morphisms, the functors between internal categories
//! in crossed modules and crossed squares, and the natural isomorphisms
//! relating the two composites to the identity.
//!
//! A square has corners `L, M, N, P`, maps `λ: L→M`, `λ′: L→N`, `μ: M→P`,
//! `ν: N→P`, actions of `P` on the other three corners and a table
//! `h[m][n]` in `L`. Actions of `M` and `N` on the other corners go through
//! `μ` and `ν` and are never stored.

use std::sync::Arc;

use thiserror::Error;

use crate::catxmod::{catxmod_check, catxmod_morphism_check, CatXMod, CatXModError, CatXModMorphism};
use crate::group::{semidirect_product, FiniteGroup, GroupAction, GroupError, GroupHom, GroupRef, Subgroup};
use crate::laws::{self, Law, Witnessed};
use crate::xmod::{CrossedModule, SubXMod, XModError, XModMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XSqError {
    #[error("component {which}: {source}")]
    Component { which: &'static str, source: GroupError },
    #[error("h table has {rows} rows of lengths {cols:?}")]
    HShape { rows: usize, cols: Vec<usize> },
    #[error("h({m},{n}) is not an element of L")]
    HOutOfRange { m: usize, n: usize },
    #[error("axiom {tag} fails at {witness:?}")]
    Axiom { tag: &'static str, witness: Vec<usize> },
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(&'static str),
    #[error("{0}")]
    XMod(XModError),
    #[error("{0}")]
    CatXMod(Box<CatXModError>),
    #[error("{0}")]
    Group(GroupError),
}

impl From<GroupError> for XSqError {
    fn from(e: GroupError) -> Self {
        XSqError::Group(e)
    }
}

impl From<CatXModError> for XSqError {
    fn from(e: CatXModError) -> Self {
        XSqError::CatXMod(Box::new(e))
    }
}

impl Witnessed for XSqError {
    fn tag(&self) -> String {
        match self {
            XSqError::Component { which, source } => format!("{which}.{}", source.tag()),
            XSqError::HShape { .. } => "h.shape".into(),
            XSqError::HOutOfRange { .. } => "h.range".into(),
            XSqError::Axiom { tag, .. } => (*tag).into(),
            XSqError::CarrierMismatch(_) => "carrier".into(),
            XSqError::XMod(e) => e.tag(),
            XSqError::CatXMod(e) => e.tag(),
            XSqError::Group(e) => e.tag(),
        }
    }

    fn witness(&self) -> Vec<usize> {
        match self {
            XSqError::Component { source, .. } | XSqError::Group(source) => source.witness(),
            XSqError::HShape { .. } | XSqError::CarrierMismatch(_) => vec![],
            XSqError::HOutOfRange { m, n } => vec![*m, *n],
            XSqError::Axiom { witness, .. } => witness.clone(),
            XSqError::XMod(e) => e.witness(),
            XSqError::CatXMod(e) => e.witness(),
        }
    }
}

/// Raw crossed-square data. Action tables are indexed `[p][x]`, `h` is `[m][n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSqCandidate {
    pub l: GroupRef,
    pub m: GroupRef,
    pub n: GroupRef,
    pub p: GroupRef,
    pub lambda: Vec<usize>,
    pub lambda_p: Vec<usize>,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    pub act_l: Vec<Vec<usize>>,
    pub act_m: Vec<Vec<usize>>,
    pub act_n: Vec<Vec<usize>>,
    pub h: Vec<Vec<usize>>,
}

/// Everything in a crossed square except `h`, each piece validated on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFrame {
    pub lambda: GroupHom,
    pub lambda_p: GroupHom,
    pub mu: GroupHom,
    pub nu: GroupHom,
    pub act_l: GroupAction,
    pub act_m: GroupAction,
    pub act_n: GroupAction,
}

impl SquareFrame {
    pub fn l(&self) -> &GroupRef {
        self.lambda.dom()
    }

    pub fn m(&self) -> &GroupRef {
        self.lambda.cod()
    }

    pub fn n(&self) -> &GroupRef {
        self.lambda_p.cod()
    }

    pub fn p(&self) -> &GroupRef {
        self.mu.cod()
    }

    fn consistent(&self) -> bool {
        let (l, m, n, p) = (self.l(), self.m(), self.n(), self.p());
        **self.lambda_p.dom() == **l
            && **self.mu.dom() == **m
            && **self.nu.dom() == **n
            && **self.nu.cod() == **p
            && **self.act_l.actor() == **p
            && **self.act_l.space() == **l
            && **self.act_m.actor() == **p
            && **self.act_m.space() == **m
            && **self.act_n.actor() == **p
            && **self.act_n.space() == **n
    }
}

/// A validated crossed square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedSquare {
    frame: SquareFrame,
    h: Vec<usize>,
}

fn square_laws<'a>(f: &'a SquareFrame, h: &'a [usize]) -> Vec<Law<'a>> {
    let (l, m, n, p) = (f.l(), f.m(), f.n(), f.p());
    let (nl, nm, nn, np) = (l.order(), m.order(), n.order(), p.order());
    let hv = move |x: usize, y: usize| h[x * nn + y];
    // induced actions
    let m_on_l = move |x: usize, y: usize| f.act_l.apply(f.mu.apply(x), y);
    let n_on_l = move |x: usize, y: usize| f.act_l.apply(f.nu.apply(x), y);
    let m_on_n = move |x: usize, y: usize| f.act_n.apply(f.mu.apply(x), y);
    let n_on_m = move |x: usize, y: usize| f.act_m.apply(f.nu.apply(x), y);
    let p_act_l = move |x: usize, y: usize| f.act_l.apply(x, y);
    let ml = move |x: usize| f.mu.apply(f.lambda.apply(x));
    vec![
        Law::new("commute", vec![nl], move |w| f.nu.apply(f.lambda_p.apply(w[0])) == ml(w[0])),
        Law::new("i.equivariance_lambda", vec![np, nl], move |w| {
            f.lambda.apply(f.act_l.apply(w[0], w[1])) == f.act_m.apply(w[0], f.lambda.apply(w[1]))
        }),
        Law::new("i.equivariance_lambda_p", vec![np, nl], move |w| {
            f.lambda_p.apply(f.act_l.apply(w[0], w[1])) == f.act_n.apply(w[0], f.lambda_p.apply(w[1]))
        }),
        Law::new("i.m.CM1", vec![np, nm], move |w| {
            f.mu.apply(f.act_m.apply(w[0], w[1])) == p.conj(w[0], f.mu.apply(w[1]))
        }),
        Law::new("i.m.CM2", vec![nm, nm], move |w| f.act_m.apply(f.mu.apply(w[0]), w[1]) == m.conj(w[0], w[1])),
        Law::new("i.n.CM1", vec![np, nn], move |w| {
            f.nu.apply(f.act_n.apply(w[0], w[1])) == p.conj(w[0], f.nu.apply(w[1]))
        }),
        Law::new("i.n.CM2", vec![nn, nn], move |w| f.act_n.apply(f.nu.apply(w[0]), w[1]) == n.conj(w[0], w[1])),
        Law::new("i.l.CM1", vec![np, nl], move |w| ml(p_act_l(w[0], w[1])) == p.conj(w[0], ml(w[1]))),
        Law::new("i.l.CM2", vec![nl, nl], move |w| p_act_l(ml(w[0]), w[1]) == l.conj(w[0], w[1])),
        Law::new("ii.lambda", vec![nm, nn], move |w| {
            let (x, y) = (w[0], w[1]);
            f.lambda.apply(hv(x, y)) == m.op(x, n_on_m(y, m.inv(x)))
        }),
        Law::new("ii.lambda_p", vec![nm, nn], move |w| {
            let (x, y) = (w[0], w[1]);
            f.lambda_p.apply(hv(x, y)) == n.op(m_on_n(x, y), n.inv(y))
        }),
        Law::new("iii.left", vec![nl, nn], move |w| {
            let (x, y) = (w[0], w[1]);
            hv(f.lambda.apply(x), y) == l.op(x, n_on_l(y, l.inv(x)))
        }),
        Law::new("iii.right", vec![nm, nl], move |w| {
            let (x, y) = (w[0], w[1]);
            hv(x, f.lambda_p.apply(y)) == l.op(m_on_l(x, y), l.inv(y))
        }),
        Law::new("iv.left", vec![nm, nm, nn], move |w| {
            let (x, x2, y) = (w[0], w[1], w[2]);
            hv(m.op(x, x2), y) == l.op(m_on_l(x, hv(x2, y)), hv(x, y))
        }),
        Law::new("iv.right", vec![nm, nn, nn], move |w| {
            let (x, y, y2) = (w[0], w[1], w[2]);
            hv(x, n.op(y, y2)) == l.op(hv(x, y), n_on_l(y, hv(x, y2)))
        }),
        Law::new("v", vec![np, nm, nn], move |w| {
            let (z, x, y) = (w[0], w[1], w[2]);
            hv(f.act_m.apply(z, x), f.act_n.apply(z, y)) == p_act_l(z, hv(x, y))
        }),
    ]
}

impl XSqCandidate {
    /// Validate the maps and actions individually.
    pub fn frame(&self) -> Result<SquareFrame, XSqError> {
        let hom = |which, dom: &GroupRef, cod: &GroupRef, map: &[usize]| {
            GroupHom::new(dom.clone(), cod.clone(), map.to_vec()).map_err(|e| XSqError::Component { which, source: e })
        };
        let act = |which, space: &GroupRef, rows: &[Vec<usize>]| {
            GroupAction::new(self.p.clone(), space.clone(), rows.to_vec())
                .map_err(|e| XSqError::Component { which, source: e })
        };
        Ok(SquareFrame {
            lambda: hom("lambda", &self.l, &self.m, &self.lambda)?,
            lambda_p: hom("lambda_p", &self.l, &self.n, &self.lambda_p)?,
            mu: hom("mu", &self.m, &self.p, &self.mu)?,
            nu: hom("nu", &self.n, &self.p, &self.nu)?,
            act_l: act("act_l", &self.l, &self.act_l)?,
            act_m: act("act_m", &self.m, &self.act_m)?,
            act_n: act("act_n", &self.n, &self.act_n)?,
        })
    }

    /// True if the reported failure recurs when its witness is re-evaluated.
    pub fn reproduces(&self, err: &XSqError) -> bool {
        match err {
            XSqError::Component { which, source } => match *which {
                "lambda" => GroupHom::reproduces(&self.l, &self.m, &self.lambda, source),
                "lambda_p" => GroupHom::reproduces(&self.l, &self.n, &self.lambda_p, source),
                "mu" => GroupHom::reproduces(&self.m, &self.p, &self.mu, source),
                "nu" => GroupHom::reproduces(&self.n, &self.p, &self.nu, source),
                "act_l" => GroupAction::reproduces(&self.p, &self.l, &self.act_l, source),
                "act_m" => GroupAction::reproduces(&self.p, &self.m, &self.act_m, source),
                "act_n" => GroupAction::reproduces(&self.p, &self.n, &self.act_n, source),
                _ => false,
            },
            XSqError::HOutOfRange { m, n } => {
                self.h.get(*m).and_then(|r| r.get(*n)).is_some_and(|&v| v >= self.l.order())
            }
            XSqError::Axiom { tag, witness } => {
                let (Ok(frame), Ok(h)) = (self.frame(), flatten_h(&self.h, &self.m, &self.n, &self.l)) else {
                    return false;
                };
                let laws = square_laws(&frame, &h);
                laws::holds_at(&laws, tag, witness) == Some(false)
            }
            _ => xsq_check(self).err().as_ref() == Some(err),
        }
    }
}

fn flatten_h(h: &[Vec<usize>], m: &FiniteGroup, n: &FiniteGroup, l: &FiniteGroup) -> Result<Vec<usize>, XSqError> {
    if h.len() != m.order() || h.iter().any(|r| r.len() != n.order()) {
        return Err(XSqError::HShape { rows: h.len(), cols: h.iter().map(Vec::len).collect() });
    }
    for (x, row) in h.iter().enumerate() {
        if let Some(y) = row.iter().position(|&v| v >= l.order()) {
            return Err(XSqError::HOutOfRange { m: x, n: y });
        }
    }
    Ok(h.concat())
}

/// Validate components, then the commuting square and axioms (i) to (v).
pub fn xsq_check(c: &XSqCandidate) -> Result<CrossedSquare, XSqError> {
    let frame = c.frame()?;
    CrossedSquare::new(frame, &c.h)
}

impl CrossedSquare {
    pub fn new(frame: SquareFrame, h: &[Vec<usize>]) -> Result<Self, XSqError> {
        if !frame.consistent() {
            return Err(XSqError::CarrierMismatch("square corners"));
        }
        let h = flatten_h(h, frame.m(), frame.n(), frame.l())?;
        let verdict = laws::scan(&square_laws(&frame, &h));
        verdict.map_err(|v| XSqError::Axiom { tag: v.tag, witness: v.witness })?;
        Ok(CrossedSquare { frame, h })
    }

    fn checked(frame: SquareFrame, h: Vec<usize>, what: &str) -> Self {
        let rows: Vec<Vec<usize>> = h.chunks(frame.n().order()).map(<[usize]>::to_vec).collect();
        match Self::new(frame, &rows) {
            Ok(s) => s,
            Err(e) => panic!("{what} produced an invalid crossed square: {e}"),
        }
    }

    pub fn frame(&self) -> &SquareFrame {
        &self.frame
    }

    pub fn l(&self) -> &GroupRef {
        self.frame.l()
    }

    pub fn m(&self) -> &GroupRef {
        self.frame.m()
    }

    pub fn n(&self) -> &GroupRef {
        self.frame.n()
    }

    pub fn p(&self) -> &GroupRef {
        self.frame.p()
    }

    #[inline]
    pub fn h(&self, m: usize, n: usize) -> usize {
        self.h[m * self.n().order() + n]
    }

    pub fn h_rows(&self) -> Vec<Vec<usize>> {
        self.h.chunks(self.n().order()).map(<[usize]>::to_vec).collect()
    }

    pub fn to_candidate(&self) -> XSqCandidate {
        let f = &self.frame;
        XSqCandidate {
            l: self.l().clone(),
            m: self.m().clone(),
            n: self.n().clone(),
            p: self.p().clone(),
            lambda: f.lambda.map().to_vec(),
            lambda_p: f.lambda_p.map().to_vec(),
            mu: f.mu.map().to_vec(),
            nu: f.nu.map().to_vec(),
            act_l: f.act_l.rows(),
            act_m: f.act_m.rows(),
            act_n: f.act_n.rows(),
            h: self.h_rows(),
        }
    }
}

/// A validated morphism of crossed squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSqMorphism {
    source: CrossedSquare,
    target: CrossedSquare,
    f_l: GroupHom,
    f_m: GroupHom,
    f_n: GroupHom,
    f_p: GroupHom,
}

/// Validate raw corner maps as a morphism of crossed squares. Faces are
/// checked in the order `λ`, `λ′`, `ν`, `μ`, then the actions on `L`, `M`,
/// `N`, then `h`.
pub fn xsq_morphism_check(
    f_l: Vec<usize>,
    f_m: Vec<usize>,
    f_n: Vec<usize>,
    f_p: Vec<usize>,
    s1: &CrossedSquare,
    s2: &CrossedSquare,
) -> Result<XSqMorphism, XSqError> {
    let hom = |which, dom: &GroupRef, cod: &GroupRef, map: Vec<usize>| {
        GroupHom::new(dom.clone(), cod.clone(), map).map_err(|e| XSqError::Component { which, source: e })
    };
    let f_l = hom("f_l", s1.l(), s2.l(), f_l)?;
    let f_m = hom("f_m", s1.m(), s2.m(), f_m)?;
    let f_n = hom("f_n", s1.n(), s2.n(), f_n)?;
    let f_p = hom("f_p", s1.p(), s2.p(), f_p)?;
    XSqMorphism::new(s1.clone(), s2.clone(), f_l, f_m, f_n, f_p)
}

impl XSqMorphism {
    pub fn new(
        source: CrossedSquare,
        target: CrossedSquare,
        f_l: GroupHom,
        f_m: GroupHom,
        f_n: GroupHom,
        f_p: GroupHom,
    ) -> Result<Self, XSqError> {
        let (a, b) = (&source, &target);
        let ok = [(&f_l, a.l(), b.l()), (&f_m, a.m(), b.m()), (&f_n, a.n(), b.n()), (&f_p, a.p(), b.p())]
            .iter()
            .all(|(f, d, c)| **f.dom() == ***d && **f.cod() == ***c);
        if !ok {
            return Err(XSqError::CarrierMismatch("square morphism corners"));
        }
        let (fa, fb) = (&a.frame, &b.frame);
        let (nl, nm, nn, np) = (a.l().order(), a.m().order(), a.n().order(), a.p().order());
        let laws = [
            Law::new("lambda", vec![nl], |w| f_m.apply(fa.lambda.apply(w[0])) == fb.lambda.apply(f_l.apply(w[0]))),
            Law::new("lambda_p", vec![nl], |w| {
                f_n.apply(fa.lambda_p.apply(w[0])) == fb.lambda_p.apply(f_l.apply(w[0]))
            }),
            Law::new("nu", vec![nn], |w| f_p.apply(fa.nu.apply(w[0])) == fb.nu.apply(f_n.apply(w[0]))),
            Law::new("mu", vec![nm], |w| f_p.apply(fa.mu.apply(w[0])) == fb.mu.apply(f_m.apply(w[0]))),
            Law::new("action_l", vec![np, nl], |w| {
                f_l.apply(fa.act_l.apply(w[0], w[1])) == fb.act_l.apply(f_p.apply(w[0]), f_l.apply(w[1]))
            }),
            Law::new("action_m", vec![np, nm], |w| {
                f_m.apply(fa.act_m.apply(w[0], w[1])) == fb.act_m.apply(f_p.apply(w[0]), f_m.apply(w[1]))
            }),
            Law::new("action_n", vec![np, nn], |w| {
                f_n.apply(fa.act_n.apply(w[0], w[1])) == fb.act_n.apply(f_p.apply(w[0]), f_n.apply(w[1]))
            }),
            Law::new("h", vec![nm, nn], |w| f_l.apply(a.h(w[0], w[1])) == b.h(f_m.apply(w[0]), f_n.apply(w[1]))),
        ];
        let verdict = laws::scan(&laws);
        drop(laws);
        verdict.map_err(|v| XSqError::Axiom { tag: v.tag, witness: v.witness })?;
        Ok(XSqMorphism { source, target, f_l, f_m, f_n, f_p })
    }

    pub fn identity(s: &CrossedSquare) -> Self {
        XSqMorphism {
            source: s.clone(),
            target: s.clone(),
            f_l: GroupHom::identity(s.l().clone()),
            f_m: GroupHom::identity(s.m().clone()),
            f_n: GroupHom::identity(s.n().clone()),
            f_p: GroupHom::identity(s.p().clone()),
        }
    }

    pub fn source(&self) -> &CrossedSquare {
        &self.source
    }

    pub fn target(&self) -> &CrossedSquare {
        &self.target
    }

    pub fn f_l(&self) -> &GroupHom {
        &self.f_l
    }

    pub fn f_m(&self) -> &GroupHom {
        &self.f_m
    }

    pub fn f_n(&self) -> &GroupHom {
        &self.f_n
    }

    pub fn f_p(&self) -> &GroupHom {
        &self.f_p
    }

    pub fn is_isomorphism(&self) -> bool {
        [&self.f_l, &self.f_m, &self.f_n, &self.f_p].iter().all(|f| f.is_bijective())
    }
}

/// The crossed square of an internal category: `L = ker s_A`, `M = ker s_B`,
/// `N = A0`, `P = B0`, `h(m,n) = (m·ε_A(n))·ε_A(n)⁻¹`.
pub fn eta(c: &CatXMod) -> CrossedSquare {
    let (c1, c0) = (c.c1(), c.c0());
    let (ga, gb) = (c.side_a(), c.side_b());
    let (a1, b1) = (c1.a(), c1.b());
    let ker_a = ga.s().kernel();
    let ker_b = gb.s().kernel();
    let (l, _) = ker_a.as_group();
    let (m, _) = ker_b.as_group();
    let (n, p) = (c0.a().clone(), c0.b().clone());
    let lambda =
        c1.alpha().restrict(&ker_a, l.clone()).corestrict(&ker_b, m.clone()).expect("α1 maps ker s_A into ker s_B");
    let lambda_p = ga.t().restrict(&ker_a, l.clone());
    let mu = gb.t().restrict(&ker_b, m.clone());
    let nu = c0.alpha().clone();
    let pos_l = |x: usize| ker_a.position(x).expect("element of ker s_A");
    let pos_m = |x: usize| ker_b.position(x).expect("element of ker s_B");
    let act_l = GroupAction::from_fn(p.clone(), l.clone(), |y, x| pos_l(c1.act(gb.identity(y), ker_a.members()[x])));
    let act_m = GroupAction::from_fn(p.clone(), m.clone(), |y, x| pos_m(b1.conj(gb.identity(y), ker_b.members()[x])));
    let act_n = c0.action().clone();
    let mut h = Vec::with_capacity(m.order() * n.order());
    for &x in ker_b.members() {
        for y in n.elements() {
            let one = ga.identity(y);
            h.push(pos_l(a1.div(c1.act(x, one), one)));
        }
    }
    let frame = SquareFrame { lambda, lambda_p, mu, nu, act_l, act_m, act_n };
    CrossedSquare::checked(frame, h, "eta")
}

/// The internal category of a crossed square: `C1 = (L⋊N, M⋊P, λ×ν)`,
/// `C0 = (N, P, ν)`, with `(m,p)·(l,n) = (m·(p·l)·h(m, p·n), p·n)`.
pub fn psi_sq(s: &CrossedSquare) -> Result<CatXMod, XSqError> {
    let f = &s.frame;
    let (l, n, p) = (s.l(), s.n(), s.p());
    let n_on_l = f.act_l.pulled_back(&f.nu)?;
    let a1 = semidirect_product(&n_on_l)?;
    let b1 = semidirect_product(&f.act_m)?;
    let (nn, np) = (n.order(), p.order());
    let alpha1 = GroupHom::new(
        a1.group.clone(),
        b1.group.clone(),
        a1.group
            .elements()
            .map(|z| {
                let (x, y) = a1.split(z);
                b1.pair(f.lambda.apply(x), f.nu.apply(y))
            })
            .collect(),
    )?;
    let mut rows = Vec::with_capacity(b1.group.order());
    for w in b1.group.elements() {
        let (x, y) = b1.split(w);
        let row = a1
            .group
            .elements()
            .map(|z| {
                let (u, v) = a1.split(z);
                let pv = f.act_n.apply(y, v);
                let moved = f.act_l.apply(f.mu.apply(x), f.act_l.apply(y, u));
                a1.pair(l.op(moved, s.h(x, pv)), pv)
            })
            .collect();
        rows.push(row);
    }
    let action = GroupAction::new(b1.group.clone(), a1.group.clone(), rows)?;
    let c1 = CrossedModule::new(alpha1, action).map_err(XSqError::XMod)?;
    let c0 = CrossedModule::new(f.nu.clone(), f.act_n.clone()).map_err(XSqError::XMod)?;
    let target_a: Vec<usize> = a1
        .group
        .elements()
        .map(|z| {
            let (x, y) = a1.split(z);
            n.op(f.lambda_p.apply(x), y)
        })
        .collect();
    let target_b: Vec<usize> = b1
        .group
        .elements()
        .map(|w| {
            let (x, y) = b1.split(w);
            p.op(f.mu.apply(x), y)
        })
        .collect();
    let cand = crate::catxmod::CatXModCandidate {
        source_a: a1.group.elements().map(|z| z % nn).collect(),
        source_b: b1.group.elements().map(|w| w % np).collect(),
        target_a,
        target_b,
        identity_a: n.elements().collect(),
        identity_b: p.elements().collect(),
        c1,
        c0,
    };
    match catxmod_check(&cand) {
        Ok(c) => Ok(c),
        Err(e) => panic!("psi_sq produced an invalid internal category: {e}"),
    }
}

/// `eta` on an internal functor `F: C → C′`.
pub fn eta_morphism(f: &CatXModMorphism) -> XSqMorphism {
    let (s1, s2) = (eta(f.source()), eta(f.target()));
    let (ka, kb) = (f.source().side_a().s().kernel(), f.source().side_b().s().kernel());
    let (ka2, kb2) = (f.target().side_a().s().kernel(), f.target().side_b().s().kernel());
    let f_l = f.f1().f_a().restrict(&ka, s1.l().clone()).corestrict(&ka2, s2.l().clone()).expect("F preserves ker s_A");
    let f_m = f.f1().f_b().restrict(&kb, s1.m().clone()).corestrict(&kb2, s2.m().clone()).expect("F preserves ker s_B");
    XSqMorphism::new(s1, s2, f_l, f_m, f.f0().f_a().clone(), f.f0().f_b().clone())
        .expect("eta of a functor is a morphism")
}

/// `psi_sq` on a morphism of crossed squares.
pub fn psi_sq_morphism(g: &XSqMorphism) -> Result<CatXModMorphism, XSqError> {
    let (c, d) = (psi_sq(g.source())?, psi_sq(g.target())?);
    let (s1, s2) = (g.source(), g.target());
    let (n1, p1, n2, p2) = (s1.n().order(), s1.p().order(), s2.n().order(), s2.p().order());
    let f_a = GroupHom::new(
        c.c1().a().clone(),
        d.c1().a().clone(),
        c.c1().a().elements().map(|z| g.f_l.apply(z / n1) * n2 + g.f_n.apply(z % n1)).collect(),
    )?;
    let f_b = GroupHom::new(
        c.c1().b().clone(),
        d.c1().b().clone(),
        c.c1().b().elements().map(|w| g.f_m.apply(w / p1) * p2 + g.f_p.apply(w % p1)).collect(),
    )?;
    let f1 = XModMorphism::new(c.c1().clone(), d.c1().clone(), f_a, f_b).map_err(XSqError::XMod)?;
    let f0 = XModMorphism::new(c.c0().clone(), d.c0().clone(), g.f_n.clone(), g.f_p.clone()).map_err(XSqError::XMod)?;
    Ok(catxmod_morphism_check(&f1, &f0, &c, &d)?)
}

/// `U_C: C → psi_sq(eta(C))`, `a1 ↦ (a1·ε_A(s_A(a1))⁻¹, s_A(a1))`, `f0 = id`.
pub fn natural_iso_u(c: &CatXMod) -> Result<CatXModMorphism, XSqError> {
    let target = psi_sq(&eta(c))?;
    let side = |g: &crate::groupoid::GroupGroupoid| {
        let ker = g.s().kernel();
        let n0 = g.g0().order();
        let g1 = g.g1();
        g1.elements()
            .map(|x| {
                let y = g.source(x);
                ker.position(g1.div(x, g.identity(y))).expect("lies in ker s") * n0 + y
            })
            .collect::<Vec<_>>()
    };
    let f_a = GroupHom::new(c.c1().a().clone(), target.c1().a().clone(), side(c.side_a()))?;
    let f_b = GroupHom::new(c.c1().b().clone(), target.c1().b().clone(), side(c.side_b()))?;
    let f1 = XModMorphism::new(c.c1().clone(), target.c1().clone(), f_a, f_b).map_err(XSqError::XMod)?;
    let f0 = XModMorphism::new(
        c.c0().clone(),
        target.c0().clone(),
        GroupHom::identity(c.c0().a().clone()),
        GroupHom::identity(c.c0().b().clone()),
    )
    .map_err(XSqError::XMod)?;
    match catxmod_morphism_check(&f1, &f0, c, &target) {
        Ok(u) => Ok(u),
        Err(e) => panic!("natural_iso_u is not an internal functor: {e}"),
    }
}

/// `T_S: eta(psi_sq(S)) → S` with components `(π₁, π₁, 1_N, 1_P)`.
pub fn natural_iso_t(s: &CrossedSquare) -> Result<XSqMorphism, XSqError> {
    let c = psi_sq(s)?;
    let e = eta(&c);
    let ka = c.side_a().s().kernel();
    let kb = c.side_b().s().kernel();
    let (nn, np) = (s.n().order(), s.p().order());
    let f_l = ka.members().iter().map(|&z| z / nn).collect();
    let f_m = kb.members().iter().map(|&w| w / np).collect();
    match xsq_morphism_check(f_l, f_m, s.n().elements().collect(), s.p().elements().collect(), &e, s) {
        Ok(t) => Ok(t),
        Err(e) => panic!("natural_iso_t is not a morphism of crossed squares: {e}"),
    }
}

/// Check `U_{C′}∘F = psi_sq(eta(F))∘U_C` componentwise.
pub fn u_naturality(f: &CatXModMorphism) -> Result<bool, XSqError> {
    let left = natural_iso_u(f.target())?.after(f)?;
    let right = psi_sq_morphism(&eta_morphism(f))?.after(&natural_iso_u(f.source())?)?;
    Ok(left.f1().f_a() == right.f1().f_a()
        && left.f1().f_b() == right.f1().f_b()
        && left.f0().f_a() == right.f0().f_a()
        && left.f0().f_b() == right.f0().f_b())
}

/// `L = A`, `M = B`, `N = A`, `P = B`, `λ = ν = α`, `λ′ = μ = 1`,
/// `h(b, a) = (b·a)·a⁻¹`.
pub fn identity_square(x: &CrossedModule) -> CrossedSquare {
    let (a, b) = (x.a().clone(), x.b().clone());
    let frame = SquareFrame {
        lambda: x.alpha().clone(),
        lambda_p: GroupHom::identity(a.clone()),
        mu: GroupHom::identity(b.clone()),
        nu: x.alpha().clone(),
        act_l: x.action().clone(),
        act_m: GroupAction::conjugation(b.clone()),
        act_n: x.action().clone(),
    };
    let ar = &a;
    let h = b.elements().flat_map(|y| ar.elements().map(move |z| ar.div(x.act(y, z), z))).collect();
    CrossedSquare::checked(frame, h, "identity_square")
}

/// `L = N = 1`, `M = A`, `P = B`, `μ = α`, `h ≡ 0`.
pub fn trivial_square(x: &CrossedModule) -> CrossedSquare {
    let one: GroupRef = Arc::new(FiniteGroup::trivial());
    let (a, b) = (x.a().clone(), x.b().clone());
    let frame = SquareFrame {
        lambda: GroupHom::zero(one.clone(), a.clone()),
        lambda_p: GroupHom::identity(one.clone()),
        mu: x.alpha().clone(),
        nu: GroupHom::zero(one.clone(), b.clone()),
        act_l: GroupAction::trivial(b.clone(), one.clone()),
        act_m: x.action().clone(),
        act_n: GroupAction::trivial(b, one),
    };
    CrossedSquare::checked(frame, vec![0; a.order()], "trivial_square")
}

/// `L = S_A`, `M = S_B`, `N = A`, `P = B`, `h(t, a) = (t·a)·a⁻¹`.
pub fn normal_inclusion_square(sub: &SubXMod) -> Result<CrossedSquare, XSqError> {
    sub.normal_check().map_err(XSqError::XMod)?;
    let x = sub.ambient();
    let (a, b) = (x.a().clone(), x.b().clone());
    let (sa, sb) = (sub.s(), sub.t());
    let (l, inc_l) = sa.as_group();
    let (m, inc_m) = sb.as_group();
    let lambda = x.alpha().restrict(sa, l.clone()).corestrict(sb, m.clone()).expect("α(S) ⊆ T");
    let act_l = x.action().restricted(&Subgroup::whole(b.clone()), b.clone(), sa, l.clone())?;
    let act_m =
        GroupAction::conjugation(b.clone()).restricted(&Subgroup::whole(b.clone()), b.clone(), sb, m.clone())?;
    let frame = SquareFrame {
        lambda,
        lambda_p: inc_l,
        mu: inc_m,
        nu: x.alpha().clone(),
        act_l,
        act_m,
        act_n: x.action().clone(),
    };
    let h = sb
        .members()
        .iter()
        .flat_map(|&t| a.elements().map(move |z| (t, z)))
        .map(|(t, z)| sa.position(a.div(x.act(t, z), z)).expect("normality keeps h inside S"))
        .collect();
    Ok(CrossedSquare::checked(frame, h, "normal_inclusion_square"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catxmod::{discrete_catxmod, pair_catxmod};
    use crate::xmod::{conjugation_xmod, inclusion_xmod, subxmod_check, trivial_module_xmod};

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::sym3())
    }

    fn a3_in_s3() -> CrossedModule {
        inclusion_xmod(&Subgroup::generated(s3(), &[3])).unwrap()
    }

    #[test]
    fn identity_square_of_sym3() {
        let s = identity_square(&conjugation_xmod(&s3()));
        assert!(s.h_rows().iter().flatten().any(|&v| v != 0));
        xsq_check(&s.to_candidate()).unwrap();
        let s = identity_square(&conjugation_xmod(&z(4)));
        assert!(s.h_rows().iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn flipped_h_entry_fails() {
        let s = identity_square(&conjugation_xmod(&s3()));
        let mut c = s.to_candidate();
        c.h[1][2] = (c.h[1][2] + 1) % 6;
        let err = xsq_check(&c).unwrap_err();
        assert!(matches!(err, XSqError::Axiom { .. }));
        assert!(c.reproduces(&err));
    }

    #[test]
    fn trivial_square_with_zero_mu() {
        let s = trivial_square(&conjugation_xmod(&s3()));
        let mut c = s.to_candidate();
        c.mu = vec![0; 6];
        let err = xsq_check(&c).unwrap_err();
        assert_eq!(err.tag(), "i.m.CM2");
        assert!(c.reproduces(&err));
    }

    #[test]
    fn eta_of_pair_is_identity_square() {
        for x in [conjugation_xmod(&s3()), a3_in_s3(), conjugation_xmod(&z(3))] {
            assert_eq!(eta(&pair_catxmod(&x).unwrap()), identity_square(&x));
        }
        let e = eta(&discrete_catxmod(&a3_in_s3()));
        assert_eq!((e.l().order(), e.m().order(), e.n().order(), e.p().order()), (1, 1, 3, 6));
    }

    #[test]
    fn psi_sq_examples() {
        let x = a3_in_s3();
        let c = psi_sq(&identity_square(&x)).unwrap();
        assert_eq!((c.c1().a().order(), c.c1().b().order()), (9, 36));
        let c = psi_sq(&trivial_square(&x)).unwrap();
        assert_eq!(c.c1().a().order(), 1);
        // derived composition (l′, λ′(l)+n)∘(l, n) = (l′+l, n)
        let s = identity_square(&conjugation_xmod(&s3()));
        let c = psi_sq(&s).unwrap();
        let (l, n) = (s.l(), s.n());
        for u in l.elements() {
            for up in l.elements() {
                for w in n.elements() {
                    let first = u * 6 + w;
                    let second = up * 6 + n.op(s.frame().lambda_p.apply(u), w);
                    assert_eq!(c.compose_a(second, first), Ok(l.op(up, u) * 6 + w));
                }
            }
        }
    }

    #[test]
    fn natural_isos() {
        let x = a3_in_s3();
        for c in [pair_catxmod(&x).unwrap(), discrete_catxmod(&x)] {
            let u = natural_iso_u(&c).unwrap();
            assert!(u.is_isomorphism());
            for y in c.c0().a().elements() {
                assert_eq!(u.f1().f_a().apply(c.side_a().identity(y)), y);
            }
        }
        for s in [identity_square(&conjugation_xmod(&z(3))), trivial_square(&x), identity_square(&x)] {
            assert!(natural_iso_t(&s).unwrap().is_isomorphism());
        }
        assert!(u_naturality(&CatXModMorphism::diagonal(&x).unwrap()).unwrap());
        let f =
            crate::xmod::xmod_morphism_check(vec![0, 3, 4], (0..6).collect(), &x, &conjugation_xmod(&s3())).unwrap();
        assert!(u_naturality(&CatXModMorphism::pair_map(&f).unwrap()).unwrap());
    }

    #[test]
    fn normal_inclusion_squares() {
        let conj = conjugation_xmod(&s3());
        let sub = subxmod_check(&conj, vec![0, 3, 4], vec![0, 3, 4]).unwrap();
        xsq_check(&normal_inclusion_square(&sub).unwrap().to_candidate()).unwrap();
        assert_eq!(normal_inclusion_square(&SubXMod::whole(&conj)).unwrap(), identity_square(&conj));

        let inv = GroupAction::new(z(2), z(3), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let x = trivial_module_xmod(&inv).unwrap();
        let bad = subxmod_check(&x, vec![0], vec![0, 1]).unwrap();
        assert!(matches!(normal_inclusion_square(&bad), Err(XSqError::XMod(XModError::Cond3Fail { .. }))));
    }

    #[test]
    fn morphism_with_zero_p_fails_nu() {
        let s = identity_square(&conjugation_xmod(&s3()));
        let id: Vec<usize> = (0..6).collect();
        xsq_morphism_check(id.clone(), id.clone(), id.clone(), id.clone(), &s, &s).unwrap();
        let err = xsq_morphism_check(id.clone(), id.clone(), id, vec![0; 6], &s, &s).unwrap_err();
        assert_eq!(err, XSqError::Axiom { tag: "nu", witness: vec![1] });
    }
}
