//! Brute-force enumeration of small structures, used as an independent
//! oracle for the constructors. Nothing here reuses the constructors or the
//! automorphism and isomorphism searches: candidates are generated directly
//! and filtered by the checkers.

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupAction, GroupRef};
use crate::groupoid::{ggpd_check, GroupGroupoid, GroupoidCandidate};
use crate::limits::ORACLE_LIMIT;
use crate::xmod::{xmod_check, CrossedModule, XModCandidate};
use crate::xsq::{CrossedSquare, SquareFrame, XSqCandidate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("carrier of order {order} exceeds the oracle limit {limit}")]
    SizeLimit { order: usize, limit: usize },
    #[error("search space of {size} candidates is too large")]
    SearchTooLarge { size: u128 },
}

/// Summary of one enumeration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub carrier: String,
    pub scanned: u64,
    pub valid: usize,
    pub representatives: Option<usize>,
    pub wall_time: Duration,
}

impl fmt::Display for EnumerationReport {
    /// Wall time is left out so that the text is reproducible.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "carrier: {}", self.carrier)?;
        writeln!(f, "scanned: {}", self.scanned)?;
        writeln!(f, "valid: {}", self.valid)?;
        if let Some(r) = self.representatives {
            writeln!(f, "representatives: {r}")?;
        }
        Ok(())
    }
}

/// Structures found together with the run summary.
#[derive(Clone, Debug)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub report: EnumerationReport,
}

fn within(groups: &[&FiniteGroup]) -> Result<(), OracleError> {
    match groups.iter().find(|g| g.order() > ORACLE_LIMIT) {
        Some(g) => Err(OracleError::SizeLimit { order: g.order(), limit: ORACLE_LIMIT }),
        None => Ok(()),
    }
}

fn label(g: &FiniteGroup) -> String {
    g.name().map_or_else(|| format!("order {}", g.order()), str::to_owned)
}

/// Every map `G → H` respecting the operation, by assigning images to
/// `0, 1, 2, …` in turn and pruning on each newly determined product.
pub fn brute_homs(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<usize>> {
    fn extend(g: &FiniteGroup, h: &FiniteGroup, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = map.len();
        if x == g.order() {
            out.push(map.clone());
            return;
        }
        for y in h.elements() {
            map.push(y);
            let consistent = (0..=x).all(|u| {
                (0..=x).all(|v| {
                    let w = g.op(u, v);
                    (u != x && v != x) || w > x || map[w] == h.op(map[u], map[v])
                })
            });
            if consistent {
                extend(g, h, map, out);
            }
            map.pop();
        }
    }
    let mut out = Vec::new();
    let mut map = vec![0];
    if g.order() > 0 {
        extend(g, h, &mut map, &mut out);
    }
    out.retain(|m| g.elements().all(|u| g.elements().all(|v| m[g.op(u, v)] == h.op(m[u], m[v]))));
    out
}

/// Bijections `G → H` fixing 0 that respect the operation.
pub fn brute_isomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<usize>> {
    if g.order() != h.order() {
        return vec![];
    }
    let n = g.order();
    (1..n)
        .permutations(n - 1)
        .map(|rest| std::iter::once(0).chain(rest).collect::<Vec<_>>())
        .filter(|m| g.elements().all(|u| g.elements().all(|v| m[g.op(u, v)] == h.op(m[u], m[v]))))
        .collect()
}

/// Automorphisms as bijections fixing 0, in lexicographic order.
pub fn brute_automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    brute_isomorphisms(g, g)
}

type Compose = dyn Fn(&[usize], &[usize]) -> Vec<usize>;

/// All actions of `b` on `a` by automorphisms, as homomorphisms `b → Aut(a)`
/// assigned row by row.
pub fn enumerate_actions(b: &GroupRef, a: &GroupRef) -> Result<Enumeration<GroupAction>, OracleError> {
    within(&[b, a])?;
    let start = Instant::now();
    let auts = brute_automorphisms(a);
    let compose = |p: &[usize], q: &[usize]| q.iter().map(|&x| p[x]).collect::<Vec<_>>();
    let mut scanned = 0u64;
    let mut out = Vec::new();
    let mut rows: Vec<usize> = vec![0];
    fn go(
        b: &FiniteGroup,
        auts: &[Vec<usize>],
        rows: &mut Vec<usize>,
        scanned: &mut u64,
        out: &mut Vec<Vec<usize>>,
        compose: &Compose,
    ) {
        let x = rows.len();
        if x == b.order() {
            *scanned += 1;
            out.push(rows.clone());
            return;
        }
        for i in 0..auts.len() {
            rows.push(i);
            let ok = (0..=x).all(|u| {
                (0..=x).all(|v| {
                    let w = b.op(u, v);
                    (u != x && v != x) || w > x || auts[rows[w]] == compose(&auts[rows[u]], &auts[rows[v]])
                })
            });
            if ok {
                go(b, auts, rows, scanned, out, compose);
            } else {
                *scanned += 1;
            }
            rows.pop();
        }
    }
    let mut picks = Vec::new();
    go(b, &auts, &mut rows, &mut scanned, &mut picks, &compose);
    for pick in picks {
        let table: Vec<Vec<usize>> = pick.iter().map(|&i| auts[i].clone()).collect();
        if let Ok(act) = GroupAction::new(b.clone(), a.clone(), table) {
            out.push(act);
        }
    }
    let valid = out.len();
    Ok(Enumeration {
        items: out,
        report: EnumerationReport {
            carrier: format!("actions of {} on {}", label(b), label(a)),
            scanned,
            valid,
            representatives: None,
            wall_time: start.elapsed(),
        },
    })
}

/// All crossed-module structures with module `a` and base `b`.
pub fn enumerate_xmods(a: &GroupRef, b: &GroupRef) -> Result<Enumeration<CrossedModule>, OracleError> {
    within(&[a, b])?;
    let start = Instant::now();
    let homs = brute_homs(a, b);
    let actions = enumerate_actions(b, a)?.items;
    let mut scanned = 0;
    let mut out = Vec::new();
    for boundary in &homs {
        for act in &actions {
            scanned += 1;
            let cand = XModCandidate { a: a.clone(), b: b.clone(), boundary: boundary.clone(), action: act.rows() };
            if let Ok(x) = xmod_check(&cand) {
                out.push(x);
            }
        }
    }
    let valid = out.len();
    Ok(Enumeration {
        items: out,
        report: EnumerationReport {
            carrier: format!("crossed modules {} -> {}", label(a), label(b)),
            scanned,
            valid,
            representatives: None,
            wall_time: start.elapsed(),
        },
    })
}

/// All `(s, t, ε)` making `(g1, g0)` a group-groupoid.
pub fn enumerate_ggpd_structures(g1: &GroupRef, g0: &GroupRef) -> Result<Enumeration<GroupGroupoid>, OracleError> {
    within(&[g1, g0])?;
    let start = Instant::now();
    let down = brute_homs(g1, g0);
    let up = brute_homs(g0, g1);
    let mut scanned = 0;
    let mut out = Vec::new();
    for s in &down {
        for t in &down {
            for eps in &up {
                scanned += 1;
                let cand = GroupoidCandidate {
                    g1: g1.clone(),
                    g0: g0.clone(),
                    source: s.clone(),
                    target: t.clone(),
                    identity: eps.clone(),
                    composition: None,
                };
                if let Ok(g) = ggpd_check(&cand) {
                    out.push(g);
                }
            }
        }
    }
    let valid = out.len();
    Ok(Enumeration {
        items: out,
        report: EnumerationReport {
            carrier: format!("group-groupoids {} over {}", label(g1), label(g0)),
            scanned,
            valid,
            representatives: None,
            wall_time: start.elapsed(),
        },
    })
}

fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = vec![false; g.order()];
    reached[0] = true;
    while let Some(x) = reached.iter().position(|&r| !r) {
        gens.push(x);
        let mut frontier = vec![0];
        reached = vec![false; g.order()];
        reached[0] = true;
        while let Some(y) = frontier.pop() {
            for &s in &gens {
                let z = g.op(y, s);
                if !reached[z] {
                    reached[z] = true;
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

/// All `h` tables completing a frame to a crossed square. Values on
/// generator pairs are enumerated and the rest is forced by the two
/// product rules for `h`, so each candidate is a full table.
pub fn enumerate_h_maps(frame: &SquareFrame) -> Result<Enumeration<CrossedSquare>, OracleError> {
    let (l, m, n) = (frame.l().clone(), frame.m().clone(), frame.n().clone());
    let cells = m.order() * n.order();
    if cells > 64 {
        return Err(OracleError::SizeLimit { order: cells, limit: 64 });
    }
    let start = Instant::now();
    let gm = greedy_generators(&m);
    let gn = greedy_generators(&n);
    let slots = gm.len() * gn.len();
    let size = (l.order() as u128).pow(slots as u32);
    if size > 1 << 20 {
        return Err(OracleError::SearchTooLarge { size });
    }
    let m_on_l = |x: usize, y: usize| frame.act_l.apply(frame.mu.apply(x), y);
    let n_on_l = |x: usize, y: usize| frame.act_l.apply(frame.nu.apply(x), y);
    let nn = n.order();
    let mut scanned = 0;
    let mut out = Vec::new();
    let assignments: Box<dyn Iterator<Item = Vec<usize>>> = if slots == 0 {
        Box::new(std::iter::once(vec![]))
    } else {
        Box::new((0..slots).map(|_| l.elements()).multi_cartesian_product())
    };
    for values in assignments {
        scanned += 1;
        let Some(h) = propagate(&l, &m, &n, &gm, &gn, &values, &m_on_l, &n_on_l) else {
            continue;
        };
        let rows: Vec<Vec<usize>> = h.chunks(nn).map(<[usize]>::to_vec).collect();
        let cand = XSqCandidate {
            l: l.clone(),
            m: m.clone(),
            n: n.clone(),
            p: frame.p().clone(),
            lambda: frame.lambda.map().to_vec(),
            lambda_p: frame.lambda_p.map().to_vec(),
            mu: frame.mu.map().to_vec(),
            nu: frame.nu.map().to_vec(),
            act_l: frame.act_l.rows(),
            act_m: frame.act_m.rows(),
            act_n: frame.act_n.rows(),
            h: rows,
        };
        if let Ok(s) = crate::xsq::xsq_check(&cand) {
            out.push(s);
        }
    }
    let valid = out.len();
    Ok(Enumeration {
        items: out,
        report: EnumerationReport {
            carrier: format!("h maps {} x {} -> {}", label(&m), label(&n), label(&l)),
            scanned,
            valid,
            representatives: None,
            wall_time: start.elapsed(),
        },
    })
}

#[allow(clippy::too_many_arguments)]
fn propagate(
    l: &FiniteGroup,
    m: &FiniteGroup,
    n: &FiniteGroup,
    gm: &[usize],
    gn: &[usize],
    values: &[usize],
    m_on_l: &dyn Fn(usize, usize) -> usize,
    n_on_l: &dyn Fn(usize, usize) -> usize,
) -> Option<Vec<usize>> {
    let nn = n.order();
    let mut h: Vec<Option<usize>> = vec![None; m.order() * nn];
    let set = |h: &mut Vec<Option<usize>>, x: usize, y: usize, v: usize| -> Option<bool> {
        match h[x * nn + y] {
            Some(old) if old != v => None,
            Some(_) => Some(false),
            None => {
                h[x * nn + y] = Some(v);
                Some(true)
            }
        }
    };
    // h(0, n) = 0 and h(m, 0) = 0
    for y in n.elements() {
        set(&mut h, 0, y, 0)?;
    }
    for x in m.elements() {
        set(&mut h, x, 0, 0)?;
    }
    for (i, &x) in gm.iter().enumerate() {
        for (j, &y) in gn.iter().enumerate() {
            set(&mut h, x, y, values[i * gn.len() + j])?;
        }
    }
    // h(m, n·g) = h(m, n) · n·h(m, g) along each generator column
    for &x in gm {
        let mut frontier = vec![0];
        let mut seen = vec![false; nn];
        seen[0] = true;
        while let Some(y) = frontier.pop() {
            for &g in gn {
                let yg = n.op(y, g);
                let v = l.op(h[x * nn + y]?, n_on_l(y, h[x * nn + g]?));
                set(&mut h, x, yg, v)?;
                if !seen[yg] {
                    seen[yg] = true;
                    frontier.push(yg);
                }
            }
        }
    }
    // h(g·m, n) = g·h(m, n) · h(g, n) along M
    for y in n.elements() {
        let mut frontier = vec![0];
        let mut seen = vec![false; m.order()];
        seen[0] = true;
        while let Some(x) = frontier.pop() {
            for &g in gm {
                let gx = m.op(g, x);
                let v = l.op(m_on_l(g, h[x * nn + y]?), h[g * nn + y]?);
                set(&mut h, gx, y, v)?;
                if !seen[gx] {
                    seen[gx] = true;
                    frontier.push(gx);
                }
            }
        }
    }
    h.into_iter().collect()
}

/// Structures that can be compared up to isomorphism.
pub trait Classifiable {
    /// Canonical encoding used to pick least representatives.
    fn encoding(&self) -> Vec<usize>;
    fn isomorphic(&self, other: &Self) -> bool;
}

fn respects(f: &[usize], g: &[usize], mine: &[usize], theirs: &[usize]) -> bool {
    // theirs ∘ f == g ∘ mine for unary maps
    mine.iter().enumerate().all(|(x, &y)| theirs[f[x]] == g[y])
}

impl Classifiable for GroupAction {
    fn encoding(&self) -> Vec<usize> {
        self.rows().concat()
    }

    fn isomorphic(&self, other: &Self) -> bool {
        let isos_b = brute_isomorphisms(self.actor(), other.actor());
        let isos_a = brute_isomorphisms(self.space(), other.space());
        isos_b.iter().any(|fb| {
            isos_a.iter().any(|fa| {
                self.actor()
                    .elements()
                    .all(|b| self.space().elements().all(|a| fa[self.apply(b, a)] == other.apply(fb[b], fa[a])))
            })
        })
    }
}

impl Classifiable for CrossedModule {
    fn encoding(&self) -> Vec<usize> {
        let mut e = self.alpha().map().to_vec();
        e.extend(self.action().rows().concat());
        e
    }

    fn isomorphic(&self, other: &Self) -> bool {
        let isos_b = brute_isomorphisms(self.b(), other.b());
        let isos_a = brute_isomorphisms(self.a(), other.a());
        isos_a.iter().any(|fa| {
            isos_b.iter().any(|fb| {
                respects(fa, fb, self.alpha().map(), other.alpha().map())
                    && self
                        .b()
                        .elements()
                        .all(|b| self.a().elements().all(|a| fa[self.act(b, a)] == other.act(fb[b], fa[a])))
            })
        })
    }
}

impl Classifiable for GroupGroupoid {
    fn encoding(&self) -> Vec<usize> {
        [self.s().map(), self.t().map(), self.eps().map()].concat()
    }

    fn isomorphic(&self, other: &Self) -> bool {
        let isos1 = brute_isomorphisms(self.g1(), other.g1());
        let isos0 = brute_isomorphisms(self.g0(), other.g0());
        isos1.iter().any(|f1| {
            isos0.iter().any(|f0| {
                respects(f1, f0, self.s().map(), other.s().map())
                    && respects(f1, f0, self.t().map(), other.t().map())
                    && respects(f0, f1, self.eps().map(), other.eps().map())
            })
        })
    }
}

impl Classifiable for CrossedSquare {
    fn encoding(&self) -> Vec<usize> {
        let f = self.frame();
        let mut e = [f.lambda.map(), f.lambda_p.map(), f.mu.map(), f.nu.map()].concat();
        for act in [&f.act_l, &f.act_m, &f.act_n] {
            e.extend(act.rows().concat());
        }
        e.extend(self.h_rows().concat());
        e
    }

    fn isomorphic(&self, other: &Self) -> bool {
        let (f, g) = (self.frame(), other.frame());
        let il = brute_isomorphisms(self.l(), other.l());
        let im = brute_isomorphisms(self.m(), other.m());
        let inn = brute_isomorphisms(self.n(), other.n());
        let ip = brute_isomorphisms(self.p(), other.p());
        let act_ok = |fp: &[usize], fx: &[usize], a: &GroupAction, b: &GroupAction| {
            a.actor().elements().all(|p| a.space().elements().all(|x| fx[a.apply(p, x)] == b.apply(fp[p], fx[x])))
        };
        for fl in &il {
            for fm in &im {
                if !respects(fl, fm, f.lambda.map(), g.lambda.map()) {
                    continue;
                }
                for fnn in &inn {
                    if !respects(fl, fnn, f.lambda_p.map(), g.lambda_p.map()) {
                        continue;
                    }
                    if !self
                        .m()
                        .elements()
                        .all(|x| self.n().elements().all(|y| fl[self.h(x, y)] == other.h(fm[x], fnn[y])))
                    {
                        continue;
                    }
                    for fp in &ip {
                        if respects(fm, fp, f.mu.map(), g.mu.map())
                            && respects(fnn, fp, f.nu.map(), g.nu.map())
                            && act_ok(fp, fl, &f.act_l, &g.act_l)
                            && act_ok(fp, fm, &f.act_m, &g.act_m)
                            && act_ok(fp, fnn, &f.act_n, &g.act_n)
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Partition into isomorphism classes; one lexicographically least member
/// per class, sorted by encoding.
pub fn classify_up_to_iso<T: Classifiable + Clone>(structures: &[T]) -> Vec<T> {
    let mut reps: Vec<T> = Vec::new();
    for s in structures {
        match reps.iter_mut().find(|r| r.isomorphic(s)) {
            Some(r) => {
                if s.encoding().cmp(&r.encoding()) == Ordering::Less {
                    *r = s.clone();
                }
            }
            None => reps.push(s.clone()),
        }
    }
    reps.sort_by_key(Classifiable::encoding);
    reps
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(brute_automorphisms(&z(2)).len(), 1);
        assert_eq!(brute_automorphisms(&z(3)).len(), 2);
        assert_eq!(brute_automorphisms(&FiniteGroup::sym3()).len(), 6);
        assert_eq!(brute_automorphisms(&FiniteGroup::quat8()).len(), 24);
    }

    #[test]
    fn hom_counts() {
        assert_eq!(brute_homs(&z(2), &z(2)).len(), 2);
        assert_eq!(brute_homs(&z(3), &z(2)).len(), 1);
        assert_eq!(brute_homs(&z(4), &z(6)).len(), 2);
        assert_eq!(brute_homs(&FiniteGroup::sym3(), &z(2)).len(), 2);
    }

    #[test]
    fn action_counts() {
        assert_eq!(enumerate_actions(&z(2), &z(2)).unwrap().items.len(), 1);
        assert_eq!(enumerate_actions(&z(2), &z(3)).unwrap().items.len(), 2);
        assert_eq!(enumerate_actions(&z(1), &z(5)).unwrap().items.len(), 1);
        let e = enumerate_actions(&z(2), &z(3)).unwrap();
        assert_eq!(classify_up_to_iso(&e.items).len(), 2);
    }

    #[test]
    fn xmod_counts() {
        let e = enumerate_xmods(&z(2), &z(2)).unwrap();
        assert_eq!(e.items.len(), 2);
        assert_eq!(classify_up_to_iso(&e.items).len(), 2);
        assert_eq!(enumerate_xmods(&z(3), &z(2)).unwrap().items.len(), 2);
        assert_eq!(enumerate_xmods(&Arc::new(FiniteGroup::sym3()), &z(1)).unwrap().items.len(), 0);
        let same = [e.items[0].clone(), e.items[0].clone()];
        assert_eq!(classify_up_to_iso(&same).len(), 1);
    }

    #[test]
    fn size_limit() {
        assert_eq!(enumerate_actions(&z(9), &z(2)).unwrap_err(), OracleError::SizeLimit { order: 9, limit: 8 });
    }

    #[test]
    fn groupoid_structures() {
        let e = enumerate_ggpd_structures(&z(2), &z(2)).unwrap();
        let id = vec![0, 1];
        assert!(e.items.iter().any(|g| g.s().map() == id && g.t().map() == id && g.eps().map() == id));
        let e = enumerate_ggpd_structures(&Arc::new(FiniteGroup::sym3()), &z(1)).unwrap();
        assert!(e.items.is_empty());
    }

    #[test]
    fn h_maps() {
        use crate::xmod::{conjugation_xmod, trivial_module_xmod};
        use crate::xsq::{identity_square, trivial_square};
        let s3 = Arc::new(FiniteGroup::sym3());
        let x = conjugation_xmod(&s3);
        let s = identity_square(&x);
        let e = enumerate_h_maps(s.frame()).unwrap();
        assert!(e.items.contains(&s));

        let t = trivial_square(&x);
        assert_eq!(enumerate_h_maps(t.frame()).unwrap().items, vec![t]);

        let flat = trivial_module_xmod(&GroupAction::trivial(z(2), z(2))).unwrap();
        let s = identity_square(&flat);
        assert!(s.h_rows().iter().flatten().all(|&v| v == 0));
        assert!(enumerate_h_maps(s.frame()).unwrap().items.contains(&s));
    }
}
