//! Products, split extensions and pullbacks.
//!
//! Pairs are encoded row-major with the first coordinate major:
//! `(x, y) ↦ x·|second| + y`.

use std::sync::Arc;

use crate::limits;

use super::{FiniteGroup, GroupAction, GroupError, GroupHom, GroupRef};

fn check_product_size(order: usize) -> Result<(), GroupError> {
    let limit = limits::product_limit();
    if order > limit {
        return Err(GroupError::SizeLimit { order, limit });
    }
    Ok(())
}

/// Direct product `G×H`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    FiniteGroup::from_fn(g.order() * m, |x, y| g.op(x / m, y / m) * m + h.op(x % m, y % m))
}

/// `A⋊B` with its structure maps.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: GroupRef,
    /// `a ↦ (a, 0)`
    pub inj_space: GroupHom,
    /// `b ↦ (0, b)`
    pub inj_actor: GroupHom,
    /// `(a, b) ↦ b`
    pub proj: GroupHom,
}

impl SemidirectProduct {
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.inj_actor.dom().order() + b
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        let nb = self.inj_actor.dom().order();
        (x / nb, x % nb)
    }
}

/// Semidirect product with operation `(a, b)∘(a₁, b₁) = (a ∘ b·a₁, b∘b₁)`.
pub fn semidirect_product(act: &GroupAction) -> Result<SemidirectProduct, GroupError> {
    let (a, b) = (act.space().clone(), act.actor().clone());
    let nb = b.order();
    check_product_size(a.order() * nb)?;
    let group = Arc::new(FiniteGroup::from_fn(a.order() * nb, |x, y| {
        let (a1, b1) = (x / nb, x % nb);
        let (a2, b2) = (y / nb, y % nb);
        a.op(a1, act.apply(b1, a2)) * nb + b.op(b1, b2)
    }));
    Ok(SemidirectProduct {
        inj_space: GroupHom::from_fn(a.clone(), group.clone(), |x| x * nb),
        inj_actor: GroupHom::from_fn(b.clone(), group.clone(), |y| y),
        proj: GroupHom::from_fn(group.clone(), b, move |x| x % nb),
        group,
    })
}

/// Action of `cod(p)` on `dom(i)` by `b·a = i⁻¹(s(b)∘i(a)∘s(b)⁻¹)` for a split
/// short exact sequence `0 → A →i E →p B → 0` with section `s`.
pub fn derived_action(e: &GroupRef, i: &GroupHom, p: &GroupHom, s: &GroupHom) -> Result<GroupAction, GroupError> {
    if **i.cod() != **e || **p.dom() != **e || **s.cod() != **e || **s.dom() != **p.cod() {
        return Err(GroupError::CarrierMismatch("split extension"));
    }
    let b = p.cod().clone();
    if let Some(x) = b.elements().find(|&x| p.apply(s.apply(x)) != x) {
        return Err(GroupError::NotSplit { b: x });
    }
    if let Some((x, y)) = i.collision() {
        return Err(GroupError::NotInjective { x, y });
    }
    if let Some(x) = p.missed() {
        return Err(GroupError::NotSurjective { b: x });
    }
    let image = i.image();
    let kernel = p.kernel();
    if let Some(x) = e.elements().find(|&x| image.contains(x) != kernel.contains(x)) {
        return Err(GroupError::NotExact { x });
    }
    let mut preimage = vec![None; e.order()];
    for (a, &x) in i.map().iter().enumerate() {
        preimage[x] = Some(a);
    }
    let space = i.dom().clone();
    let mut rows = Vec::with_capacity(b.order());
    for x in b.elements() {
        let mut row = Vec::with_capacity(space.order());
        for a in space.elements() {
            let y = e.conj(s.apply(x), i.apply(a));
            row.push(preimage[y].ok_or(GroupError::NotClosed { b: x, a })?);
        }
        rows.push(row);
    }
    Ok(GroupAction::from_fn(b, space, |x, a| rows[x][a]))
}

/// A split extension `0 → A →i E →p B → 0` with section `s`.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    pub group: GroupRef,
    pub i: GroupHom,
    pub p: GroupHom,
    pub s: GroupHom,
}

/// `A⋊A` under conjugation with `i(a) = (a, 0)`, `p(a, a₁) = a₁`, `s(a) = (0, a)`.
pub fn conjugation_extension(a: &GroupRef) -> Result<SplitExtension, GroupError> {
    let sd = semidirect_product(&GroupAction::conjugation(a.clone()))?;
    Ok(SplitExtension { group: sd.group, i: sd.inj_space, p: sd.proj, s: sd.inj_actor })
}

/// The pullback `dom(f) ×_{f,g} dom(g)` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub group: GroupRef,
    pub pi1: GroupHom,
    pub pi2: GroupHom,
    position: Vec<Option<usize>>,
}

impl Pullback {
    /// The pair `(x, y)` for a pullback element.
    pub fn pair(&self, z: usize) -> (usize, usize) {
        (self.pi1.apply(z), self.pi2.apply(z))
    }

    /// The pullback element for a pair, if `f(x) = g(y)`.
    pub fn element(&self, x: usize, y: usize) -> Option<usize> {
        self.position.get(x * self.pi2.cod().order() + y).copied().flatten()
    }
}

/// Pairs `(x, y)` with `f(x) = g(y)`, listed in lexicographic order.
pub fn pullback_group(f: &GroupHom, g: &GroupHom) -> Result<Pullback, GroupError> {
    if **f.cod() != **g.cod() {
        return Err(GroupError::CarrierMismatch("pullback codomains"));
    }
    let (x, y) = (f.dom().clone(), g.dom().clone());
    check_product_size(x.order() * y.order())?;
    let ny = y.order();
    let mut position = vec![None; x.order() * ny];
    let mut members = Vec::new();
    for (z, slot) in position.iter_mut().enumerate() {
        if f.apply(z / ny) == g.apply(z % ny) {
            *slot = Some(members.len());
            members.push(z);
        }
    }
    let group = Arc::new(FiniteGroup::from_fn(members.len(), |i, j| {
        let (u, v) = (members[i], members[j]);
        position[x.op(u / ny, v / ny) * ny + y.op(u % ny, v % ny)].expect("pullback is closed")
    }));
    let pi1 = GroupHom::from_fn(group.clone(), x, |z| members[z] / ny);
    let pi2 = GroupHom::from_fn(group.clone(), y, |z| members[z] % ny);
    Ok(Pullback { group, pi1, pi2, position })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::iso_search;

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn trivial_action_gives_direct_product_exactly() {
        for (m, n) in [(2, 2), (3, 2), (2, 4)] {
            let sd = semidirect_product(&GroupAction::trivial(z(n), z(m))).unwrap();
            assert_eq!(*sd.group, direct_product(&z(m), &z(n)));
        }
        let sd = semidirect_product(&GroupAction::trivial(z(2), z(2))).unwrap();
        assert!(iso_search(&sd.group, &FiniteGroup::klein4()).is_some());
        assert_eq!(sd.proj.after(&sd.inj_actor).unwrap(), GroupHom::identity(z(2)));
    }

    #[test]
    fn inversion_action_gives_sym3() {
        let act = GroupAction::new(z(2), z(3), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        let sd = semidirect_product(&act).unwrap();
        assert_eq!(sd.group.order(), 6);
        assert!(!sd.group.is_abelian());
        assert!(iso_search(&sd.group, &FiniteGroup::sym3()).is_some());
    }

    #[test]
    fn conjugation_in_abelian_group_is_trivial() {
        let sd = semidirect_product(&GroupAction::conjugation(z(2))).unwrap();
        assert_eq!(sd.group.order(), 4);
        assert!(sd.group.is_abelian());
    }

    #[test]
    fn derived_action_of_klein_four_is_trivial() {
        let e = Arc::new(FiniteGroup::klein4());
        let i = GroupHom::new(z(2), e.clone(), vec![0, 2]).unwrap();
        let p = GroupHom::new(e.clone(), z(2), vec![0, 1, 0, 1]).unwrap();
        let s = GroupHom::new(z(2), e.clone(), vec![0, 1]).unwrap();
        assert!(derived_action(&e, &i, &p, &s).unwrap().is_trivial());
    }

    #[test]
    fn derived_action_inside_sym3() {
        // A3 = {0,3,4}, transposition 1, sign map to Z2
        let e = Arc::new(FiniteGroup::sym3());
        let i = GroupHom::new(z(3), e.clone(), vec![0, 3, 4]).unwrap();
        let p = GroupHom::new(e.clone(), z(2), vec![0, 1, 1, 0, 0, 1]).unwrap();
        let s = GroupHom::new(z(2), e.clone(), vec![0, 1]).unwrap();
        let act = derived_action(&e, &i, &p, &s).unwrap();
        assert_eq!(act.rows(), vec![vec![0, 1, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn derived_action_errors() {
        let e = Arc::new(FiniteGroup::klein4());
        let i = GroupHom::new(z(2), e.clone(), vec![0, 2]).unwrap();
        let p = GroupHom::new(e.clone(), z(2), vec![0, 1, 0, 1]).unwrap();
        let bad_s = GroupHom::zero(z(2), e.clone());
        assert_eq!(derived_action(&e, &i, &p, &bad_s), Err(GroupError::NotSplit { b: 1 }));
        let s = GroupHom::new(z(2), e.clone(), vec![0, 1]).unwrap();
        let bad_i = GroupHom::new(z(2), e.clone(), vec![0, 3]).unwrap();
        assert_eq!(derived_action(&e, &bad_i, &p, &s), Err(GroupError::NotExact { x: 2 }));
    }

    #[test]
    fn conjugation_extension_recovers_conjugation() {
        let s3 = Arc::new(FiniteGroup::sym3());
        let ext = conjugation_extension(&s3).unwrap();
        assert_eq!(ext.group.order(), 36);
        let act = derived_action(&ext.group, &ext.i, &ext.p, &ext.s).unwrap();
        for g in s3.elements() {
            for a in s3.elements() {
                assert_eq!(act.apply(g, a), s3.conj(g, a));
            }
        }
        assert!(!act.is_trivial());
        for n in [2, 3] {
            let ext = conjugation_extension(&z(n)).unwrap();
            assert_eq!(ext.group.order(), n * n);
            assert!(derived_action(&ext.group, &ext.i, &ext.p, &ext.s).unwrap().is_trivial());
        }
    }

    #[test]
    fn pullback_examples() {
        let id = GroupHom::identity(z(2));
        let pb = pullback_group(&id, &id).unwrap();
        let encoded =
            |pb: &Pullback| (0..pb.group.order()).map(|z| pb.pair(z).0 * 2 + pb.pair(z).1).collect::<Vec<_>>();
        assert_eq!(encoded(&pb), vec![0, 3]);

        let red = GroupHom::new(z(4), z(2), vec![0, 1, 0, 1]).unwrap();
        let pb = pullback_group(&red, &id).unwrap();
        // brute force over the 8 pairs of Z4×Z2
        let expected: Vec<usize> = (0..4)
            .flat_map(|x| (0..2).map(move |y| (x, y)))
            .filter(|&(x, y)| x % 2 == y)
            .map(|(x, y)| 2 * x + y)
            .collect();
        assert_eq!(encoded(&pb), expected);
        assert!(FiniteGroup::from_table(pb.group.rows()).is_ok());
        assert_eq!(pb.group.order(), 4);

        let zero = GroupHom::zero(z(2), z(2));
        assert_eq!(pullback_group(&zero, &zero).unwrap().group.order(), 4);
        assert!(pullback_group(&red, &GroupHom::identity(z(3))).is_err());
    }
}
