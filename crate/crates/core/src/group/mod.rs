//! Finite groups as Cayley tables over `0..order`, with index 0 the identity.

mod action;
mod construct;
mod error;
mod hom;
mod search;

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::laws::{self, Law};
use crate::limits;

pub use action::GroupAction;
pub use construct::{
    conjugation_extension, derived_action, direct_product, pullback_group, semidirect_product, Pullback,
    SemidirectProduct, SplitExtension,
};
pub use error::GroupError;
pub use hom::{hom_image, hom_kernel, GroupHom};
pub use search::{automorphism_group, generators, iso_search, AutomorphismGroup};

/// Shared handle to a validated group.
pub type GroupRef = Arc<FiniteGroup>;

/// A validated finite group. `op(x, y)` is `x∘y`.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    name: Option<String>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.name).field("order", &self.order).finish()
    }
}

fn group_laws(rows: &[Vec<usize>]) -> Vec<Law<'_>> {
    let n = rows.len();
    let op = move |x: usize, y: usize| rows[x][y];
    vec![
        Law::new("range", vec![n, n], move |t| rows[t[0]][t[1]] < n),
        Law::new("identity", vec![n], move |t| op(0, t[0]) == t[0] && op(t[0], 0) == t[0]),
        Law::new("inverse", vec![n], move |t| (0..n).any(|y| op(t[0], y) == 0 && op(y, t[0]) == 0)),
        Law::new("associativity", vec![n, n, n], move |t| op(op(t[0], t[1]), t[2]) == op(t[0], op(t[1], t[2]))),
    ]
}

fn check_square(rows: &[Vec<usize>]) -> Result<(), GroupError> {
    if rows.is_empty() {
        return Err(GroupError::Empty);
    }
    if let Some(row) = rows.iter().position(|r| r.len() != rows.len()) {
        return Err(GroupError::NotSquare { row });
    }
    Ok(())
}

impl FiniteGroup {
    /// Validate a Cayley table. Rejects tables larger than the size limit.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_table_bounded(rows, limits::size_limit())
    }

    /// Validate a Cayley table against an explicit bound on the order.
    pub fn from_table_bounded(rows: Vec<Vec<usize>>, limit: usize) -> Result<Self, GroupError> {
        check_square(&rows)?;
        if rows.len() > limit {
            return Err(GroupError::SizeLimit { order: rows.len(), limit });
        }
        laws::scan(&group_laws(&rows)).map_err(GroupError::from_violation)?;
        Ok(Self::from_rows_unchecked(rows))
    }

    /// Re-evaluates the law behind `err` on a raw table; true if it still fails there.
    pub fn reproduces(rows: &[Vec<usize>], err: &GroupError) -> bool {
        use crate::laws::Witnessed;
        if check_square(rows).is_err() {
            return matches!(err, GroupError::Empty | GroupError::NotSquare { .. });
        }
        laws::holds_at(&group_laws(rows), &err.tag(), &err.witness()) == Some(false)
    }

    fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        let n = rows.len();
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![0; order];
        for x in 0..order {
            inverses[x] = (0..order).find(|&y| table[x * order + y] == 0).expect("inverse exists");
        }
        FiniteGroup { order, table, inverses, name: None }
    }

    /// Build from an operation closure over `0..order`. The caller guarantees group axioms.
    pub(crate) fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..order).cartesian_product(0..order).map(|(x, y)| op(x, y)).collect();
        Self::from_flat(order, table)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x]
    }

    /// `g∘x∘g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.op(self.op(g, x), self.inv(g))
    }

    /// `x∘y⁻¹`
    #[inline]
    pub fn div(&self, x: usize, y: usize) -> usize {
        self.op(x, self.inv(y))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// First pair `(x, y)` in lexicographic order with `x∘y ≠ y∘x`.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        self.elements().cartesian_product(self.elements()).find(|&(x, y)| self.op(x, y) != self.op(y, x))
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.op(y, x);
            k += 1;
        }
        k
    }

    pub fn trivial() -> Self {
        Self::from_flat(1, vec![0]).with_name("z1")
    }

    /// Cyclic group of order `n`, element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        Self::from_fn(n, |x, y| (x + y) % n).with_name(format!("z{n}"))
    }

    /// Symmetric group on `k` points; elements are permutations in
    /// lexicographic order and `(x∘y)(i) = x(y(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
        let n = perms.len();
        let op = |x: usize, y: usize| {
            let composed: Vec<usize> = (0..k).map(|i| perms[x][perms[y][i]]).collect();
            perms.iter().position(|p| *p == composed).expect("closed")
        };
        Self::from_fn(n, op).with_name(format!("sym{k}"))
    }

    pub fn sym3() -> Self {
        Self::symmetric(3)
    }

    pub fn klein4() -> Self {
        direct_product(&Self::cyclic(2), &Self::cyclic(2)).with_name("klein4")
    }

    /// Dihedral group of order 8; index `4e + k` is `r^k s^e` with `s r s = r⁻¹`.
    pub fn dih4() -> Self {
        Self::from_fn(8, |x, y| {
            let (k1, e1) = (x % 4, x / 4);
            let (k2, e2) = (y % 4, y / 4);
            let k = if e1 == 0 { k1 + k2 } else { k1 + 4 - k2 } % 4;
            4 * ((e1 + e2) % 2) + k
        })
        .with_name("dih4")
    }

    /// Quaternion group; indices are `1, -1, i, -i, j, -j, k, -k`.
    pub fn quat8() -> Self {
        // unit products over {1, i, j, k} as (sign, unit)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        Self::from_fn(8, |x, y| {
            let (u1, n1) = (x / 2, x % 2 == 1);
            let (u2, n2) = (y / 2, y % 2 == 1);
            let (neg, u) = UNIT[u1][u2];
            2 * u + usize::from(neg ^ n1 ^ n2)
        })
        .with_name("quat8")
    }
}

/// A subgroup given by its sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: GroupRef,
    members: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Subgroup {
    /// Validate a subset; it must contain the identity and be closed under the operation.
    pub fn new(ambient: GroupRef, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if let Some(&x) = members.iter().find(|&&x| x >= ambient.order()) {
            return Err(GroupError::NotSubgroup { x, y: x });
        }
        if members.first() != Some(&0) {
            return Err(GroupError::NotSubgroup { x: 0, y: 0 });
        }
        let sub = Self::from_sorted(ambient, members);
        for &x in &sub.members {
            for &y in &sub.members {
                if !sub.contains(sub.ambient.op(x, y)) {
                    return Err(GroupError::NotSubgroup { x, y });
                }
            }
        }
        Ok(sub)
    }

    fn from_sorted(ambient: GroupRef, members: Vec<usize>) -> Self {
        let mut position = vec![None; ambient.order()];
        for (i, &m) in members.iter().enumerate() {
            position[m] = Some(i);
        }
        Subgroup { ambient, members, position }
    }

    /// Closure of a generating set.
    pub fn generated(ambient: GroupRef, gens: &[usize]) -> Self {
        let mut inside = vec![false; ambient.order()];
        inside[0] = true;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = ambient.op(x, g);
                if !inside[y] {
                    inside[y] = true;
                    frontier.push(y);
                }
            }
        }
        let members = (0..ambient.order()).filter(|&x| inside[x]).collect();
        Self::from_sorted(ambient, members)
    }

    pub fn whole(ambient: GroupRef) -> Self {
        let members = ambient.elements().collect();
        Self::from_sorted(ambient, members)
    }

    pub fn trivial(ambient: GroupRef) -> Self {
        Self::from_sorted(ambient, vec![0])
    }

    pub(crate) fn from_predicate(ambient: GroupRef, keep: impl Fn(usize) -> bool) -> Self {
        let members = ambient.elements().filter(|&x| keep(x)).collect();
        Self::from_sorted(ambient, members)
    }

    pub fn ambient(&self) -> &GroupRef {
        &self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position.get(x).is_some_and(Option::is_some)
    }

    /// Index of an ambient element inside [`Subgroup::as_group`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    /// The subgroup as a group in its own right, member `members[i]` becoming `i`,
    /// together with the inclusion into the ambient group.
    pub fn as_group(&self) -> (GroupRef, GroupHom) {
        let n = self.members.len();
        let g = FiniteGroup::from_fn(n, |i, j| {
            self.position(self.ambient.op(self.members[i], self.members[j])).expect("closed")
        });
        let g = Arc::new(g);
        let inc = GroupHom::new_unchecked(g.clone(), self.ambient.clone(), self.members.clone());
        (g, inc)
    }

    /// Normality check by conjugating every member by every ambient element.
    /// The first failure in `(g, s)` order is returned as the witness.
    pub fn is_normal(&self) -> Result<(), GroupError> {
        let g = &self.ambient;
        let laws =
            [Law::new("normal", vec![g.order(), self.order()], |t| self.contains(g.conj(t[0], self.members[t[1]])))];
        laws::scan(&laws)
            .map(|_| ())
            .map_err(|v| GroupError::NotNormal { g: v.witness[0], s: self.members[v.witness[1]] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_validates() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse { x: 1 });
        assert!(FiniteGroup::reproduces(&[vec![0, 1], vec![1, 1]], &err));
    }

    #[test]
    fn range_and_shape_errors() {
        assert_eq!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]), Err(GroupError::OutOfRange { x: 0, y: 1 }));
        assert_eq!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]]), Err(GroupError::NotSquare { row: 1 }));
        assert_eq!(FiniteGroup::from_table(vec![]), Err(GroupError::Empty));
        assert_eq!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]), Err(GroupError::NoIdentity { x: 0 }));
    }

    #[test]
    fn non_associative_table() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn size_limit_applies() {
        let rows = FiniteGroup::cyclic(5).rows();
        assert_eq!(FiniteGroup::from_table_bounded(rows, 4), Err(GroupError::SizeLimit { order: 5, limit: 4 }));
    }

    #[test]
    fn builtin_tables_are_groups() {
        for g in [
            FiniteGroup::sym3(),
            FiniteGroup::klein4(),
            FiniteGroup::dih4(),
            FiniteGroup::quat8(),
            FiniteGroup::cyclic(7),
        ] {
            let again = FiniteGroup::from_table(g.rows()).unwrap();
            assert_eq!(again, g);
        }
        assert!(!FiniteGroup::sym3().is_abelian());
        assert!(!FiniteGroup::dih4().is_abelian());
        assert!(!FiniteGroup::quat8().is_abelian());
        assert!(FiniteGroup::klein4().is_abelian());
    }

    #[test]
    fn sym3_associativity_by_hand() {
        let g = FiniteGroup::sym3();
        let mut count = 0;
        for x in g.elements() {
            for y in g.elements() {
                for z in g.elements() {
                    assert_eq!(g.op(g.op(x, y), z), g.op(x, g.op(y, z)));
                    count += 1;
                }
            }
        }
        assert_eq!(count, 216);
    }

    #[test]
    fn quat8_element_orders() {
        let q = FiniteGroup::quat8();
        let orders: Vec<usize> = q.elements().map(|x| q.element_order(x)).collect();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn subgroups_and_normality() {
        let s3 = Arc::new(FiniteGroup::sym3());
        let a3 = Subgroup::generated(s3.clone(), &[3]);
        assert_eq!(a3.members(), &[0, 3, 4]);
        assert_eq!(a3.is_normal(), Ok(()));
        let t = Subgroup::generated(s3.clone(), &[1]);
        assert_eq!(t.members(), &[0, 1]);
        let err = t.is_normal().unwrap_err();
        let GroupError::NotNormal { g, s } = err else { panic!() };
        assert!(!t.contains(s3.conj(g, s)));
        assert_eq!(Subgroup::new(s3.clone(), vec![0, 1, 2]), Err(GroupError::NotSubgroup { x: 1, y: 2 }));
    }
}
