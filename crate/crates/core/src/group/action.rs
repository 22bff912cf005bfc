use std::fmt;

use itertools::Itertools;

use crate::laws::{self, Law, Witnessed};

use super::{GroupError, GroupHom, GroupRef, Subgroup};

/// A left action of `actor` on `space` by automorphisms; `apply(b, a)` is `b·a`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAction {
    actor: GroupRef,
    space: GroupRef,
    table: Vec<usize>,
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupAction").field("table", &self.rows()).finish()
    }
}

fn action_laws<'a>(actor: &'a GroupRef, space: &'a GroupRef, rows: &'a [Vec<usize>]) -> Vec<Law<'a>> {
    let (nb, na) = (actor.order(), space.order());
    let act = move |b: usize, a: usize| rows[b][a];
    vec![
        Law::new("action.range", vec![nb, na], move |t| rows[t[0]][t[1]] < na),
        Law::new("action.identity", vec![na], move |t| act(0, t[0]) == t[0]),
        Law::new("action.automorphism", vec![nb, na, na], move |t| {
            act(t[0], space.op(t[1], t[2])) == space.op(act(t[0], t[1]), act(t[0], t[2]))
        }),
        Law::new("action.compose", vec![nb, nb, na], move |t| {
            act(actor.op(t[0], t[1]), t[2]) == act(t[0], act(t[1], t[2]))
        }),
    ]
}

fn check_shape(actor: &GroupRef, space: &GroupRef, rows: &[Vec<usize>]) -> Result<(), GroupError> {
    if rows.len() != actor.order() || rows.iter().any(|r| r.len() != space.order()) {
        return Err(GroupError::ActionShape { rows: actor.order(), cols: space.order() });
    }
    Ok(())
}

impl GroupAction {
    /// Validate a full action table, `rows[b][a] = b·a`.
    pub fn new(actor: GroupRef, space: GroupRef, rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        check_shape(&actor, &space, &rows)?;
        laws::scan(&action_laws(&actor, &space, &rows)).map_err(GroupError::from_violation)?;
        let table = rows.into_iter().flatten().collect();
        Ok(GroupAction { actor, space, table })
    }

    /// True if the law named by `err` still fails at its witness on the raw table.
    pub fn reproduces(actor: &GroupRef, space: &GroupRef, rows: &[Vec<usize>], err: &GroupError) -> bool {
        if check_shape(actor, space, rows).is_err() {
            return matches!(err, GroupError::ActionShape { .. });
        }
        laws::holds_at(&action_laws(actor, space, rows), &err.tag(), &err.witness()) == Some(false)
    }

    pub(crate) fn from_fn(actor: GroupRef, space: GroupRef, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = actor.elements().cartesian_product(space.elements()).map(|(b, a)| f(b, a)).collect();
        GroupAction { actor, space, table }
    }

    pub fn trivial(actor: GroupRef, space: GroupRef) -> Self {
        Self::from_fn(actor, space, |_, a| a)
    }

    /// Conjugation `g·x = g∘x∘g⁻¹` of a group on itself.
    pub fn conjugation(g: GroupRef) -> Self {
        let h = g.clone();
        Self::from_fn(g.clone(), g, move |x, y| h.conj(x, y))
    }

    pub fn actor(&self) -> &GroupRef {
        &self.actor
    }

    pub fn space(&self) -> &GroupRef {
        &self.space
    }

    #[inline]
    pub fn apply(&self, b: usize, a: usize) -> usize {
        self.table[b * self.space.order() + a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.space.order().max(1)).map(<[usize]>::to_vec).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.actor.elements().cartesian_product(self.space.elements()).all(|(b, a)| self.apply(b, a) == a)
    }

    /// The action of `f.dom()` given by `x·a = f(x)·a`.
    pub fn pulled_back(&self, f: &GroupHom) -> Result<Self, GroupError> {
        if **f.cod() != *self.actor {
            return Err(GroupError::CarrierMismatch("pullback of action"));
        }
        Ok(Self::from_fn(f.dom().clone(), self.space.clone(), |x, a| self.apply(f.apply(x), a)))
    }

    /// Restriction to subgroups of actor and space, relabelled through
    /// [`Subgroup::as_group`]. Fails with `NotClosed` if the space subgroup
    /// is not invariant under the actor subgroup.
    pub fn restricted(
        &self,
        actor_sub: &Subgroup,
        actor_group: GroupRef,
        space_sub: &Subgroup,
        space_group: GroupRef,
    ) -> Result<Self, GroupError> {
        let mut table = Vec::with_capacity(actor_sub.order() * space_sub.order());
        for &b in actor_sub.members() {
            for &a in space_sub.members() {
                let img = self.apply(b, a);
                table.push(space_sub.position(img).ok_or(GroupError::NotClosed { b, a })?);
            }
        }
        Ok(GroupAction { actor: actor_group, space: space_group, table })
    }

    /// The fixed points of the whole actor.
    pub fn fixed_points(&self) -> usize {
        self.space.elements().filter(|&a| self.actor.elements().all(|b| self.apply(b, a) == a)).count()
    }
}
