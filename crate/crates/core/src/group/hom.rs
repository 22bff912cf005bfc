use std::fmt;

use crate::laws::{self, Law, Witnessed};

use super::{GroupError, GroupRef, Subgroup};

/// A homomorphism stored as the image of every domain element.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    dom: GroupRef,
    cod: GroupRef,
    map: Vec<usize>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({:?})", self.map)
    }
}

fn hom_laws<'a>(dom: &'a GroupRef, cod: &'a GroupRef, map: &'a [usize]) -> Vec<Law<'a>> {
    let n = dom.order();
    vec![
        Law::new("hom.range", vec![n], move |t| map[t[0]] < cod.order()),
        Law::new("hom", vec![n, n], move |t| map[dom.op(t[0], t[1])] == cod.op(map[t[0]], map[t[1]])),
    ]
}

impl GroupHom {
    pub fn new(dom: GroupRef, cod: GroupRef, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != dom.order() {
            return Err(GroupError::MapLength { expected: dom.order(), found: map.len() });
        }
        laws::scan(&hom_laws(&dom, &cod, &map)).map_err(GroupError::from_violation)?;
        Ok(GroupHom { dom, cod, map })
    }

    /// True if the law named by `err` still fails at its witness on the raw map.
    pub fn reproduces(dom: &GroupRef, cod: &GroupRef, map: &[usize], err: &GroupError) -> bool {
        if map.len() != dom.order() {
            return matches!(err, GroupError::MapLength { .. });
        }
        laws::holds_at(&hom_laws(dom, cod, map), &err.tag(), &err.witness()) == Some(false)
    }

    pub(crate) fn new_unchecked(dom: GroupRef, cod: GroupRef, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), dom.order());
        GroupHom { dom, cod, map }
    }

    pub(crate) fn from_fn(dom: GroupRef, cod: GroupRef, f: impl Fn(usize) -> usize) -> Self {
        let map = dom.elements().map(f).collect();
        Self::new_unchecked(dom, cod, map)
    }

    pub fn identity(g: GroupRef) -> Self {
        Self::from_fn(g.clone(), g, |x| x)
    }

    pub fn zero(dom: GroupRef, cod: GroupRef) -> Self {
        Self::from_fn(dom, cod, |_| 0)
    }

    pub fn dom(&self) -> &GroupRef {
        &self.dom
    }

    pub fn cod(&self) -> &GroupRef {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &GroupHom) -> Result<GroupHom, GroupError> {
        if **inner.cod() != *self.dom {
            return Err(GroupError::CarrierMismatch("composition"));
        }
        Ok(Self::from_fn(inner.dom.clone(), self.cod.clone(), |x| self.apply(inner.apply(x))))
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_predicate(self.dom.clone(), |x| self.map[x] == 0)
    }

    pub fn image(&self) -> Subgroup {
        let mut hit = vec![false; self.cod.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        Subgroup::from_predicate(self.cod.clone(), |y| hit[y])
    }

    /// First colliding pair, if any.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let mut seen = vec![None; self.cod.order()];
        for (x, &y) in self.map.iter().enumerate() {
            if let Some(first) = seen[y] {
                return Some((first, x));
            }
            seen[y] = Some(x);
        }
        None
    }

    /// First codomain element not hit, if any.
    pub fn missed(&self) -> Option<usize> {
        let img = self.image();
        self.cod.elements().find(|&y| !img.contains(y))
    }

    pub fn is_injective(&self) -> bool {
        self.collision().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.missed().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.dom.order() == self.cod.order()
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.cod.order()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::new_unchecked(self.cod.clone(), self.dom.clone(), inv))
    }

    /// Corestriction to a subgroup of the codomain containing the image,
    /// relabelled through [`Subgroup::as_group`].
    pub fn corestrict(&self, target: &Subgroup, target_group: GroupRef) -> Option<GroupHom> {
        let map = self.map.iter().map(|&y| target.position(y)).collect::<Option<Vec<_>>>()?;
        Some(Self::new_unchecked(self.dom.clone(), target_group, map))
    }

    /// Restriction to a subgroup of the domain (relabelled).
    pub fn restrict(&self, source: &Subgroup, source_group: GroupRef) -> GroupHom {
        let map = source.members().iter().map(|&x| self.map[x]).collect();
        Self::new_unchecked(source_group, self.cod.clone(), map)
    }
}

/// Kernel of a homomorphism.
pub fn hom_kernel(f: &GroupHom) -> Subgroup {
    f.kernel()
}

/// Image of a homomorphism.
pub fn hom_image(f: &GroupHom) -> Subgroup {
    f.image()
}
