//! Generator-image backtracking for automorphisms and isomorphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::limits;

use super::{FiniteGroup, GroupAction, GroupError, GroupHom, GroupRef};

/// Greedy generating set: walk elements in index order and keep any element
/// not already in the span of the ones kept.
pub fn generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![false; g.order()];
    span[0] = true;
    for x in g.elements() {
        if span[x] {
            continue;
        }
        gens.push(x);
        close(g, &gens, &mut span);
    }
    gens
}

fn close(g: &FiniteGroup, gens: &[usize], span: &mut [bool]) {
    let mut frontier: Vec<usize> = (0..g.order()).filter(|&x| span[x]).collect();
    while let Some(x) = frontier.pop() {
        for &s in gens {
            for y in [g.op(x, s), g.op(s, x)] {
                if !span[y] {
                    span[y] = true;
                    frontier.push(y);
                }
            }
        }
    }
}

/// Extend generator images to a partial map on the span of `gens`, requiring
/// it to be an injective homomorphism. `None` on any inconsistency.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = Some(0);
    used[0] = true;
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        let fx = map[x].expect("assigned");
        for (&s, &fs) in gens.iter().zip(images) {
            let y = g.op(x, s);
            let fy = h.op(fx, fs);
            match map[y] {
                Some(v) if v != fy => return None,
                Some(_) => {}
                None => {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = Some(fy);
                    frontier.push(y);
                }
            }
        }
    }
    Some(map)
}

/// Visit injective homomorphisms `G → H` determined by generator images, in
/// lexicographic order of the image tuple. Stops when `visit` returns false.
fn search_embeddings(g: &FiniteGroup, h: &FiniteGroup, mut visit: impl FnMut(Vec<usize>) -> bool) {
    let gens = generators(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let k = g.element_order(s);
            h.elements().filter(|&y| h.element_order(y) == k).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    fn go(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> bool {
        let depth = images.len();
        if depth == gens.len() {
            let map = extend(g, h, gens, images).expect("checked at previous depth");
            return visit(map.into_iter().map(|v| v.expect("generators span")).collect());
        }
        for &c in &candidates[depth] {
            images.push(c);
            let ok = extend(g, h, &gens[..=depth], images).is_some();
            if ok && !go(g, h, gens, candidates, images, visit) {
                return false;
            }
            images.pop();
        }
        true
    }
    go(g, h, &gens, &candidates, &mut images, &mut visit);
}

/// First isomorphism found by generator-image backtracking, if any.
pub fn iso_search(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let mut found = None;
    search_embeddings(g, h, |map| {
        found = Some(map);
        false
    });
    found
}

/// `Aut(G)` with its evaluation action on `G`.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub group: GroupRef,
    /// Automorphism `k` as its map array; sorted lexicographically, identity first.
    pub maps: Vec<Vec<usize>>,
    /// `ψ·g = ψ(g)`
    pub action: GroupAction,
}

impl AutomorphismGroup {
    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(map)).ok()
    }
}

/// All automorphisms of `G`, composed as `(ψ∘φ)(g) = ψ(φ(g))`.
pub fn automorphism_group(g: &GroupRef) -> Result<AutomorphismGroup, GroupError> {
    let limit = limits::size_limit();
    if g.order() > limit {
        return Err(GroupError::SizeLimit { order: g.order(), limit });
    }
    let mut maps = Vec::new();
    search_embeddings(g, g, |m| {
        maps.push(m);
        true
    });
    maps.sort();
    let index: HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let n = maps.len();
    let table: Vec<usize> = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .map(|(p, q)| {
            let composed: Vec<usize> = maps[q].iter().map(|&x| maps[p][x]).collect();
            index[composed.as_slice()]
        })
        .collect();
    let aut = Arc::new(FiniteGroup::from_flat(n, table));
    let action = GroupAction::from_fn(aut.clone(), g.clone(), |p, x| maps[p][x]);
    Ok(AutomorphismGroup { group: aut, maps, action })
}

impl GroupHom {
    /// Wrap a search result as a homomorphism.
    pub fn isomorphism(g: &GroupRef, h: &GroupRef) -> Option<GroupHom> {
        iso_search(g, h).map(|m| GroupHom::new_unchecked(g.clone(), h.clone(), m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;

    fn z(n: usize) -> GroupRef {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn aut_orders() {
        assert_eq!(automorphism_group(&z(2)).unwrap().group.order(), 1);
        assert_eq!(automorphism_group(&z(3)).unwrap().group.order(), 2);
        assert_eq!(automorphism_group(&Arc::new(FiniteGroup::sym3())).unwrap().group.order(), 6);
        assert_eq!(automorphism_group(&Arc::new(FiniteGroup::klein4())).unwrap().group.order(), 6);
        assert_eq!(automorphism_group(&Arc::new(FiniteGroup::dih4())).unwrap().group.order(), 8);
        assert_eq!(automorphism_group(&Arc::new(FiniteGroup::quat8())).unwrap().group.order(), 24);
        assert_eq!(automorphism_group(&z(8)).unwrap().group.order(), 4);
    }

    #[test]
    fn aut_identity_first_and_valid() {
        let s3 = Arc::new(FiniteGroup::sym3());
        let aut = automorphism_group(&s3).unwrap();
        assert_eq!(aut.maps[0], (0..6).collect::<Vec<_>>());
        FiniteGroup::from_table(aut.group.rows()).unwrap();
        GroupAction::new(aut.group.clone(), s3, aut.action.rows()).unwrap();
    }

    #[test]
    fn iso_examples() {
        assert!(iso_search(&FiniteGroup::cyclic(4), &FiniteGroup::klein4()).is_none());
        let z2z3 = direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        assert!(iso_search(&FiniteGroup::cyclic(6), &z2z3).is_some());
        let q = FiniteGroup::quat8();
        assert_eq!(iso_search(&q, &q), Some((0..8).collect()));
        assert!(iso_search(&q, &FiniteGroup::dih4()).is_none());
    }

    #[test]
    fn generators_span() {
        let g = FiniteGroup::quat8();
        let gens = generators(&g);
        assert_eq!(gens, vec![1, 2, 4]);
    }
}
