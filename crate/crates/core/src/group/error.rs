use thiserror::Error;

use crate::laws::{Violation, Witnessed};

/// Failures raised while validating groups, homomorphisms, actions and the
/// constructions built from them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group table is empty")]
    Empty,
    #[error("group table is not square (row {row})")]
    NotSquare { row: usize },
    #[error("order {order} exceeds the size limit {limit}")]
    SizeLimit { order: usize, limit: usize },
    #[error("table entry ({x}, {y}) is out of range")]
    OutOfRange { x: usize, y: usize },
    #[error("index 0 is not a two-sided identity (fails at {x})")]
    NoIdentity { x: usize },
    #[error("element {x} has no inverse")]
    NoInverse { x: usize },
    #[error("operation is not associative at ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("map has length {found}, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("map sends {x} outside the codomain")]
    MapOutOfRange { x: usize },
    #[error("map is not a homomorphism at ({x}, {y})")]
    NotHomomorphism { x: usize, y: usize },
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(&'static str),
    #[error("action table has the wrong shape (expected {rows}x{cols})")]
    ActionShape { rows: usize, cols: usize },
    #[error("the identity does not act trivially on {a}")]
    ActionIdentity { a: usize },
    #[error("{b} does not act by a homomorphism at ({a}, {a2})")]
    ActionNotHom { b: usize, a: usize, a2: usize },
    #[error("action is not compatible with the product at ({b}, {b2}, {a})")]
    ActionCompose { b: usize, b2: usize, a: usize },
    #[error("p∘s is not the identity at {b}")]
    NotSplit { b: usize },
    #[error("map is not injective: {x} and {y} collide")]
    NotInjective { x: usize, y: usize },
    #[error("map is not surjective: {b} is missed")]
    NotSurjective { b: usize },
    #[error("image of i differs from kernel of p at {x}")]
    NotExact { x: usize },
    #[error("s({b}) conjugates i({a}) outside the image of i")]
    NotClosed { b: usize, a: usize },
    #[error("subset is not a subgroup (fails at {x}, {y})")]
    NotSubgroup { x: usize, y: usize },
    #[error("subgroup is not normal: conjugating {s} by {g} leaves it")]
    NotNormal { g: usize, s: usize },
}

impl GroupError {
    pub(crate) fn from_violation(v: Violation) -> Self {
        let w = &v.witness;
        match v.tag {
            "range" => GroupError::OutOfRange { x: w[0], y: w[1] },
            "identity" => GroupError::NoIdentity { x: w[0] },
            "inverse" => GroupError::NoInverse { x: w[0] },
            "associativity" => GroupError::NotAssociative { x: w[0], y: w[1], z: w[2] },
            "hom.range" => GroupError::MapOutOfRange { x: w[0] },
            "hom" => GroupError::NotHomomorphism { x: w[0], y: w[1] },
            "action.range" => GroupError::OutOfRange { x: w[0], y: w[1] },
            "action.identity" => GroupError::ActionIdentity { a: w[0] },
            "action.automorphism" => GroupError::ActionNotHom { b: w[0], a: w[1], a2: w[2] },
            "action.compose" => GroupError::ActionCompose { b: w[0], b2: w[1], a: w[2] },
            other => unreachable!("unmapped group law {other}"),
        }
    }
}

impl Witnessed for GroupError {
    fn tag(&self) -> String {
        match self {
            GroupError::Empty => "empty",
            GroupError::NotSquare { .. } => "shape",
            GroupError::SizeLimit { .. } => "size_limit",
            GroupError::OutOfRange { .. } => "range",
            GroupError::NoIdentity { .. } => "identity",
            GroupError::NoInverse { .. } => "inverse",
            GroupError::NotAssociative { .. } => "associativity",
            GroupError::MapLength { .. } => "hom.length",
            GroupError::MapOutOfRange { .. } => "hom.range",
            GroupError::NotHomomorphism { .. } => "hom",
            GroupError::CarrierMismatch(_) => "carrier",
            GroupError::ActionShape { .. } => "action.shape",
            GroupError::ActionIdentity { .. } => "action.identity",
            GroupError::ActionNotHom { .. } => "action.automorphism",
            GroupError::ActionCompose { .. } => "action.compose",
            GroupError::NotSplit { .. } => "not_split",
            GroupError::NotInjective { .. } => "not_injective",
            GroupError::NotSurjective { .. } => "not_surjective",
            GroupError::NotExact { .. } => "not_exact",
            GroupError::NotClosed { .. } => "not_closed",
            GroupError::NotSubgroup { .. } => "not_subgroup",
            GroupError::NotNormal { .. } => "not_normal",
        }
        .to_string()
    }

    fn witness(&self) -> Vec<usize> {
        match *self {
            GroupError::Empty | GroupError::CarrierMismatch(_) => vec![],
            GroupError::NotSquare { row } => vec![row],
            GroupError::SizeLimit { order, limit } => vec![order, limit],
            GroupError::OutOfRange { x, y } => vec![x, y],
            GroupError::NoIdentity { x } => vec![x],
            GroupError::NoInverse { x } => vec![x],
            GroupError::NotAssociative { x, y, z } => vec![x, y, z],
            GroupError::MapLength { expected, found } => vec![expected, found],
            GroupError::MapOutOfRange { x } => vec![x],
            GroupError::NotHomomorphism { x, y } => vec![x, y],
            GroupError::ActionShape { rows, cols } => vec![rows, cols],
            GroupError::ActionIdentity { a } => vec![a],
            GroupError::ActionNotHom { b, a, a2 } => vec![b, a, a2],
            GroupError::ActionCompose { b, b2, a } => vec![b, b2, a],
            GroupError::NotSplit { b } => vec![b],
            GroupError::NotInjective { x, y } => vec![x, y],
            GroupError::NotSurjective { b } => vec![b],
            GroupError::NotExact { x } => vec![x],
            GroupError::NotClosed { b, a } => vec![b, a],
            GroupError::NotSubgroup { x, y } => vec![x, y],
            GroupError::NotNormal { g, s } => vec![g, s],
        }
    }
}
