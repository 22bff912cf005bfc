//! Crossed modules over finite groups, their internal categories, and crossed
//! squares, with exhaustive axiom checkers that report witnesses.
//!
//! Groups are Cayley tables over `0..order` with 0 the identity, and every
//! structure stores its actions as full tables. All checks are exhaustive.

pub mod catxmod;
pub mod group;
pub mod groupoid;
pub mod laws;
pub mod limits;
pub mod oracle;
pub mod xmod;
pub mod xsq;
