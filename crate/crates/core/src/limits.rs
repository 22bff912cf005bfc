//! Process-wide size bound for exhaustive work.
//!
//! Every exhaustive scan in this crate is at least cubic in a group order, so
//! inputs are bounded. Base groups may have at most [`size_limit`] elements and
//! constructed products at most its square.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Default bound on base group orders.
pub const DEFAULT_SIZE_LIMIT: usize = 64;

/// Default bound on carriers handed to the brute-force oracles.
pub const ORACLE_LIMIT: usize = 8;

static SIZE_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_SIZE_LIMIT);

/// Current bound on base group orders.
pub fn size_limit() -> usize {
    SIZE_LIMIT.load(Ordering::Relaxed)
}

/// Bound on constructed groups (products, semidirect products, pullbacks).
pub fn product_limit() -> usize {
    size_limit().saturating_mul(size_limit())
}

/// Override the bound. Values below 1 are clamped to 1.
pub fn set_size_limit(limit: usize) {
    SIZE_LIMIT.store(limit.max(1), Ordering::Relaxed);
}
