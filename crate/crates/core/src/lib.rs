//! Discrete polymatroids on a finite ground set.
//!
//! The crate covers the exchange-theoretic side (validation of point sets and
//! base sets, weak/strong/symmetric exchange, the sorting operator), ground set
//! rank functions, desk-scale checks of the toric relations of base rings
//! (fiber connectivity under symmetric exchange moves), and exact Hilbert
//! functions and h*-vectors of base rings and Ehrhart rings together with the
//! combinatorial Gorenstein criteria that go with them.
//!
//! Ground-set elements are 0-based in the library API (`0..n`); the CLI and
//! every serialized report use 1-based element labels.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod exchange;
mod hull;
pub mod lattice;
pub mod polymatroid;
pub mod toric;
pub mod vector;

pub use error::{Error, Result};
pub use vector::{GroundSubset, IntVector, Verdict};

use std::sync::OnceLock;

/// Default cap on the number of points any single enumeration may produce.
pub const DEFAULT_MAX_POINTS: usize = 1_000_000;

/// Enumeration size cap, overridable with the `POLYMAT_MAX_POINTS` environment
/// variable. Read once per process.
pub fn point_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("POLYMAT_MAX_POINTS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&c: &usize| c > 0)
            .unwrap_or(DEFAULT_MAX_POINTS)
    })
}

pub(crate) fn check_cap(what: &'static str, count: usize) -> Result<()> {
    let limit = point_cap();
    if count > limit {
        Err(Error::SizeCap { what, limit })
    } else {
        Ok(())
    }
}
