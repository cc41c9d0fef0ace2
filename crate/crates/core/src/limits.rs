//! Size guards for the exhaustive searches.
//!
//! Every search in this crate is exact and exponential in some size
//! parameter. The defaults below keep each call at desk scale. Setting the
//! environment variable `SIGNFORGE_GUARD_OVERRIDE=1` replaces them with
//! [`Limits::relaxed`] and prints a one-time warning on stderr.

use std::sync::Once;

use crate::error::{Error, Result};

pub const OVERRIDE_ENV: &str = "SIGNFORGE_GUARD_OVERRIDE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest connected component handled by the switching searches.
    pub switch_component_vertices: usize,
    /// Largest graph handled by the canonical form.
    pub canonical_vertices: usize,
    /// Maximum number of cycles materialized by cycle enumeration.
    pub cycle_cap: usize,
    /// Edge bound for the exhaustive bipartition fallback of the
    /// decomposition search.
    pub partition_edges: usize,
    /// Largest k for which decompositions are searched.
    pub decomposition_k: usize,
    /// Vertex bound of the (K4,-)-subdivision search.
    pub k4_vertices: usize,
    /// Edge bound of the (K4,-)-subdivision search.
    pub k4_edges: usize,
    /// Vertex bound of the enumeration of small signed graphs.
    pub enumerate_vertices: usize,
    /// Edge bound of the enumeration of small signed graphs.
    pub enumerate_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            switch_component_vertices: 24,
            canonical_vertices: 16,
            cycle_cap: 100_000,
            partition_edges: 20,
            decomposition_k: 5,
            k4_vertices: 12,
            k4_edges: 24,
            enumerate_vertices: 5,
            enumerate_edges: 10,
        }
    }
}

impl Limits {
    pub fn relaxed() -> Self {
        Limits {
            switch_component_vertices: 40,
            canonical_vertices: 24,
            cycle_cap: 10_000_000,
            partition_edges: 28,
            decomposition_k: 8,
            k4_vertices: 40,
            k4_edges: 127,
            enumerate_vertices: 6,
            enumerate_edges: 14,
        }
    }

    /// The limits in effect for this process.
    pub fn current() -> Self {
        static WARN: Once = Once::new();
        match std::env::var(OVERRIDE_ENV) {
            Ok(v) if v == "1" => {
                WARN.call_once(|| {
                    eprintln!("warning: {OVERRIDE_ENV}=1, size guards relaxed; searches may run for a long time");
                });
                Limits::relaxed()
            }
            _ => Limits::default(),
        }
    }
}

pub(crate) fn check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::GuardExceeded {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
