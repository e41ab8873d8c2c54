use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Caps on the exponential searches.
///
/// Every exact search in the crate checks its input against one of these
/// before starting and fails with [`Error::SearchLimitExceeded`] or
/// [`Error::SizeLimitExceeded`] instead of running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Longest cycle length accepted by the cycle search.
    pub cycle_length: usize,
    /// Largest edge count accepted by the cycle search.
    pub cycle_edges: usize,
    /// Largest edge count for matching invariants.
    pub matching_edges: usize,
    /// Largest edge count for bouquet invariants.
    pub bouquet_edges: usize,
    /// Largest vertex count for the vertex-subset enumerations behind
    /// matching and bouquet invariants.
    pub subset_vertices: usize,
    /// Largest ground set for a single reduced homology computation.
    pub homology_vertices: usize,
    /// Largest vertex count for a Betti table (Hochster sums over all subsets).
    pub betti_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cycle_length: 7,
            cycle_edges: 20,
            matching_edges: 20,
            bouquet_edges: 20,
            subset_vertices: 24,
            homology_vertices: 14,
            betti_vertices: 12,
        }
    }
}

pub(crate) fn check(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::SearchLimitExceeded { what, got, limit })
    } else {
        Ok(())
    }
}

pub(crate) fn check_size(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::SizeLimitExceeded { what, got, limit })
    } else {
        Ok(())
    }
}
