use serde::{Deserialize, Serialize};

/// Size limits for the brute-force and enumeration routines.
///
/// Exceeding one of these yields [`crate::Error::LimitExceeded`]; nothing is
/// silently truncated. The CLI reads overrides from a JSON file whose keys
/// match the field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest block length for exhaustive codeword enumeration.
    pub max_exhaustive_n: usize,
    /// Largest nullspace dimension for basis-driven codeword enumeration.
    pub max_nullspace_dim: usize,
    /// Largest check degree accepted when writing out the 2^(d-1) parity inequalities.
    pub max_row_weight: usize,
    /// Largest dimension accepted by vertex and ray enumeration.
    pub max_vertex_n: usize,
    /// Above this many constraint subsets the enumeration switches to double description.
    pub max_subset_count: u64,
    /// Largest number of rays/vertices the double description may hold at once.
    pub max_dd_rays: usize,
    /// Largest row count produced by a redundant-row expansion.
    pub max_expansion_rows: usize,
    /// Largest number of covers (summed over all degrees) the brute-force cover decoder may visit.
    pub max_gcd_work: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_exhaustive_n: 24,
            max_nullspace_dim: 20,
            max_row_weight: 20,
            max_vertex_n: 16,
            max_subset_count: 10_000,
            max_dd_rays: 200_000,
            max_expansion_rows: 100_000,
            max_gcd_work: 50_000_000,
        }
    }
}
