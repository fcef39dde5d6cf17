use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size guards shared by every guarded operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest product or power graph that may be constructed. Rows are dense
    /// bitsets, so memory grows quadratically in this number.
    pub product_vertices: usize,
    /// Largest graph handed to the maximum independent set search.
    pub bnb_vertices: usize,
    /// Largest graph handed to the expansion-ratio search.
    pub expansion_vertices: usize,
    /// Largest graph whose automorphisms are searched exhaustively.
    pub transitivity_vertices: usize,
    pub chromatic_vertices: usize,
    pub spectral_vertices: usize,
    /// Largest tuple space in which power witnesses are materialized.
    pub materialize_vertices: usize,
    /// Highest tensor power tried when collecting lower bounds.
    pub power_scan_k: usize,
    /// Cap on the number of maximum independent sets enumerated by audits.
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            product_vertices: 20_000,
            bnb_vertices: 64,
            expansion_vertices: 40,
            transitivity_vertices: 16,
            chromatic_vertices: 32,
            spectral_vertices: 2000,
            materialize_vertices: 2_000_000,
            power_scan_k: 3,
            enumeration_cap: 100_000,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, limit: usize, actual: usize) -> Result<()> {
        if actual > limit {
            Err(Error::guard(what, limit, actual as u128))
        } else {
            Ok(())
        }
    }
}
