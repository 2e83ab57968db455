use serde::{Deserialize, Serialize};

/// Caps and budgets for the exhaustive searches.
///
/// Every field has a desk-scale default; the CLI can override them via
/// flags or environment variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Maximum number of elements a group closure may reach.
    pub group_cap: usize,
    /// Budget for subgroup-lattice searches, counted in closure steps.
    pub subgroup_budget: usize,
    /// Maximum group order for character-table construction.
    pub chartable_cap: usize,
    /// Maximum group order for a full rank sweep over the subgroup lattice.
    pub rank_order_cap: usize,
    /// Groups up to this order get their full automorphism group enumerated.
    pub aut_full_order: usize,
    /// Number of seeded random generator-image attempts for larger groups.
    pub outer_tries: usize,
    /// Base truncation exponent for quasicyclic cross-checks (level p^k).
    pub truncation_level: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            group_cap: 20_000,
            subgroup_budget: 20_000_000,
            chartable_cap: 500,
            rank_order_cap: 200,
            aut_full_order: 64,
            outer_tries: 40,
            truncation_level: 4,
        }
    }
}
