//! Enumeration budget shared by every brute-force routine.

/// Default cap on the number of enumerated objects.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Reads `GEODLAB_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn enumeration_budget() -> u64 {
    std::env::var("GEODLAB_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&b: &u64| b > 0)
        .unwrap_or(DEFAULT_BUDGET)
}
