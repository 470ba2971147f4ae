//! Shared fixtures for the benchmark targets.

use wendroff_core::{rat, rat_int, RadiusMode, WendroffConfig};

/// The small worked example: n = 5, k = 5, λ = −5/4, σ = 2, a = 2.
pub fn small_config() -> WendroffConfig {
    WendroffConfig::new(5, 5, rat(-5, 4), rat_int(2), RadiusMode::Auto, None)
        .expect("valid parameters")
}

/// A long run: n = 10, k = 58, reaching degree 68.
pub fn large_config() -> WendroffConfig {
    WendroffConfig::new(10, 58, rat(-5, 4), rat_int(2), RadiusMode::Auto, None)
        .expect("valid parameters")
}
