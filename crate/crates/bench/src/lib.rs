//! Shared fixtures for the benchmarks.

use dofr_core::geometry::ratio;
use dofr_core::regions::{AntennaConfig, CsitQuality};

pub fn config_423() -> AntennaConfig {
    AntennaConfig::new(4, 2, 3).expect("valid antennas")
}

pub fn csit(a1: (i64, i64), a2: (i64, i64)) -> CsitQuality {
    CsitQuality::new(ratio(a1.0, a1.1), ratio(a2.0, a2.1)).expect("valid qualities")
}

/// A uniform grid over [0, 1]^2 with the given denominator.
pub fn grid(den: i64) -> Vec<CsitQuality> {
    let mut out = Vec::new();
    for i in 0..=den {
        for j in 0..=den {
            out.push(csit((i, den), (j, den)));
        }
    }
    out
}
