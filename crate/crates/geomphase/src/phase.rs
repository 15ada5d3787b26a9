//! Phase-branch helpers. Internal branch is (−π, π]; exports use [0, 2π).

use std::f64::consts::{PI, TAU};

/// Wrap an angle into the principal branch (−π, π].
pub fn principal(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    a
}

/// Map a principal-branch phase to [0, 2π) for plotting/export parity.
/// Values within floating-point noise of the 2π wrap snap back to 0 so a
/// zero plateau does not alternate between 0 and 2π across samples.
pub fn to_plot_range(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a >= TAU || TAU - a < 1e-12 {
        0.0
    } else {
        a
    }
}

/// Distance between two phases mod 2π: min(|Δ|, 2π − |Δ|).
pub fn mod_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
