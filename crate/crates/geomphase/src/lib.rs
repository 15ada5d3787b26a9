//! Mixed-state geometric phases of thermal spin-j states.
//!
//! This crate computes the two standard geometric phases of mixed quantum
//! states, the Uhlmann phase and the interferometric geometric phase (IGP),
//! for thermal spin-j ensembles driven through three unitary families:
//!
//! * coherent-state displacement `D(ζ) = exp(ξJ₊ − ξ̄J₋)`,
//! * one-axis twisting (spin squeezing) `S(Θ) = exp(−iΘJ_x²/2)`,
//! * two-axis counter-twisting `K(z) = exp(zJ₊² − z̄J₋²)`.
//!
//! The Uhlmann phase is evaluated as `arg Tr[ρ(0)·𝒫exp(−∮A_U)]`, with the
//! path-ordered holonomy built from Trotter products of short connection
//! steps; closed-form connections are provided per family alongside a generic
//! spectral form that serves as an independent cross-check. The IGP is
//! `arg Tr[ρ(0)U(t)]` for evolutions satisfying the interferometric
//! parallel-transport condition, with closed forms for all three families.
//!
//! The [`scan`] module adds parameter sweeps, jump detection, and bisection
//! for critical temperatures, which is also exposed through the
//! `geomphase-scan` command-line tool.
//!
//! Temperatures are measured in units of the Larmor frequency ω₀ throughout.

pub mod error;
pub mod igp;
pub mod linalg;
pub mod phase;
pub mod scan;
pub mod spin;
pub mod states;
pub mod uhlmann;

pub use error::{Error, Result};
pub use linalg::{hermitian_eigendecomposition, matrix_exponential, CMatrix, C64};
pub use spin::{build_spin_operators, SpinJ, SpinOperatorSet};
pub use states::{
    displacement_operator, one_axis_geometric_phases, one_axis_squeeze, partition_function,
    thermal_state, tilde_s, two_axis_squeeze, SpherePoint, SqueezeAngle, ThermalState,
};
