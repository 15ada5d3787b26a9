//! Interferometric geometric phase: total phases of unitary evolutions,
//! parallel-transport verification, closed forms per family, and the
//! spectral (overlap) formula for one-axis squeezing.
//!
//! The IGP is `θ_G = arg Tr[ρ(0)U(t)]` for an evolution whose generator has
//! no diagonal part in the instantaneous eigenbasis of ρ, so no dynamic
//! phase accumulates and the total phase is purely geometric.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{check_unitary, CMatrix, C64, I};
use crate::phase::principal;
use crate::spin::{build_spin_operators, SpinJ, SpinOperatorSet};
use crate::states::{
    apply_phase_diag, displacement_from_ops, one_axis_geometric_phases, one_axis_squeeze_from_ops,
    thermal_state, two_axis_squeeze_from_ops, SpherePoint, SqueezeAngle,
};

/// Total phase arg Tr[ρ(0)·U] on the principal branch (−π, π].
pub fn total_phase(rho0: &CMatrix, u: &CMatrix) -> Result<f64> {
    check_unitary(u, 1e-8)?;
    let tr = (rho0 * u).trace();
    if tr.norm() < 1e-12 {
        return Err(Error::PhaseUndefined(tr.norm()));
    }
    Ok(principal(tr.arg()))
}

/// Unitary evolutions that satisfy the interferometric parallel-transport
/// condition, each starting from the bare thermal state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionFamily {
    /// D(ζ) along a longitude: θ ramps from 0 to θ_f at fixed φ.
    CssLongitude,
    /// Phase-compensated one-axis squeezing S̃(Θ): Θ ramps from 0 to Θ_f.
    OneAxisTilde,
    /// K(z) along the meridian φ = π/2: θ ramps from 0 to θ_f.
    TwoAxisMeridian,
}

/// One parallel-transported evolution: family, endpoint, frozen coordinates,
/// and the discretization used for transport checks and quadrature.
#[derive(Debug, Clone, Copy)]
pub struct EvolutionSpec {
    pub family: EvolutionFamily,
    pub j: SpinJ,
    /// θ_f for the sphere families, Θ_f for one-axis squeezing.
    pub endpoint: f64,
    /// Longitude azimuth for the CSS family; the two-axis meridian is fixed
    /// at φ = π/2 and the one-axis family has no angle.
    pub fixed_phi: f64,
    pub n_steps: usize,
}

impl EvolutionSpec {
    pub fn css_longitude(j: SpinJ, theta_f: f64, phi: f64, n_steps: usize) -> Result<Self> {
        let spec = EvolutionSpec {
            family: EvolutionFamily::CssLongitude,
            j,
            endpoint: theta_f,
            fixed_phi: phi,
            n_steps,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn one_axis(theta_cap_f: f64, n_steps: usize) -> Result<Self> {
        let spec = EvolutionSpec {
            family: EvolutionFamily::OneAxisTilde,
            j: SpinJ::from_two_j(2).unwrap(),
            endpoint: theta_cap_f,
            fixed_phi: 0.0,
            n_steps,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn two_axis_meridian(theta_f: f64, n_steps: usize) -> Result<Self> {
        let spec = EvolutionSpec {
            family: EvolutionFamily::TwoAxisMeridian,
            j: SpinJ::from_two_j(2).unwrap(),
            endpoint: theta_f,
            fixed_phi: PI / 2.0,
            n_steps,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_steps < 16 {
            return Err(Error::InvalidSpec(format!(
                "evolution needs at least 16 steps (got {})",
                self.n_steps
            )));
        }
        match self.family {
            EvolutionFamily::CssLongitude => {
                if !(0.0..PI).contains(&self.endpoint) {
                    return Err(Error::InvalidSpec(format!(
                        "CSS longitude endpoint must lie in [0, pi) (got {})",
                        self.endpoint
                    )));
                }
            }
            EvolutionFamily::OneAxisTilde => {
                if self.j.two_j() != 2 {
                    return Err(Error::UnsupportedSpin {
                        required: 2,
                        got: self.j.two_j(),
                    });
                }
                if !(0.0..=4.0 * PI).contains(&self.endpoint) {
                    return Err(Error::InvalidSpec(format!(
                        "one-axis endpoint must lie in [0, 4pi] (got {})",
                        self.endpoint
                    )));
                }
            }
            EvolutionFamily::TwoAxisMeridian => {
                if self.j.two_j() != 2 {
                    return Err(Error::UnsupportedSpin {
                        required: 2,
                        got: self.j.two_j(),
                    });
                }
                // tan(θ/2) grows so fast past 3π/4 that the phase oscillates
                // beyond numerical use; treat larger endpoints as errors
                if !(0.0..=0.75 * PI).contains(&self.endpoint) {
                    return Err(Error::InvalidSpec(format!(
                        "two-axis endpoint must lie in [0, 3pi/4] (got {})",
                        self.endpoint
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evolution operator at fraction `s` ∈ [0, 1] of the path.
    pub fn unitary_at(&self, ops: &SpinOperatorSet, s: f64) -> Result<CMatrix> {
        let value = self.endpoint * s;
        match self.family {
            EvolutionFamily::CssLongitude => {
                displacement_from_ops(ops, SpherePoint::new(value, self.fixed_phi)?)
            }
            EvolutionFamily::OneAxisTilde => {
                let s_matrix = one_axis_squeeze_from_ops(ops, SqueezeAngle::new(value))?;
                // φ_m(Θ) = (Θ/2)⟨m|J_x²|m⟩; quadrature-free along the ramp
                let jx2 = &ops.jx * &ops.jx;
                let phases: Vec<f64> = (0..ops.j.dim())
                    .map(|m| value / 2.0 * jx2[(m, m)].re)
                    .collect();
                Ok(apply_phase_diag(&s_matrix, &phases))
            }
            EvolutionFamily::TwoAxisMeridian => {
                two_axis_squeeze_from_ops(ops, SpherePoint::new(value, self.fixed_phi)?)
            }
        }
    }
}

/// Finite-difference verification of the parallel-transport conditions.
///
/// `weak_residual`: max over the path of |Tr[ρ(0)U†U̇]|.
/// `strong_residual`: max over path and eigenstates of |⟨n(t)|U̇U†|n(t)⟩|;
/// since ρ(t) = U ρ(0) U† with ρ(0) diagonal and non-degenerate, the
/// eigenvectors are |n(t)⟩ = U|n⟩ and the matrix elements reduce to the
/// diagonal of U†U̇.
/// `dynamic_phase`: −i ∫ Tr[ρ(t)U̇U†] dt by midpoint quadrature.
#[derive(Debug, Clone, Copy)]
pub struct TransportReport {
    pub weak_residual: f64,
    pub strong_residual: f64,
    pub dynamic_phase: f64,
    /// Discretization step of the finite differences; residuals carry an
    /// O(step²) floor.
    pub step: f64,
}

pub fn transport_report(spec: &EvolutionSpec, beta: f64, omega0: f64) -> Result<TransportReport> {
    spec.validate()?;
    let ops = build_spin_operators(spec.j);
    let thermal = thermal_state(spec.j, beta, omega0)?;
    let n = spec.n_steps;
    let dt = 1.0 / n as f64;

    let mut weak: f64 = 0.0;
    let mut strong: f64 = 0.0;
    let mut dynamic_sum = C64::from(0.0);
    for k in 0..n {
        let u_lo = spec.unitary_at(&ops, k as f64 * dt)?;
        let u_mid = spec.unitary_at(&ops, (k as f64 + 0.5) * dt)?;
        let u_hi = spec.unitary_at(&ops, (k + 1) as f64 * dt)?;
        // G = U†U̇ at the midpoint
        let g = u_mid.adjoint() * (u_hi - u_lo).map(|z| z / C64::from(dt));
        let weighted = (&thermal.rho * &g).trace();
        weak = weak.max(weighted.norm());
        for m in 0..spec.j.dim() {
            strong = strong.max(g[(m, m)].norm());
        }
        dynamic_sum += weighted * C64::from(dt);
    }
    Ok(TransportReport {
        weak_residual: weak,
        strong_residual: strong,
        dynamic_phase: (-I * dynamic_sum).re,
        step: dt * spec.endpoint,
    })
}

/// Direct IGP: arg Tr[ρ(0)U(t_final)], refusing to answer when the path
/// fails the transport condition (the result would be a total phase with a
/// dynamic component, not an IGP).
pub fn igp_numeric(spec: &EvolutionSpec, beta: f64, omega0: f64) -> Result<f64> {
    igp_numeric_with_magnitude(spec, beta, omega0).map(|(phase, _)| phase)
}

/// [`igp_numeric`] plus the trace magnitude |Tr[ρ(0)U]|.
pub fn igp_numeric_with_magnitude(
    spec: &EvolutionSpec,
    beta: f64,
    omega0: f64,
) -> Result<(f64, f64)> {
    let report = transport_report(spec, beta, omega0)?;
    let residual = report.weak_residual.max(report.strong_residual);
    if residual > 1e-6 {
        return Err(Error::TransportViolated { residual });
    }
    let ops = build_spin_operators(spec.j);
    let thermal = thermal_state(spec.j, beta, omega0)?;
    let u = spec.unitary_at(&ops, 1.0)?;
    let magnitude = (&thermal.rho * &u).trace().norm();
    let phase = total_phase(&thermal.rho, &u)?;
    Ok((phase, magnitude))
}

/// Closed-form CSS IGP for j = 3/2 along a longitude:
/// `θ_G = arg[e^{2βω₀} + 1 − 2e^{βω₀} tan²(θ_f/2)]`, independent of φ.
///
/// Evaluated as `arg[1 + e^{−2x} − 2e^{−x}tan²(θ_f/2)]` (same sign, no
/// overflow); the argument is real so the result is exactly 0 or π.
pub fn igp_css_closed(j: SpinJ, theta_f: f64, beta: f64, omega0: f64) -> Result<f64> {
    let value = igp_css_closed_value(j, theta_f, beta, omega0)?;
    if value.abs() < 1e-14 {
        return Err(Error::PhaseUndefined(value.abs()));
    }
    Ok(if value > 0.0 { 0.0 } else { PI })
}

/// The real argument behind [`igp_css_closed`]; its sign carries the phase
/// and its zero locates the critical temperature.
pub fn igp_css_closed_value(j: SpinJ, theta_f: f64, beta: f64, omega0: f64) -> Result<f64> {
    if j.two_j() != 3 {
        return Err(Error::UnsupportedSpin {
            required: 3,
            got: j.two_j(),
        });
    }
    if beta <= 0.0 {
        return Err(Error::NonPositiveBeta(beta));
    }
    if !(0.0..PI).contains(&theta_f) {
        return Err(Error::InvalidSpec(format!(
            "theta_f must lie in [0, pi) (got {theta_f})"
        )));
    }
    let x = beta * omega0;
    Ok(1.0 + (-2.0 * x).exp() - 2.0 * (-x).exp() * (theta_f / 2.0).tan().powi(2))
}

/// Closed-form one-axis IGP for j = 1:
/// `θ_G = arg[(2cos(Θ_f/4)cosh(βω₀) + 1) / (2cosh(βω₀) + 1)]` ∈ {0, π}.
pub fn igp_one_axis_closed(theta_cap_f: f64, beta: f64, omega0: f64) -> Result<f64> {
    let value = igp_one_axis_closed_value(theta_cap_f, beta, omega0)?;
    if value.abs() < 1e-14 {
        return Err(Error::PhaseUndefined(value.abs()));
    }
    Ok(if value > 0.0 { 0.0 } else { PI })
}

/// The real argument behind [`igp_one_axis_closed`].
pub fn igp_one_axis_closed_value(theta_cap_f: f64, beta: f64, omega0: f64) -> Result<f64> {
    if beta <= 0.0 {
        return Err(Error::NonPositiveBeta(beta));
    }
    if !(0.0..=4.0 * PI).contains(&theta_cap_f) {
        return Err(Error::InvalidSpec(format!(
            "Theta_f must lie in [0, 4pi] (got {theta_cap_f})"
        )));
    }
    let x = beta * omega0;
    // divide through by cosh: (2cos(Θ/4) + sech x)/(2 + sech x), overflow-free
    let sech = 1.0 / x.cosh();
    Ok((2.0 * (theta_cap_f / 4.0).cos() + sech) / (2.0 + sech))
}

/// Spectral one-axis IGP: `θ_G = arg Σ_m λ_m ν_m e^{iφ_m}` with thermal
/// weights λ_m, overlaps ν_m = ⟨m(0)|m(t)⟩, and the accumulated eigenstate
/// phases φ_m from quadrature.
pub fn igp_one_axis_spectral(
    theta_cap_f: f64,
    beta: f64,
    omega0: f64,
    n_steps: usize,
) -> Result<f64> {
    let sum = igp_one_axis_spectral_value(theta_cap_f, beta, omega0, n_steps)?;
    if sum.norm() < 1e-12 {
        return Err(Error::PhaseUndefined(sum.norm()));
    }
    Ok(principal(sum.arg()))
}

/// The weighted overlap sum Σ_m λ_m ν_m e^{iφ_m} behind
/// [`igp_one_axis_spectral`].
pub fn igp_one_axis_spectral_value(
    theta_cap_f: f64,
    beta: f64,
    omega0: f64,
    n_steps: usize,
) -> Result<C64> {
    let j = SpinJ::from_two_j(2).unwrap();
    let thermal = thermal_state(j, beta, omega0)?;
    let s = crate::states::one_axis_squeeze(j, SqueezeAngle::new(theta_cap_f))?;
    let phases = one_axis_geometric_phases(j, theta_cap_f, n_steps)?;
    let mut sum = C64::from(0.0);
    for m in 0..j.dim() {
        let overlap = s[(m, m)];
        sum += C64::from(thermal.lambdas[m]) * overlap * (I * C64::from(phases[m])).exp();
    }
    Ok(sum)
}

/// Critical squeezing endpoint Θ_c(T) = 4·arccos(−½ sech(ω₀/T)), where the
/// one-axis IGP jumps by π. Ranges from 2π (T → 0) to 8π/3 (T → ∞).
pub fn critical_theta_one_axis(temperature: f64, omega0: f64) -> Result<f64> {
    if temperature <= 0.0 {
        return Err(Error::InvalidSpec(format!(
            "temperature must be positive (got {temperature})"
        )));
    }
    let sech = 1.0 / (omega0 / temperature).cosh();
    Ok(4.0 * (-0.5 * sech).acos())
}

/// Closed-form two-axis IGP for j = 1 along the φ = π/2 meridian:
/// `θ_G = arg[2cos(2tan(θ_f/2))/(sech(βω₀)+2)
///          + (1 − 2i·sin(2tan(θ_f/2)))/(2cosh(βω₀)+1)]`.
///
/// The argument is genuinely complex, so the phase varies continuously at
/// finite temperature; only at T → 0 does it collapse to arg[cos(2tan(θ/2))]
/// with a π-jump at θ_f = 2·arctan(π/4).
pub fn igp_two_axis_closed(theta_f: f64, beta: f64, omega0: f64) -> Result<f64> {
    let value = igp_two_axis_closed_value(theta_f, beta, omega0)?;
    if value.norm() < 1e-14 {
        return Err(Error::PhaseUndefined(value.norm()));
    }
    Ok(principal(value.arg()))
}

/// The complex argument behind [`igp_two_axis_closed`].
pub fn igp_two_axis_closed_value(theta_f: f64, beta: f64, omega0: f64) -> Result<C64> {
    if beta <= 0.0 {
        return Err(Error::NonPositiveBeta(beta));
    }
    if !(0.0..=0.75 * PI).contains(&theta_f) {
        return Err(Error::InvalidSpec(format!(
            "theta_f must lie in [0, 3pi/4] (got {theta_f})"
        )));
    }
    let x = beta * omega0;
    let r2 = 2.0 * (theta_f / 2.0).tan();
    let sech = 1.0 / x.cosh();
    // 1/(2cosh x + 1) written via sech so cosh overflow degrades to 0 gracefully
    let inv_z = sech / (2.0 + sech);
    Ok(
        C64::from(2.0 * r2.cos() / (sech + 2.0))
            + C64::new(1.0, -2.0 * r2.sin()) * C64::from(inv_z),
    )
}
