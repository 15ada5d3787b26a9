//! Thermal spin states and the three unitary transformation families:
//! coherent displacement D(ζ), one-axis squeezing S(Θ) with its
//! phase-compensated variant S̃, and two-axis squeezing K(z).

use crate::error::{Error, Result};
use crate::linalg::{matrix_exponential, CMatrix, C64, I};
use crate::spin::{build_spin_operators, SpinJ, SpinOperatorSet};

/// Cutoff below the pole of ζ(θ, φ) = e^{−iφ} tan(θ/2) at θ = π.
pub const POLE_MARGIN: f64 = 1e-9;

/// Point on the parameter sphere, θ ∈ [0, π], φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) || !theta.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "theta must lie in [0, pi] (got {theta})"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "phi must be finite (got {phi})"
            )));
        }
        Ok(SpherePoint { theta, phi })
    }

    /// Stereographic coordinate ζ = e^{−iφ} tan(θ/2); errors at the pole.
    pub fn zeta(&self) -> Result<C64> {
        if self.theta >= std::f64::consts::PI - POLE_MARGIN {
            return Err(Error::PoleAngle(self.theta));
        }
        Ok((-I * C64::from(self.phi)).exp() * C64::from((self.theta / 2.0).tan()))
    }
}

/// One-axis squeezing parameter Θ = 2ηt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeAngle {
    pub theta_cap: f64,
}

impl SqueezeAngle {
    pub fn new(theta_cap: f64) -> Self {
        SqueezeAngle { theta_cap }
    }
}

/// Thermal state ρ = e^{−βω₀J_z}/Z with its spectral data.
///
/// `lambdas[k] = e^{−m_k βω₀}/Z` with m ascending from −j, so the largest
/// weight comes first; the sequence is geometric with ratio e^{−βω₀}.
#[derive(Debug, Clone)]
pub struct ThermalState {
    pub j: SpinJ,
    pub beta: f64,
    pub omega0: f64,
    pub rho: CMatrix,
    pub lambdas: Vec<f64>,
}

/// Partition function Z = Σ_m e^{−mβω₀} = sinh[(j+½)βω₀]/sinh(βω₀/2).
pub fn partition_function(j: SpinJ, beta: f64, omega0: f64) -> Result<f64> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::NonPositiveBeta(beta));
    }
    if omega0 <= 0.0 || !omega0.is_finite() {
        return Err(Error::InvalidSpec(format!(
            "omega0 must be positive (got {omega0})"
        )));
    }
    let x = beta * omega0;
    Ok(((j.j() + 0.5) * x).sinh() / (x / 2.0).sinh())
}

/// Build the thermal state e^{−βω₀J_z}/Z, diagonal in the m-basis.
pub fn thermal_state(j: SpinJ, beta: f64, omega0: f64) -> Result<ThermalState> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::NonPositiveBeta(beta));
    }
    let x = beta * omega0;
    if x * j.j() > 700.0 {
        return Err(Error::TemperatureTooLow);
    }
    // weights shifted by e^{−jβω₀} so no exponent is positive
    let shifted: Vec<f64> = j.m_values().map(|m| (-(m + j.j()) * x).exp()).collect();
    let norm: f64 = shifted.iter().sum();
    let lambdas: Vec<f64> = shifted.iter().map(|w| w / norm).collect();
    let dim = j.dim();
    let rho = CMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::from(lambdas[r])
        } else {
            C64::from(0.0)
        }
    });
    Ok(ThermalState {
        j,
        beta,
        omega0,
        rho,
        lambdas,
    })
}

/// Displacement operator D(ξ) = exp(ξJ₊ − ξ̄J₋) with ξ = e^{−iφ}·θ/2.
///
/// Unitary; D applied to the thermal state sweeps the coherent-state family
/// ρ(ζ) = D ρ D†. The pole θ → π is rejected because ζ diverges there.
pub fn displacement_operator(j: SpinJ, point: SpherePoint) -> Result<CMatrix> {
    if point.theta >= std::f64::consts::PI - POLE_MARGIN {
        return Err(Error::PoleAngle(point.theta));
    }
    let ops = build_spin_operators(j);
    displacement_from_ops(&ops, point)
}

/// Same as [`displacement_operator`] but reusing an operator set.
pub fn displacement_from_ops(ops: &SpinOperatorSet, point: SpherePoint) -> Result<CMatrix> {
    if point.theta >= std::f64::consts::PI - POLE_MARGIN {
        return Err(Error::PoleAngle(point.theta));
    }
    let xi = (-I * C64::from(point.phi)).exp() * C64::from(point.theta / 2.0);
    let gen = ops.jplus.map(|z| z * xi) - ops.jminus.map(|z| z * xi.conj());
    matrix_exponential(&gen)
}

/// One-axis squeezing operator S(Θ) = exp(−iΘJ_x²/2).
pub fn one_axis_squeeze(j: SpinJ, theta_cap: SqueezeAngle) -> Result<CMatrix> {
    let ops = build_spin_operators(j);
    one_axis_squeeze_from_ops(&ops, theta_cap)
}

pub fn one_axis_squeeze_from_ops(
    ops: &SpinOperatorSet,
    theta_cap: SqueezeAngle,
) -> Result<CMatrix> {
    let jx2 = &ops.jx * &ops.jx;
    let gen = jx2.map(|z| z * C64::new(0.0, -theta_cap.theta_cap / 2.0));
    matrix_exponential(&gen)
}

/// Per-eigenstate geometric phases φ_m = i∫₀^{Θ_f} ⟨jm|S†(dS/dΘ)|jm⟩ dΘ
/// accumulated under one-axis squeezing, by midpoint-rule quadrature.
///
/// `dS/dΘ = −(i/2)J_x²·S(Θ)` holds exactly for the one-parameter group, so
/// the integrand is evaluated without finite differencing; since S commutes
/// with J_x² the integrand is constant and equals −(i/2)⟨jm|J_x²|jm⟩.
pub fn one_axis_geometric_phases(
    j: SpinJ,
    theta_cap_final: f64,
    n_steps: usize,
) -> Result<Vec<f64>> {
    if n_steps < 64 {
        return Err(Error::InvalidSpec(format!(
            "one-axis phase quadrature needs n_steps >= 64 (got {n_steps})"
        )));
    }
    let ops = build_spin_operators(j);
    let jx2 = &ops.jx * &ops.jx;
    let dim = j.dim();
    let dtheta = theta_cap_final / n_steps as f64;
    let mut phases = vec![0.0; dim];
    for k in 0..n_steps {
        let mid = (k as f64 + 0.5) * dtheta;
        let s = one_axis_squeeze_from_ops(&ops, SqueezeAngle::new(mid))?;
        let ds = (&jx2 * &s).map(|z| z * C64::new(0.0, -0.5));
        let integrand = s.adjoint() * ds;
        for (m, phi) in phases.iter_mut().enumerate() {
            let value = I * integrand[(m, m)];
            debug_assert!(value.im.abs() < 1e-10, "integrand must be real");
            *phi += value.re * dtheta;
        }
    }
    Ok(phases)
}

/// Phase-compensated squeezing operator
/// S̃(Θ) = Σ_m e^{iφ_m} |m(Θ)⟩⟨m(0)| = S(Θ)·diag(e^{iφ_m}),
/// which satisfies the strengthened parallel-transport condition: all
/// diagonal elements of S̃†(dS̃/dΘ) vanish.
pub fn tilde_s(j: SpinJ, theta_cap_final: f64, n_steps: usize) -> Result<CMatrix> {
    let phases = one_axis_geometric_phases(j, theta_cap_final, n_steps)?;
    let ops = build_spin_operators(j);
    let s = one_axis_squeeze_from_ops(&ops, SqueezeAngle::new(theta_cap_final))?;
    Ok(apply_phase_diag(&s, &phases))
}

/// Right-multiply by diag(e^{iφ_m}).
pub fn apply_phase_diag(s: &CMatrix, phases: &[f64]) -> CMatrix {
    let mut out = s.clone();
    for (k, &phi) in phases.iter().enumerate() {
        let factor = (I * C64::from(phi)).exp();
        out.column_mut(k).iter_mut().for_each(|z| *z *= factor);
    }
    out
}

/// Two-axis squeezing operator K(z) = exp(zJ₊² − z̄J₋²), z = e^{−iφ}tan(θ/2).
pub fn two_axis_squeeze(j: SpinJ, point: SpherePoint) -> Result<CMatrix> {
    let ops = build_spin_operators(j);
    two_axis_squeeze_from_ops(&ops, point)
}

pub fn two_axis_squeeze_from_ops(ops: &SpinOperatorSet, point: SpherePoint) -> Result<CMatrix> {
    let z = point.zeta()?;
    let jp2 = &ops.jplus * &ops.jplus;
    let jm2 = &ops.jminus * &ops.jminus;
    let gen = jp2.map(|w| w * z) - jm2.map(|w| w * z.conj());
    matrix_exponential(&gen)
}
