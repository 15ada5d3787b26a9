//! Uhlmann connections, path-ordered holonomies, and the Uhlmann phase
//! `θ_U = arg Tr[ρ(0)·𝒫exp(−∮A_U)]`.
//!
//! Each family has a closed-form connection step; the generic spectral form
//! `A_U = −Σ_{mn} |m⟩⟨m|[d√ρ, √ρ]|n⟩⟨n| / (λ_m + λ_n)` built from the
//! eigendata of ρ serves as an independent cross-check and supports any
//! spin and parameter family.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{
    anti_hermitian_defect, hermitian_eigendecomposition, matrix_exponential, spectral_apply,
    CMatrix, C64, I,
};
use crate::phase::{mod_distance, principal};
use crate::spin::{build_spin_operators, SpinJ, SpinOperatorSet};
use crate::states::{
    displacement_from_ops, one_axis_squeeze_from_ops, thermal_state, two_axis_squeeze_from_ops,
    SpherePoint, SqueezeAngle,
};

/// Full-rank floor for Trotter runs: below T = 1e−3·ω₀ the thermal
/// eigenvalues underflow and the connection denominators degrade; the
/// T → 0 limit is served analytically by [`berry_phase_css`].
pub const TROTTER_TEMPERATURE_FLOOR: f64 = 1e-3;

/// Thermal weight χ = 1 − sech(βω₀/2) coupling adjacent J_z levels.
pub fn chi_nearest(beta: f64, omega0: f64) -> f64 {
    1.0 - 1.0 / (beta * omega0 / 2.0).cosh()
}

/// Thermal weight χ = (e^{βω₀/2} − e^{−βω₀/2})² / (e^{βω₀} + e^{−βω₀})
/// coupling J_z levels two apart (squeezing families). Algebraically equal
/// to 1 − sech(βω₀).
pub fn chi_skip2(beta: f64, omega0: f64) -> f64 {
    1.0 - 1.0 / (beta * omega0).cosh()
}

/// Families of parameter curves along which thermal states are transported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathFamily {
    Css,
    OneAxis,
    TwoAxis,
}

/// One sample along a parameter curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathPoint {
    Sphere(SpherePoint),
    Squeeze(SqueezeAngle),
}

impl PathPoint {
    fn lerp(&self, other: &PathPoint, t: f64) -> PathPoint {
        match (self, other) {
            (PathPoint::Sphere(a), PathPoint::Sphere(b)) => PathPoint::Sphere(SpherePoint {
                theta: a.theta + (b.theta - a.theta) * t,
                phi: a.phi + (b.phi - a.phi) * t,
            }),
            (PathPoint::Squeeze(a), PathPoint::Squeeze(b)) => PathPoint::Squeeze(
                SqueezeAngle::new(a.theta_cap + (b.theta_cap - a.theta_cap) * t),
            ),
            _ => panic!("path points from different families"),
        }
    }
}

/// A discretized curve in parameter space. `samples` has one more entry than
/// the number of segments; a closed path repeats the initial unitary's
/// parameters at the end.
#[derive(Debug, Clone)]
pub struct ParameterPath {
    pub family: PathFamily,
    pub samples: Vec<PathPoint>,
    pub closed: bool,
}

impl ParameterPath {
    /// Fixed-θ circle φ: 0 → 2π, the loop driven by D(ζ).
    pub fn css_circle(theta: f64, n_segments: usize) -> Result<Self> {
        if n_segments < 2 {
            return Err(Error::InvalidSpec("path needs at least 2 segments".into()));
        }
        let samples = (0..=n_segments)
            .map(|k| {
                Ok(PathPoint::Sphere(SpherePoint::new(
                    theta,
                    TAU * k as f64 / n_segments as f64,
                )?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ParameterPath {
            family: PathFamily::Css,
            samples,
            closed: true,
        })
    }

    /// One-axis squeezing loop Θ: 0 → 4π (closed for j = 1 since S(4π) = 1).
    pub fn one_axis_loop(n_segments: usize) -> Result<Self> {
        if n_segments < 2 {
            return Err(Error::InvalidSpec("path needs at least 2 segments".into()));
        }
        let samples = (0..=n_segments)
            .map(|k| PathPoint::Squeeze(SqueezeAngle::new(4.0 * PI * k as f64 / n_segments as f64)))
            .collect();
        Ok(ParameterPath {
            family: PathFamily::OneAxis,
            samples,
            closed: true,
        })
    }

    /// Equator circle θ = π/2, φ: 0 → 2π for the two-axis family.
    pub fn two_axis_equator(n_segments: usize) -> Result<Self> {
        let mut path = Self::css_circle(PI / 2.0, n_segments)?;
        path.family = PathFamily::TwoAxis;
        Ok(path)
    }

    pub fn n_segments(&self) -> usize {
        self.samples.len() - 1
    }

    /// Insert segment midpoints, doubling the resolution. Exact for the
    /// linear-in-parameter curves used here.
    pub fn refine(&self) -> Self {
        let mut samples = Vec::with_capacity(2 * self.n_segments() + 1);
        for k in 0..self.n_segments() {
            let a = self.samples[k];
            let b = self.samples[k + 1];
            samples.push(a);
            samples.push(a.lerp(&b, 0.5));
        }
        samples.push(*self.samples.last().unwrap());
        ParameterPath {
            family: self.family,
            samples,
            closed: self.closed,
        }
    }

    pub fn segment(&self, k: usize) -> PathSegment {
        let start = self.samples[k];
        let end = self.samples[k + 1];
        PathSegment {
            start,
            mid: start.lerp(&end, 0.5),
            end,
        }
    }
}

/// A path segment with its midpoint, where connections are sampled for
/// second-order accuracy.
#[derive(Debug, Clone, Copy)]
pub struct PathSegment {
    pub start: PathPoint,
    pub mid: PathPoint,
    pub end: PathPoint,
}

/// The connection one-form contracted with a step displacement, A_U·Δ.
#[derive(Debug, Clone)]
pub struct ConnectionStep {
    pub a_dt: CMatrix,
}

impl ConnectionStep {
    pub fn new(a_dt: CMatrix) -> Result<Self> {
        let defect = anti_hermitian_defect(&a_dt);
        if defect >= 1e-8 {
            return Err(Error::NotHermitian { defect });
        }
        Ok(ConnectionStep { a_dt })
    }
}

/// Closed-form CSS connection contracted with a step (dθ, dφ):
///
/// `A_U = iχ[(J_x cosφ + J_y sinφ) cosθ + J_z sinθ] sinθ·dφ
///        + iχ(J_x sinφ − J_y cosφ)·dθ`,  χ = 1 − sech(βω₀/2).
///
/// The sign of the J_z sinθ dφ term is pinned by agreement with the spectral
/// form and by the T → 0 Berry limit (see the cross-check tests); at the
/// equator it reduces to iχJ_z dφ.
pub fn connection_css(
    ops: &SpinOperatorSet,
    point: SpherePoint,
    d_theta: f64,
    d_phi: f64,
    beta: f64,
    omega0: f64,
) -> Result<ConnectionStep> {
    if beta <= 0.0 {
        return Err(Error::NonPositiveBeta(beta));
    }
    let chi = chi_nearest(beta, omega0);
    let (st, ct) = (point.theta.sin(), point.theta.cos());
    let (sp, cp) = (point.phi.sin(), point.phi.cos());
    let phi_part = (ops.jx.map(|z| z * C64::from(cp)) + ops.jy.map(|z| z * C64::from(sp)))
        .map(|z| z * C64::from(ct))
        + ops.jz.map(|z| z * C64::from(st));
    let theta_part = ops.jx.map(|z| z * C64::from(sp)) - ops.jy.map(|z| z * C64::from(cp));
    let a = phi_part.map(|z| z * I * C64::from(chi * st * d_phi))
        + theta_part.map(|z| z * I * C64::from(chi * d_theta));
    ConnectionStep::new(a)
}

/// Closed-form one-axis connection for j = 1:
/// `A_U = (iχ/4)[J_x² − S(Θ)J_y²S†(Θ)]·dΘ`, χ = chi_skip2.
pub fn connection_one_axis(
    ops: &SpinOperatorSet,
    theta_cap: f64,
    d_theta_cap: f64,
    beta: f64,
    omega0: f64,
) -> Result<ConnectionStep> {
    if ops.j.two_j() != 2 {
        return Err(Error::UnsupportedSpin {
            required: 2,
            got: ops.j.two_j(),
        });
    }
    if beta <= 0.0 {
        return Err(Error::NonPositiveBeta(beta));
    }
    let chi = chi_skip2(beta, omega0);
    let s = one_axis_squeeze_from_ops(ops, SqueezeAngle::new(theta_cap))?;
    let jx2 = &ops.jx * &ops.jx;
    let jy2 = &ops.jy * &ops.jy;
    let rotated = &s * jy2 * s.adjoint();
    let a = (jx2 - rotated).map(|z| z * I * C64::from(chi / 4.0 * d_theta_cap));
    ConnectionStep::new(a)
}

/// Closed-form two-axis connection along the equator (j = 1, θ = π/2):
///
/// `A_U = χ·i·[[−sin²4/2, 0, e^{iφ}sin8/4], [0,0,0],
///             [e^{−iφ}sin8/4, 0, sin²4/2]]·dφ`, χ = chi_skip2.
pub fn connection_two_axis_equator(
    phi: f64,
    d_phi: f64,
    beta: f64,
    omega0: f64,
) -> Result<ConnectionStep> {
    if beta <= 0.0 {
        return Err(Error::NonPositiveBeta(beta));
    }
    let chi = chi_skip2(beta, omega0);
    let s4 = 4f64.sin();
    let s8 = 8f64.sin();
    let e_phi = (I * C64::from(phi)).exp();
    let mut m = CMatrix::zeros(3, 3);
    m[(0, 0)] = C64::from(-s4 * s4 / 2.0);
    m[(2, 2)] = C64::from(s4 * s4 / 2.0);
    m[(0, 2)] = e_phi * C64::from(s8 / 4.0);
    m[(2, 0)] = e_phi.conj() * C64::from(s8 / 4.0);
    ConnectionStep::new(m.map(|z| z * I * C64::from(chi * d_phi)))
}

/// √ρ of a positive-definite density matrix, through its eigendata.
fn sqrt_density(rho: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = hermitian_eigendecomposition(rho)?;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < 1e-14 {
        return Err(Error::RankDeficient(min));
    }
    Ok(spectral_apply(&values, &vectors, |x| C64::from(x.sqrt())))
}

/// One spectral-form connection step from three density-matrix samples:
/// d√ρ is the central difference √ρ(end) − √ρ(start) about the midpoint.
pub fn connection_spectral_step(
    rho_start: &CMatrix,
    rho_mid: &CMatrix,
    rho_end: &CMatrix,
) -> Result<ConnectionStep> {
    let (values, vectors) = hermitian_eigendecomposition(rho_mid)?;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < 1e-14 {
        return Err(Error::RankDeficient(min));
    }
    let sqrt_mid = spectral_apply(&values, &vectors, |x| C64::from(x.sqrt()));
    let d_sqrt = sqrt_density(rho_end)? - sqrt_density(rho_start)?;
    let commutator = &d_sqrt * &sqrt_mid - &sqrt_mid * &d_sqrt;
    // project onto the eigenbasis and divide by λ_m + λ_n
    let in_basis = vectors.adjoint() * commutator * &vectors;
    let dim = values.len();
    let scaled = CMatrix::from_fn(dim, dim, |r, c| {
        -in_basis[(r, c)] / C64::from(values[r] + values[c])
    });
    ConnectionStep::new(&vectors * scaled * vectors.adjoint())
}

/// Spectral connection for one path segment, with densities supplied by a
/// sampler. The independent cross-check for every closed form above.
pub fn connection_spectral(
    rho_sampler: &dyn Fn(&PathPoint) -> Result<CMatrix>,
    path: &ParameterPath,
    segment_index: usize,
) -> Result<ConnectionStep> {
    let seg = path.segment(segment_index);
    connection_spectral_step(
        &rho_sampler(&seg.start)?,
        &rho_sampler(&seg.mid)?,
        &rho_sampler(&seg.end)?,
    )
}

/// Options controlling the Trotter evaluation of a holonomy.
#[derive(Debug, Clone, Copy)]
pub struct HolonomyOptions {
    pub n_steps: usize,
    /// Double the step count until the phase moves by less than `phase_tol`
    /// (mod 2π) or `max_steps` is exceeded.
    pub refine: bool,
    pub phase_tol: f64,
    pub max_steps: usize,
}

impl Default for HolonomyOptions {
    fn default() -> Self {
        HolonomyOptions {
            n_steps: 4096,
            refine: false,
            phase_tol: 1e-6,
            max_steps: 1 << 20,
        }
    }
}

/// Path-ordered product result.
#[derive(Debug, Clone)]
pub struct HolonomyResult {
    pub holonomy: CMatrix,
    /// arg Tr[ρ(0)·holonomy], principal branch (−π, π].
    pub phase: f64,
    pub trace_magnitude: f64,
    pub n_steps: usize,
    /// True when doubling the step count moved the phase by < phase_tol.
    pub converged: bool,
}

fn product_once(
    path: &ParameterPath,
    connection: &dyn Fn(&PathSegment) -> Result<ConnectionStep>,
    rho0: &CMatrix,
) -> Result<(CMatrix, f64, f64)> {
    let dim = rho0.nrows();
    let mut u = CMatrix::identity(dim, dim);
    for k in 0..path.n_segments() {
        let step = connection(&path.segment(k))?;
        let factor = matrix_exponential(&step.a_dt.map(|z| -z))?;
        // path ordering: later steps multiply on the left
        u = factor * u;
    }
    let tr = (rho0 * &u).trace();
    let magnitude = tr.norm();
    if magnitude < 1e-12 {
        return Err(Error::PhaseUndefined(magnitude));
    }
    Ok((u, principal(tr.arg()), magnitude))
}

/// Evaluate `𝒫exp(−∮A_U)` over a closed path by a midpoint Trotter product
/// and return the Uhlmann phase arg Tr[ρ(0)·holonomy].
pub fn holonomy(
    path: &ParameterPath,
    connection: &dyn Fn(&PathSegment) -> Result<ConnectionStep>,
    rho0: &CMatrix,
    opts: &HolonomyOptions,
) -> Result<HolonomyResult> {
    if !path.closed {
        return Err(Error::InvalidSpec("holonomy requires a closed path".into()));
    }
    if path.n_segments() < 16 {
        return Err(Error::InvalidSpec(format!(
            "holonomy needs at least 16 steps (got {})",
            path.n_segments()
        )));
    }
    let (mut u, mut phase, mut magnitude) = product_once(path, connection, rho0)?;
    if !opts.refine {
        return Ok(HolonomyResult {
            holonomy: u,
            phase,
            trace_magnitude: magnitude,
            n_steps: path.n_segments(),
            converged: false,
        });
    }
    let mut current = path.clone();
    loop {
        let refined = current.refine();
        let (u2, phase2, magnitude2) = product_once(&refined, connection, rho0)?;
        let moved = mod_distance(phase, phase2);
        u = u2;
        phase = phase2;
        magnitude = magnitude2;
        if moved < opts.phase_tol {
            return Ok(HolonomyResult {
                holonomy: u,
                phase,
                trace_magnitude: magnitude,
                n_steps: refined.n_segments(),
                converged: true,
            });
        }
        if refined.n_segments() * 2 > opts.max_steps {
            return Ok(HolonomyResult {
                holonomy: u,
                phase,
                trace_magnitude: magnitude,
                n_steps: refined.n_segments(),
                converged: false,
            });
        }
        current = refined;
    }
}

/// Loop families exposed to the scan layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoopSpec {
    /// Fixed-θ circle for spin j, transported by D(ζ).
    Css { j: SpinJ, theta: f64 },
    /// Θ: 0 → 4π one-axis squeezing loop, j = 1.
    OneAxis,
    /// θ = π/2 equator circle under two-axis squeezing, j = 1.
    TwoAxisEquator,
}

impl LoopSpec {
    pub fn spin(&self) -> SpinJ {
        match self {
            LoopSpec::Css { j, .. } => *j,
            _ => SpinJ::from_two_j(2).unwrap(),
        }
    }
}

/// Which connection drives the Trotter product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionMethod {
    ClosedForm,
    Spectral,
}

/// Density matrix transported along a family, ρ(p) = U(p) ρ_thermal U†(p).
pub fn density_at(
    spec: &LoopSpec,
    ops: &SpinOperatorSet,
    rho_thermal: &CMatrix,
    point: &PathPoint,
) -> Result<CMatrix> {
    let u = match (spec, point) {
        (LoopSpec::Css { .. }, PathPoint::Sphere(p)) => displacement_from_ops(ops, *p)?,
        (LoopSpec::OneAxis, PathPoint::Squeeze(a)) => one_axis_squeeze_from_ops(ops, *a)?,
        (LoopSpec::TwoAxisEquator, PathPoint::Sphere(p)) => two_axis_squeeze_from_ops(ops, *p)?,
        _ => {
            return Err(Error::InvalidSpec(
                "path point does not match family".into(),
            ))
        }
    };
    Ok(&u * rho_thermal * u.adjoint())
}

/// Trotter-evaluated Uhlmann phase for one loop family at one temperature.
pub fn uhlmann_loop(
    spec: &LoopSpec,
    beta: f64,
    omega0: f64,
    method: ConnectionMethod,
    opts: &HolonomyOptions,
) -> Result<HolonomyResult> {
    if beta * omega0 > 1.0 / TROTTER_TEMPERATURE_FLOOR {
        return Err(Error::TemperatureTooLow);
    }
    let j = spec.spin();
    let ops = build_spin_operators(j);
    let thermal = thermal_state(j, beta, omega0)?;

    let path = match spec {
        LoopSpec::Css { theta, .. } => ParameterPath::css_circle(*theta, opts.n_steps)?,
        LoopSpec::OneAxis => ParameterPath::one_axis_loop(opts.n_steps)?,
        LoopSpec::TwoAxisEquator => ParameterPath::two_axis_equator(opts.n_steps)?,
    };
    let rho0 = density_at(spec, &ops, &thermal.rho, &path.samples[0])?;

    match method {
        ConnectionMethod::ClosedForm => {
            let connection = |seg: &PathSegment| -> Result<ConnectionStep> {
                match (spec, &seg.mid, &seg.start, &seg.end) {
                    (
                        LoopSpec::Css { .. },
                        PathPoint::Sphere(m),
                        PathPoint::Sphere(s),
                        PathPoint::Sphere(e),
                    ) => connection_css(&ops, *m, e.theta - s.theta, e.phi - s.phi, beta, omega0),
                    (
                        LoopSpec::OneAxis,
                        PathPoint::Squeeze(m),
                        PathPoint::Squeeze(s),
                        PathPoint::Squeeze(e),
                    ) => connection_one_axis(
                        &ops,
                        m.theta_cap,
                        e.theta_cap - s.theta_cap,
                        beta,
                        omega0,
                    ),
                    (
                        LoopSpec::TwoAxisEquator,
                        PathPoint::Sphere(m),
                        PathPoint::Sphere(s),
                        PathPoint::Sphere(e),
                    ) => connection_two_axis_equator(m.phi, e.phi - s.phi, beta, omega0),
                    _ => Err(Error::InvalidSpec("path/family mismatch".into())),
                }
            };
            holonomy(&path, &connection, &rho0, opts)
        }
        ConnectionMethod::Spectral => {
            let sampler =
                |p: &PathPoint| -> Result<CMatrix> { density_at(spec, &ops, &thermal.rho, p) };
            let connection = |seg: &PathSegment| -> Result<ConnectionStep> {
                connection_spectral_step(
                    &sampler(&seg.start)?,
                    &sampler(&seg.mid)?,
                    &sampler(&seg.end)?,
                )
            };
            holonomy(&path, &connection, &rho0, opts)
        }
    }
}

/// Closed-form Uhlmann phase of the CSS equator loop:
/// `θ_U = arg Tr[(1/Z) e^{βω₀J_x} e^{2πiχJ_z}]`, χ = chi_nearest.
///
/// The ordered exponential collapses because J_z is constant along the
/// equator; the trace is real, so the phase is exactly 0 or π. Evaluated
/// spectrally with shifted weights so large βω₀ cannot overflow.
pub fn uhlmann_phase_css_equator_closed(j: SpinJ, beta: f64, omega0: f64) -> Result<f64> {
    let trace = css_equator_closed_trace(j, beta, omega0)?;
    if trace.norm() < 1e-12 {
        return Err(Error::PhaseUndefined(trace.norm()));
    }
    Ok(principal(trace.arg()))
}

/// The normalized trace behind [`uhlmann_phase_css_equator_closed`]; its
/// magnitude vanishes exactly at the critical temperatures.
pub fn css_equator_closed_trace(j: SpinJ, beta: f64, omega0: f64) -> Result<C64> {
    if beta <= 0.0 {
        return Err(Error::NonPositiveBeta(beta));
    }
    let x = beta * omega0;
    let chi = chi_nearest(beta, omega0);
    let ops = build_spin_operators(j);
    let (values, vectors) = hermitian_eigendecomposition(&ops.jx)?;

    // Tr[e^{xJ_x} e^{2πiχJ_z}] / Z = Σ_k w_k ⟨v_k|e^{2πiχJ_z}|v_k⟩ with
    // w_k ∝ e^{x λ_k}, normalized after shifting by the largest exponent.
    let shift = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = values.iter().map(|l| ((l - shift) * x).exp()).collect();
    let norm: f64 = weights.iter().sum();

    let mut trace = C64::from(0.0);
    for (k, w) in weights.iter().enumerate() {
        let v = vectors.column(k);
        let mut overlap = C64::from(0.0);
        for (row, m) in j.m_values().enumerate() {
            overlap += v[row].conj() * v[row] * (I * C64::from(TAU * chi * m)).exp();
        }
        trace += C64::from(w / norm) * overlap;
    }
    Ok(trace)
}

/// Berry phase of the lowest-weight coherent state around a fixed-θ circle:
/// `4πj sin²(θ/2)` reduced to the principal branch. This is the T → 0 limit
/// of the CSS Uhlmann phase.
pub fn berry_phase_css(j: SpinJ, theta: f64) -> f64 {
    principal(4.0 * PI * j.j() * (theta / 2.0).sin().powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, unitarity_defect};

    fn sj(two_j: u32) -> SpinJ {
        SpinJ::from_two_j(two_j).unwrap()
    }

    #[test]
    fn chi_nearest_values() {
        assert!(chi_nearest(1e-12, 1.0).abs() < 1e-9);
        assert!((chi_nearest(2.0, 1.0) - 0.351945726336).abs() < 1e-10);
        assert!((chi_nearest(1e4, 1.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_skip2_values() {
        assert!(chi_skip2(1e-12, 1.0).abs() < 1e-9);
        // (2 sinh ½)² / (2 cosh 1) evaluated directly
        let direct = (2.0 * 0.5f64.sinh()).powi(2) / (2.0 * 1.0f64.cosh());
        assert!((chi_skip2(1.0, 1.0) - direct).abs() < 1e-14);
        assert!((chi_skip2(1.0, 1.0) - 0.351945726336).abs() < 1e-10);
        assert!((chi_skip2(1e4, 1.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn css_connection_reduces_to_jz_on_equator() {
        let ops = build_spin_operators(sj(3));
        let step = connection_css(
            &ops,
            SpherePoint::new(PI / 2.0, 0.3).unwrap(),
            0.0,
            0.01,
            2.0,
            1.0,
        )
        .unwrap();
        let chi = chi_nearest(2.0, 1.0);
        let expected = ops.jz.map(|z| z * I * C64::from(chi * 0.01));
        assert!(max_abs(&(step.a_dt - expected)) < 1e-14);
    }

    #[test]
    fn css_connection_vanishes_without_displacement() {
        let ops = build_spin_operators(sj(3));
        let step = connection_css(
            &ops,
            SpherePoint::new(1.0, 0.3).unwrap(),
            0.0,
            0.0,
            1.0,
            1.0,
        )
        .unwrap();
        assert!(max_abs(&step.a_dt) < 1e-15);
        // sinθ factor kills the dφ part at the pole
        let step = connection_css(
            &ops,
            SpherePoint::new(0.0, 0.3).unwrap(),
            0.0,
            0.01,
            1.0,
            1.0,
        )
        .unwrap();
        assert!(max_abs(&step.a_dt) < 1e-15);
    }

    #[test]
    fn one_axis_connection_at_zero_squeezing() {
        let ops = build_spin_operators(sj(2));
        let step = connection_one_axis(&ops, 0.0, 0.01, 1.0, 1.0).unwrap();
        let chi = chi_skip2(1.0, 1.0);
        let jx2 = &ops.jx * &ops.jx;
        let jy2 = &ops.jy * &ops.jy;
        let expected = (jx2 - jy2).map(|z| z * I * C64::from(chi / 4.0 * 0.01));
        assert!(max_abs(&(step.a_dt - expected)) < 1e-14);
    }

    #[test]
    fn one_axis_connection_zero_step_and_antihermiticity() {
        let ops = build_spin_operators(sj(2));
        let zero = connection_one_axis(&ops, 1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(max_abs(&zero.a_dt) < 1e-15);
        let step = connection_one_axis(&ops, 1.7, 0.01, 1.0, 1.0).unwrap();
        assert!(anti_hermitian_defect(&step.a_dt) < 1e-12);
    }

    #[test]
    fn one_axis_connection_rejects_other_spins() {
        let ops = build_spin_operators(sj(3));
        assert!(matches!(
            connection_one_axis(&ops, 1.0, 0.01, 1.0, 1.0),
            Err(Error::UnsupportedSpin { .. })
        ));
    }

    #[test]
    fn two_axis_connection_limits() {
        let zero_step = connection_two_axis_equator(0.4, 0.0, 1.0, 1.0).unwrap();
        assert!(max_abs(&zero_step.a_dt) < 1e-15);
        let hot = connection_two_axis_equator(0.4, 0.01, 1e-9, 1.0).unwrap();
        assert!(max_abs(&hot.a_dt) < 1e-12);
    }

    fn css_sampler(j: SpinJ, beta: f64) -> impl Fn(&PathPoint) -> Result<CMatrix> {
        let ops = build_spin_operators(j);
        let thermal = thermal_state(j, beta, 1.0).unwrap();
        move |p: &PathPoint| density_at(&LoopSpec::Css { j, theta: 0.0 }, &ops, &thermal.rho, p)
    }

    #[test]
    fn spectral_connection_is_zero_on_constant_path() {
        let sampler = css_sampler(sj(3), 1.0);
        let p = PathPoint::Sphere(SpherePoint::new(1.0, 0.5).unwrap());
        let rho = sampler(&p).unwrap();
        let step = connection_spectral_step(&rho, &rho, &rho).unwrap();
        assert!(max_abs(&step.a_dt) < 1e-12);
    }

    #[test]
    fn spectral_connection_is_anti_hermitian() {
        let sampler = css_sampler(sj(3), 1.3);
        let at = |th: f64, ph: f64| {
            sampler(&PathPoint::Sphere(SpherePoint::new(th, ph).unwrap())).unwrap()
        };
        let step =
            connection_spectral_step(&at(1.1, 0.695), &at(1.1, 0.7), &at(1.1, 0.705)).unwrap();
        assert!(anti_hermitian_defect(&step.a_dt) < 1e-10);
    }

    #[test]
    fn spectral_connection_indexed_wrapper_matches_step_form() {
        let j = sj(3);
        let path = ParameterPath::css_circle(1.1, 64).unwrap();
        let sampler = css_sampler(j, 1.3);
        let step = connection_spectral(&sampler, &path, 17).unwrap();
        let seg = path.segment(17);
        let direct = connection_spectral_step(
            &sampler(&seg.start).unwrap(),
            &sampler(&seg.mid).unwrap(),
            &sampler(&seg.end).unwrap(),
        )
        .unwrap();
        assert!(max_abs(&(step.a_dt - direct.a_dt)) < 1e-15);
    }

    #[test]
    fn closed_paths_return_to_their_initial_unitary() {
        let j = sj(2);
        let ops = build_spin_operators(j);
        let thermal = thermal_state(j, 1.0, 1.0).unwrap();
        for spec in [
            LoopSpec::Css { j, theta: 1.1 },
            LoopSpec::OneAxis,
            LoopSpec::TwoAxisEquator,
        ] {
            let path = match spec {
                LoopSpec::Css { theta, .. } => ParameterPath::css_circle(theta, 32).unwrap(),
                LoopSpec::OneAxis => ParameterPath::one_axis_loop(32).unwrap(),
                LoopSpec::TwoAxisEquator => ParameterPath::two_axis_equator(32).unwrap(),
            };
            assert!(path.closed);
            let first = density_at(&spec, &ops, &thermal.rho, &path.samples[0]).unwrap();
            let last = density_at(&spec, &ops, &thermal.rho, path.samples.last().unwrap()).unwrap();
            assert!(max_abs(&(first - last)) < 1e-10, "{spec:?}");
        }
    }

    #[test]
    fn spectral_connection_rejects_rank_deficiency() {
        let j = sj(2);
        let dim = j.dim();
        let mut rho = CMatrix::zeros(dim, dim);
        rho[(0, 0)] = C64::from(1.0); // pure state: rank 1
        assert!(matches!(
            connection_spectral_step(&rho, &rho, &rho),
            Err(Error::RankDeficient(_))
        ));
    }

    /// Helper: max-norm difference between closed-form and spectral steps for
    /// a d φ step of the given size.
    fn css_step_discrepancy(j: SpinJ, beta: f64, theta: f64, phi: f64, d: f64) -> f64 {
        let ops = build_spin_operators(j);
        let sampler = css_sampler(j, beta);
        let at =
            |ph: f64| sampler(&PathPoint::Sphere(SpherePoint::new(theta, ph).unwrap())).unwrap();
        let closed = connection_css(
            &ops,
            SpherePoint::new(theta, phi).unwrap(),
            0.0,
            d,
            beta,
            1.0,
        )
        .unwrap();
        let spectral =
            connection_spectral_step(&at(phi - d / 2.0), &at(phi), &at(phi + d / 2.0)).unwrap();
        max_abs(&(closed.a_dt - spectral.a_dt))
    }

    #[test]
    fn css_closed_form_matches_spectral_at_second_order() {
        // equator point and an off-equator point, for two spins
        for (two_j, theta) in [(3u32, PI / 2.0), (3, PI / 3.0), (2, 1.1)] {
            let coarse = css_step_discrepancy(sj(two_j), 1.0, theta, 0.7, 1e-2);
            let fine = css_step_discrepancy(sj(two_j), 1.0, theta, 0.7, 5e-3);
            assert!(coarse < 1e-4, "2j={two_j}, theta={theta}: {coarse}");
            // midpoint sampling is second order: halving the step should cut
            // the discrepancy by ~4 (allow slack for higher-order terms)
            assert!(fine < coarse / 3.0, "2j={two_j}: {coarse} -> {fine}");
        }
    }

    #[test]
    fn one_axis_closed_form_matches_spectral() {
        let j = sj(2);
        let ops = build_spin_operators(j);
        let thermal = thermal_state(j, 1.0, 1.0).unwrap();
        let sampler = |p: &PathPoint| density_at(&LoopSpec::OneAxis, &ops, &thermal.rho, p);
        for theta_cap in [0.4, 1.7, 3.0, 9.0] {
            let d = 1e-2;
            let at = |tc: f64| sampler(&PathPoint::Squeeze(SqueezeAngle::new(tc))).unwrap();
            let closed = connection_one_axis(&ops, theta_cap, d, 1.0, 1.0).unwrap();
            let spectral = connection_spectral_step(
                &at(theta_cap - d / 2.0),
                &at(theta_cap),
                &at(theta_cap + d / 2.0),
            )
            .unwrap();
            assert!(max_abs(&(closed.a_dt - spectral.a_dt)) < 1e-4);
        }
    }

    #[test]
    fn two_axis_closed_form_matches_spectral() {
        let j = sj(2);
        let ops = build_spin_operators(j);
        let thermal = thermal_state(j, 1.0, 1.0).unwrap();
        let sampler = |p: &PathPoint| density_at(&LoopSpec::TwoAxisEquator, &ops, &thermal.rho, p);
        let d = 1e-2;
        let at =
            |ph: f64| sampler(&PathPoint::Sphere(SpherePoint::new(PI / 2.0, ph).unwrap())).unwrap();
        let closed = connection_two_axis_equator(0.7, d, 1.0, 1.0).unwrap();
        let spectral =
            connection_spectral_step(&at(0.7 - d / 2.0), &at(0.7), &at(0.7 + d / 2.0)).unwrap();
        assert!(max_abs(&(closed.a_dt - spectral.a_dt)) < 1e-4);
    }

    #[test]
    fn holonomy_of_constant_connection_free_path() {
        // all samples equal: spectral steps vanish and the holonomy is 1
        let j = sj(2);
        let ops = build_spin_operators(j);
        let thermal = thermal_state(j, 1.0, 1.0).unwrap();
        let point = PathPoint::Sphere(SpherePoint::new(1.0, 0.0).unwrap());
        let path = ParameterPath {
            family: PathFamily::Css,
            samples: vec![point; 33],
            closed: true,
        };
        let rho0 =
            density_at(&LoopSpec::Css { j, theta: 1.0 }, &ops, &thermal.rho, &point).unwrap();
        let sampler =
            |p: &PathPoint| density_at(&LoopSpec::Css { j, theta: 1.0 }, &ops, &thermal.rho, p);
        let connection = |seg: &PathSegment| {
            connection_spectral_step(
                &sampler(&seg.start)?,
                &sampler(&seg.mid)?,
                &sampler(&seg.end)?,
            )
        };
        let result = holonomy(
            &path,
            &connection,
            &rho0,
            &HolonomyOptions {
                n_steps: 32,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(max_abs(&(result.holonomy.clone() - CMatrix::identity(3, 3))) < 1e-10);
        assert!(result.phase.abs() < 1e-10);
    }

    #[test]
    fn css_equator_phase_plateaus() {
        let j = sj(3);
        // π at low temperature, 0 past the first transition, π again between
        // the second and third, 0 at high temperature
        for (temperature, expected) in [(0.2, PI), (0.35, 0.0), (0.45, PI), (2.0, 0.0)] {
            let result = uhlmann_loop(
                &LoopSpec::Css { j, theta: PI / 2.0 },
                1.0 / temperature,
                1.0,
                ConnectionMethod::ClosedForm,
                &HolonomyOptions {
                    n_steps: 256,
                    refine: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(
                mod_distance(result.phase, expected) < 1e-3,
                "T={temperature}: got {}",
                result.phase
            );
            assert!(result.converged);
        }
    }

    #[test]
    fn css_equator_trotter_matches_closed_form() {
        let j = sj(3);
        for temperature in [0.2, 0.35, 0.45, 1.0] {
            let closed = uhlmann_phase_css_equator_closed(j, 1.0 / temperature, 1.0).unwrap();
            let trotter = uhlmann_loop(
                &LoopSpec::Css { j, theta: PI / 2.0 },
                1.0 / temperature,
                1.0,
                ConnectionMethod::ClosedForm,
                &HolonomyOptions {
                    n_steps: 256,
                    refine: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(
                mod_distance(trotter.phase, closed) < 1e-4,
                "T={temperature}: trotter {} vs closed {}",
                trotter.phase,
                closed
            );
        }
    }

    #[test]
    fn holonomy_factors_stay_unitary() {
        let result = uhlmann_loop(
            &LoopSpec::Css {
                j: sj(3),
                theta: PI / 3.0,
            },
            1.0 / 0.3,
            1.0,
            ConnectionMethod::ClosedForm,
            &HolonomyOptions {
                n_steps: 4096,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(unitarity_defect(&result.holonomy) < 1e-8);
    }

    #[test]
    fn uhlmann_loop_refuses_temperatures_below_floor() {
        let result = uhlmann_loop(
            &LoopSpec::Css {
                j: sj(2),
                theta: PI / 3.0,
            },
            1.0 / 5e-4,
            1.0,
            ConnectionMethod::ClosedForm,
            &HolonomyOptions::default(),
        );
        assert!(matches!(result, Err(Error::TemperatureTooLow)));
    }

    #[test]
    fn holonomy_rejects_open_or_short_paths() {
        let j = sj(2);
        let ops = build_spin_operators(j);
        let thermal = thermal_state(j, 1.0, 1.0).unwrap();
        let mut path = ParameterPath::css_circle(1.0, 32).unwrap();
        path.closed = false;
        let rho0 = thermal.rho.clone();
        let connection = |_seg: &PathSegment| ConnectionStep::new(CMatrix::zeros(3, 3));
        assert!(holonomy(&path, &connection, &rho0, &HolonomyOptions::default()).is_err());
        let short = ParameterPath::css_circle(1.0, 8).unwrap();
        let _ = &ops;
        assert!(holonomy(&short, &connection, &rho0, &HolonomyOptions::default()).is_err());
    }

    #[test]
    fn trotter_phase_errors_shrink_under_doubling() {
        let j = sj(3);
        let spec = LoopSpec::Css { j, theta: PI / 3.0 };
        let phase_at = |n: usize| {
            uhlmann_loop(
                &spec,
                1.0 / 0.2,
                1.0,
                ConnectionMethod::ClosedForm,
                &HolonomyOptions {
                    n_steps: n,
                    ..Default::default()
                },
            )
            .unwrap()
            .phase
        };
        let phases: Vec<f64> = [256, 512, 1024, 2048, 4096]
            .iter()
            .map(|&n| phase_at(n))
            .collect();
        // |phase(n) − phase(2n)| decreases monotonically away from criticality
        let mut previous = f64::INFINITY;
        for (k, pair) in phases.windows(2).enumerate() {
            let delta = mod_distance(pair[0], pair[1]);
            assert!(delta <= previous + 1e-12, "doubling delta grew at step {k}");
            previous = delta;
        }
    }

    #[test]
    fn equator_closed_phase_limits() {
        let j = sj(3);
        // β → 0 (χ → 0): holonomy → 1, phase → 0
        assert!(
            uhlmann_phase_css_equator_closed(j, 1e-9, 1.0)
                .unwrap()
                .abs()
                < 1e-6
        );
        assert!((uhlmann_phase_css_equator_closed(j, 1.0 / 0.2, 1.0).unwrap() - PI).abs() < 1e-12);
        assert!(
            uhlmann_phase_css_equator_closed(j, 1.0 / 0.35, 1.0)
                .unwrap()
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn berry_phase_values() {
        assert!((berry_phase_css(sj(3), PI / 2.0) - PI).abs() < 1e-12); // 3π ≡ π
        assert!(berry_phase_css(sj(3), 0.0).abs() < 1e-15);
        assert!((berry_phase_css(sj(1), PI / 2.0) - PI).abs() < 1e-12);
        assert!((berry_phase_css(sj(2), PI / 3.0) - PI).abs() < 1e-12);
    }

    #[test]
    fn trotter_reaches_berry_limit_at_low_temperature() {
        // T = 0.02, j = 1, θ = π/3: an off-equator loop where the ordered
        // product genuinely fails to commute
        let result = uhlmann_loop(
            &LoopSpec::Css {
                j: sj(2),
                theta: PI / 3.0,
            },
            1.0 / 0.02,
            1.0,
            ConnectionMethod::ClosedForm,
            &HolonomyOptions {
                n_steps: 1024,
                refine: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(mod_distance(result.phase, berry_phase_css(sj(2), PI / 3.0)) < 0.02);
    }

    #[test]
    fn spectral_and_closed_loops_agree_off_equator() {
        let spec = LoopSpec::Css {
            j: sj(2),
            theta: PI / 3.0,
        };
        let opts = HolonomyOptions {
            n_steps: 512,
            refine: true,
            ..Default::default()
        };
        let closed =
            uhlmann_loop(&spec, 1.0 / 0.2, 1.0, ConnectionMethod::ClosedForm, &opts).unwrap();
        let spectral =
            uhlmann_loop(&spec, 1.0 / 0.2, 1.0, ConnectionMethod::Spectral, &opts).unwrap();
        assert!(
            mod_distance(closed.phase, spectral.phase) < 1e-4,
            "closed {} vs spectral {}",
            closed.phase,
            spectral.phase
        );
    }

    #[test]
    fn spectral_and_closed_loops_agree_for_squeezing_families() {
        let opts = HolonomyOptions {
            n_steps: 256,
            refine: true,
            ..Default::default()
        };
        for spec in [LoopSpec::OneAxis, LoopSpec::TwoAxisEquator] {
            let closed =
                uhlmann_loop(&spec, 1.0 / 0.5, 1.0, ConnectionMethod::ClosedForm, &opts).unwrap();
            let spectral =
                uhlmann_loop(&spec, 1.0 / 0.5, 1.0, ConnectionMethod::Spectral, &opts).unwrap();
            assert!(
                mod_distance(closed.phase, spectral.phase) < 1e-4,
                "{spec:?}: closed {} vs spectral {}",
                closed.phase,
                spectral.phase
            );
        }
    }

    #[test]
    fn one_axis_loop_jumps_near_known_critical_temperature() {
        let opts = HolonomyOptions {
            n_steps: 1024,
            refine: true,
            ..Default::default()
        };
        let below = uhlmann_loop(
            &LoopSpec::OneAxis,
            1.0 / 0.6,
            1.0,
            ConnectionMethod::ClosedForm,
            &opts,
        )
        .unwrap();
        let above = uhlmann_loop(
            &LoopSpec::OneAxis,
            1.0 / 0.75,
            1.0,
            ConnectionMethod::ClosedForm,
            &opts,
        )
        .unwrap();
        assert!(
            mod_distance(below.phase, PI) < 1e-2,
            "below: {}",
            below.phase
        );
        assert!(
            mod_distance(above.phase, 0.0) < 1e-2,
            "above: {}",
            above.phase
        );
    }

    #[test]
    fn all_families_trivial_at_infinite_temperature() {
        let opts = HolonomyOptions {
            n_steps: 512,
            refine: true,
            ..Default::default()
        };
        let beta = 1.0 / 100.0;
        for spec in [
            LoopSpec::Css {
                j: sj(3),
                theta: PI / 2.0,
            },
            LoopSpec::OneAxis,
            LoopSpec::TwoAxisEquator,
        ] {
            let result =
                uhlmann_loop(&spec, beta, 1.0, ConnectionMethod::ClosedForm, &opts).unwrap();
            assert!(result.phase.abs() < 1e-3, "{spec:?}: {}", result.phase);
        }
    }

    #[test]
    fn two_axis_equator_phase_is_smooth_in_temperature() {
        let opts = HolonomyOptions {
            n_steps: 256,
            refine: true,
            ..Default::default()
        };
        let n = 50;
        let (lo, hi): (f64, f64) = (0.05, 20.0);
        let mut previous: Option<f64> = None;
        for k in 0..n {
            let t = lo * (hi / lo).powf(k as f64 / (n - 1) as f64);
            let result = uhlmann_loop(
                &LoopSpec::TwoAxisEquator,
                1.0 / t,
                1.0,
                ConnectionMethod::ClosedForm,
                &opts,
            )
            .unwrap();
            if let Some(prev) = previous {
                assert!(
                    mod_distance(result.phase, prev) < 0.2,
                    "jump at T={t}: {} -> {}",
                    prev,
                    result.phase
                );
            }
            previous = Some(result.phase);
        }
    }
}
