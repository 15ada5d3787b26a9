//! Parameter sweeps, jump detection, critical-point bisection, 2-D grids,
//! and deterministic CSV/JSON export.
//!
//! Sweep points are evaluated independently (in parallel, gathered by index)
//! and failures at single points become flagged rows, never sweep failures.
//! Phases are exported in [0, 2π); jump detection uses mod-2π distances.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::igp::{
    igp_css_closed_value, igp_numeric_with_magnitude, igp_one_axis_closed_value,
    igp_one_axis_spectral_value, igp_two_axis_closed_value, EvolutionSpec,
};
use crate::phase::{mod_distance, principal, to_plot_range};
use crate::spin::SpinJ;
use crate::uhlmann::{
    css_equator_closed_trace, uhlmann_loop, ConnectionMethod, HolonomyOptions, LoopSpec,
};

/// Full-rank floor: Trotter quantities refuse temperatures below this.
pub const TEMPERATURE_FLOOR: f64 = crate::uhlmann::TROTTER_TEMPERATURE_FLOOR;
/// Trace magnitudes below this are recorded as critical candidates.
pub const CRITICAL_TRACE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Uhlmann,
    Igp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Css,
    OneAxis,
    TwoAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Sweep the temperature T/ω₀ with the endpoint fixed.
    Temperature,
    /// Sweep the family endpoint (θ, θ_f or Θ_f) at fixed temperature.
    Endpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

/// Evaluation route for a swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed form when one exists, Trotter otherwise.
    Auto,
    Closed,
    Trotter,
    /// Trotter holonomy driven by the spectral connection (Uhlmann), or the
    /// overlap-sum formula (one-axis IGP).
    Spectral,
    /// Direct trace of the transported unitary, gated on parallel transport
    /// (IGP only).
    Numeric,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub scale: Scale,
}

impl AxisRange {
    pub fn linear(lo: f64, hi: f64, n: usize) -> Self {
        AxisRange {
            lo,
            hi,
            n,
            scale: Scale::Linear,
        }
    }

    pub fn log(lo: f64, hi: f64, n: usize) -> Self {
        AxisRange {
            lo,
            hi,
            n,
            scale: Scale::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        // partial_cmp keeps NaN bounds invalid
        if self.lo.partial_cmp(&self.hi) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidSpec(format!(
                "range needs lo < hi (got {} .. {})",
                self.lo, self.hi
            )));
        }
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!(
                "range needs n >= 2 (got {})",
                self.n
            )));
        }
        if self.scale == Scale::Log && self.lo <= 0.0 {
            return Err(Error::InvalidSpec("log spacing needs lo > 0".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.lo + (self.hi - self.lo) * t,
                    Scale::Log => self.lo * (self.hi / self.lo).powf(t),
                }
            })
            .collect()
    }

    /// Spacing between adjacent samples near index k (for bracket widths).
    pub fn resolution(&self) -> f64 {
        match self.scale {
            Scale::Linear => (self.hi - self.lo) / (self.n - 1) as f64,
            Scale::Log => self.hi * (1.0 - (self.lo / self.hi).powf(1.0 / (self.n - 1) as f64)),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SolverOptions {
    pub n_steps: usize,
    pub refine: bool,
    pub jump_threshold: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            n_steps: 4096,
            refine: false,
            jump_threshold: FRAC_PI_2,
        }
    }
}

/// One 1-D sweep: which phase, along which family, over which axis.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub family: Family,
    pub two_j: u32,
    pub omega0: f64,
    /// Polar angle of the CSS Uhlmann loop.
    pub theta: f64,
    /// Azimuth of the CSS IGP longitude.
    pub phi: f64,
    /// IGP endpoint (θ_f for CSS/two-axis, Θ_f for one-axis) used when the
    /// axis is temperature.
    pub endpoint: f64,
    pub axis: Axis,
    pub range: AxisRange,
    /// Temperature T/ω₀ used when the axis is the endpoint.
    pub fixed_temperature: f64,
    pub method: Method,
    pub solver: SolverOptions,
}

impl SweepSpec {
    /// Sensible defaults per quantity/family; adjust fields afterwards.
    pub fn new(quantity: Quantity, family: Family) -> Self {
        let two_j = match family {
            Family::Css => 3,
            _ => 2,
        };
        let endpoint = match family {
            Family::Css => 3.0 * PI / 4.0,
            Family::OneAxis => 3.0 * PI,
            Family::TwoAxis => FRAC_PI_2,
        };
        SweepSpec {
            quantity,
            family,
            two_j,
            omega0: 1.0,
            theta: FRAC_PI_2,
            phi: 0.0,
            endpoint,
            axis: Axis::Temperature,
            range: AxisRange::linear(0.05, 1.0, 200),
            fixed_temperature: 1.0,
            method: Method::Auto,
            solver: SolverOptions::default(),
        }
    }

    pub fn spin(&self) -> Result<SpinJ> {
        SpinJ::from_two_j(self.two_j)
    }

    /// Resolve `Auto` and reject invalid quantity/family/method combinations.
    pub fn resolved_method(&self) -> Result<Method> {
        let resolved = match (self.quantity, self.method) {
            (Quantity::Uhlmann, Method::Auto) => {
                let equator = self.family == Family::Css
                    && self.axis == Axis::Temperature
                    && (self.theta - FRAC_PI_2).abs() < 1e-12;
                if equator {
                    Method::Closed
                } else {
                    Method::Trotter
                }
            }
            (Quantity::Igp, Method::Auto) => Method::Closed,
            (_, m) => m,
        };
        match (self.quantity, self.family, resolved) {
            (Quantity::Uhlmann, Family::Css, Method::Closed) => {
                if self.axis == Axis::Endpoint || (self.theta - FRAC_PI_2).abs() > 1e-12 {
                    return Err(Error::InvalidSpec(
                        "closed-form Uhlmann phase exists only on the equator loop".into(),
                    ));
                }
            }
            (Quantity::Uhlmann, _, Method::Closed) => {
                return Err(Error::InvalidSpec(
                    "closed-form Uhlmann phase exists only for the CSS equator".into(),
                ))
            }
            (Quantity::Uhlmann, _, Method::Trotter | Method::Spectral) => {}
            (Quantity::Uhlmann, _, Method::Numeric) => {
                return Err(Error::InvalidSpec(
                    "numeric method applies to the IGP only".into(),
                ))
            }
            (Quantity::Igp, _, Method::Closed | Method::Numeric) => {}
            (Quantity::Igp, Family::OneAxis, Method::Spectral) => {}
            (Quantity::Igp, _, Method::Spectral) => {
                return Err(Error::InvalidSpec(
                    "spectral IGP formula exists for the one-axis family only".into(),
                ))
            }
            (Quantity::Igp, _, Method::Trotter) => {
                return Err(Error::InvalidSpec("IGP is not a Trotter quantity".into()))
            }
            (_, _, Method::Auto) => unreachable!("Auto was resolved above"),
        }
        Ok(resolved)
    }

    pub fn validate(&self) -> Result<Method> {
        self.range.validate()?;
        let j = self.spin()?;
        match (self.quantity, self.family) {
            (Quantity::Uhlmann, Family::OneAxis | Family::TwoAxis)
            | (Quantity::Igp, Family::OneAxis | Family::TwoAxis)
                if j.two_j() != 2 =>
            {
                return Err(Error::UnsupportedSpin {
                    required: 2,
                    got: j.two_j(),
                });
            }
            _ => {}
        }
        if self.quantity == Quantity::Igp && self.family == Family::Css && self.two_j != 3 {
            return Err(Error::UnsupportedSpin {
                required: 3,
                got: self.two_j,
            });
        }
        let method = self.resolved_method()?;
        if self.quantity == Quantity::Uhlmann
            && self.axis == Axis::Endpoint
            && self.family != Family::Css
        {
            return Err(Error::InvalidSpec(
                "only the CSS Uhlmann loop has a sweepable endpoint (the loop angle θ)".into(),
            ));
        }
        let needs_floor = matches!(method, Method::Trotter | Method::Spectral | Method::Numeric);
        let min_temperature = match self.axis {
            Axis::Temperature => self.range.lo,
            Axis::Endpoint => self.fixed_temperature,
        };
        if needs_floor && min_temperature < TEMPERATURE_FLOOR {
            return Err(Error::InvalidSpec(format!(
                "temperatures below {TEMPERATURE_FLOOR} are outside the full-rank floor for \
                 Trotter/numeric quantities (got {min_temperature})"
            )));
        }
        if min_temperature <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "temperature must be positive (got {min_temperature})"
            )));
        }
        Ok(method)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Ok,
    Critical,
    Unconverged,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::Ok => "ok",
            Flag::Critical => "critical",
            Flag::Unconverged => "unconverged",
        }
    }
}

/// One evaluated sweep point. `phase` is on the internal branch (−π, π] and
/// is `None` exactly when the row is flagged critical.
#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub axis_value: f64,
    pub phase: Option<f64>,
    pub trace_magnitude: f64,
    pub flag: Flag,
}

/// A detected phase jump between adjacent well-defined rows.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JumpEvent {
    pub axis_value_lo: f64,
    pub axis_value_hi: f64,
    pub phase_lo: f64,
    pub phase_hi: f64,
    /// mod-2π distance between the bracketing phases.
    pub magnitude: f64,
}

#[derive(Debug, Clone)]
pub struct PhaseScan {
    pub spec: SweepSpec,
    pub rows: Vec<ScanRow>,
    pub jumps: Vec<JumpEvent>,
}

/// Evaluate one point of a sweep. Numerical failures become flagged rows.
fn eval_point(spec: &SweepSpec, method: Method, axis_value: f64) -> ScanRow {
    match eval_point_inner(spec, method, axis_value) {
        Ok((phase, magnitude, converged)) => {
            if magnitude < CRITICAL_TRACE_FLOOR {
                ScanRow {
                    axis_value,
                    phase: None,
                    trace_magnitude: magnitude,
                    flag: Flag::Critical,
                }
            } else {
                ScanRow {
                    axis_value,
                    phase: Some(phase),
                    trace_magnitude: magnitude,
                    flag: if converged {
                        Flag::Ok
                    } else {
                        Flag::Unconverged
                    },
                }
            }
        }
        Err(Error::PhaseUndefined(magnitude)) => ScanRow {
            axis_value,
            phase: None,
            trace_magnitude: magnitude,
            flag: Flag::Critical,
        },
        Err(_) => ScanRow {
            axis_value,
            phase: None,
            trace_magnitude: f64::NAN,
            flag: Flag::Critical,
        },
    }
}

fn eval_point_inner(spec: &SweepSpec, method: Method, axis_value: f64) -> Result<(f64, f64, bool)> {
    let (temperature, endpoint) = match spec.axis {
        Axis::Temperature => (axis_value, spec.endpoint),
        Axis::Endpoint => (spec.fixed_temperature, axis_value),
    };
    let beta = 1.0 / (temperature * spec.omega0);
    let j = spec.spin()?;

    match (spec.quantity, method) {
        (Quantity::Uhlmann, Method::Closed) => {
            let trace = css_equator_closed_trace(j, beta, spec.omega0)?;
            Ok((principal(trace.arg()), trace.norm(), true))
        }
        (Quantity::Uhlmann, Method::Trotter | Method::Spectral) => {
            let loop_spec = match spec.family {
                Family::Css => LoopSpec::Css {
                    j,
                    theta: if spec.axis == Axis::Endpoint {
                        endpoint
                    } else {
                        spec.theta
                    },
                },
                Family::OneAxis => LoopSpec::OneAxis,
                Family::TwoAxis => LoopSpec::TwoAxisEquator,
            };
            let connection = if method == Method::Spectral {
                ConnectionMethod::Spectral
            } else {
                ConnectionMethod::ClosedForm
            };
            let opts = HolonomyOptions {
                n_steps: spec.solver.n_steps,
                refine: spec.solver.refine,
                ..Default::default()
            };
            let result = uhlmann_loop(&loop_spec, beta, spec.omega0, connection, &opts)?;
            Ok((result.phase, result.trace_magnitude, result.converged))
        }
        (Quantity::Igp, Method::Closed) => match spec.family {
            Family::Css => {
                let value = igp_css_closed_value(j, endpoint, beta, spec.omega0)?;
                Ok((if value >= 0.0 { 0.0 } else { PI }, value.abs(), true))
            }
            Family::OneAxis => {
                let value = igp_one_axis_closed_value(endpoint, beta, spec.omega0)?;
                Ok((if value >= 0.0 { 0.0 } else { PI }, value.abs(), true))
            }
            Family::TwoAxis => {
                let value = igp_two_axis_closed_value(endpoint, beta, spec.omega0)?;
                Ok((principal(value.arg()), value.norm(), true))
            }
        },
        (Quantity::Igp, Method::Spectral) => {
            let value =
                igp_one_axis_spectral_value(endpoint, beta, spec.omega0, spec.solver.n_steps)?;
            Ok((principal(value.arg()), value.norm(), true))
        }
        (Quantity::Igp, Method::Numeric) => {
            let evolution = match spec.family {
                Family::Css => {
                    EvolutionSpec::css_longitude(j, endpoint, spec.phi, spec.solver.n_steps)?
                }
                Family::OneAxis => EvolutionSpec::one_axis(endpoint, spec.solver.n_steps)?,
                Family::TwoAxis => EvolutionSpec::two_axis_meridian(endpoint, spec.solver.n_steps)?,
            };
            let (phase, magnitude) = igp_numeric_with_magnitude(&evolution, beta, spec.omega0)?;
            Ok((phase, magnitude, true))
        }
        _ => Err(Error::InvalidSpec(
            "unsupported quantity/method combination".into(),
        )),
    }
}

/// Detect jumps between adjacent well-defined rows.
fn detect_jumps(rows: &[ScanRow], threshold: f64) -> Vec<JumpEvent> {
    let mut jumps = Vec::new();
    for pair in rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if let (Some(phase_a), Some(phase_b)) = (a.phase, b.phase) {
            let magnitude = mod_distance(phase_a, phase_b);
            if magnitude > threshold {
                jumps.push(JumpEvent {
                    axis_value_lo: a.axis_value,
                    axis_value_hi: b.axis_value,
                    phase_lo: phase_a,
                    phase_hi: phase_b,
                    magnitude,
                });
            }
        }
    }
    jumps
}

/// Run a 1-D sweep. Points are evaluated in parallel and gathered by index,
/// so the output ordering is deterministic.
pub fn sweep(spec: &SweepSpec) -> Result<PhaseScan> {
    let method = spec.validate()?;
    let values = spec.range.values();
    let rows: Vec<ScanRow> = values
        .par_iter()
        .map(|&v| eval_point(spec, method, v))
        .collect();
    let jumps = detect_jumps(&rows, spec.solver.jump_threshold);
    Ok(PhaseScan {
        spec: spec.clone(),
        rows,
        jumps,
    })
}

/// A refined critical-point estimate from bisection.
#[derive(Debug, Clone, Copy)]
pub struct CriticalEstimate {
    pub location: f64,
    pub bracket: (f64, f64),
    pub phase_below: f64,
    pub phase_above: f64,
}

/// Bisect a phase jump inside `(lo, hi)` along the sweep axis. The bracket
/// ends must carry well-defined phases differing by more than the jump
/// threshold. Closed forms refine to width 1e−4, Trotter quantities to 1e−3.
pub fn find_critical(spec: &SweepSpec, lo: f64, hi: f64) -> Result<CriticalEstimate> {
    let method = spec.validate()?;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidSpec(format!(
            "bracket needs lo < hi (got {lo} .. {hi})"
        )));
    }
    let width_target = match method {
        Method::Closed | Method::Spectral => 1e-4,
        _ => 1e-3,
    } * spec.omega0;

    let phase_at = |v: f64| -> Result<f64> {
        let row = eval_point(spec, method, v);
        row.phase.ok_or(Error::PhaseUndefined(row.trace_magnitude))
    };

    let phase_lo = phase_at(lo)?;
    let phase_hi = phase_at(hi)?;
    if mod_distance(phase_lo, phase_hi) <= spec.solver.jump_threshold {
        return Err(Error::NoJumpInBracket { lo, hi });
    }

    let (mut a, mut b) = (lo, hi);
    while b - a > width_target {
        let mut mid = 0.5 * (a + b);
        let mut mid_phase = phase_at(mid);
        if mid_phase.is_err() {
            // landed on the critical point itself; nudge once
            mid = a + 0.45 * (b - a);
            mid_phase = phase_at(mid);
        }
        match mid_phase {
            Ok(phase) => {
                if mod_distance(phase, phase_lo) <= spec.solver.jump_threshold {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            // twice critical: the midpoint is the transition to within the bracket
            Err(_) => break,
        }
    }
    Ok(CriticalEstimate {
        location: 0.5 * (a + b),
        bracket: (a, b),
        phase_below: phase_lo,
        phase_above: phase_hi,
    })
}

/// A 2-D phase map over temperature × endpoint, row-major with temperature
/// as the outer (row) index.
#[derive(Debug, Clone)]
pub struct PhaseGrid {
    pub spec: SweepSpec,
    pub temperatures: Vec<f64>,
    pub endpoints: Vec<f64>,
    pub rows: Vec<ScanRow>,
}

impl PhaseGrid {
    pub fn cell(&self, t_index: usize, e_index: usize) -> &ScanRow {
        &self.rows[t_index * self.endpoints.len() + e_index]
    }
}

/// Evaluate a grid: each temperature row is exactly the corresponding 1-D
/// endpoint sweep.
pub fn grid(spec: &SweepSpec, t_range: &AxisRange, e_range: &AxisRange) -> Result<PhaseGrid> {
    t_range.validate()?;
    e_range.validate()?;
    let temperatures = t_range.values();
    let endpoints = e_range.values();

    let mut row_spec = spec.clone();
    row_spec.axis = Axis::Endpoint;
    row_spec.range = *e_range;

    let rows: Vec<Vec<ScanRow>> = temperatures
        .par_iter()
        .map(|&t| {
            let mut s = row_spec.clone();
            s.fixed_temperature = t;
            sweep(&s).map(|scan| scan.rows)
        })
        .collect::<Result<_>>()?;

    Ok(PhaseGrid {
        spec: row_spec,
        temperatures,
        endpoints,
        rows: rows.into_iter().flatten().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

/// Fixed 12-significant-digit float formatting for byte-identical exports.
fn fmt12(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.11e}")
    }
}

fn phase_for_export(row: &ScanRow) -> f64 {
    match row.phase {
        Some(p) => to_plot_range(p),
        None => f64::NAN,
    }
}

/// Write a sweep as CSV (versioned header, LF endings, 12 significant
/// digits, phases in [0, 2π)).
pub fn export_scan_csv(scan: &PhaseScan, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "# geomphase-scan v1")?;
    writeln!(out, "axis,phase,trace_mag,flag")?;
    for row in &scan.rows {
        writeln!(
            out,
            "{},{},{},{}",
            fmt12(row.axis_value),
            fmt12(phase_for_export(row)),
            fmt12(row.trace_magnitude),
            row.flag.as_str()
        )?;
    }
    Ok(())
}

fn phase_value(row: &ScanRow) -> Value {
    let p = phase_for_export(row);
    if p.is_nan() {
        Value::String("nan".into())
    } else {
        json!(p)
    }
}

fn trace_value(x: f64) -> Value {
    if x.is_nan() {
        Value::String("nan".into())
    } else {
        json!(x)
    }
}

/// Write a sweep as JSON: spec echo, axis/phase/flags arrays, jump list.
/// NaN is encoded as the string "nan".
pub fn export_scan_json(scan: &PhaseScan, out: &mut dyn Write) -> Result<()> {
    let mut object = Map::new();
    object.insert(
        "spec".into(),
        serde_json::to_value(&scan.spec).expect("spec serializes"),
    );
    object.insert(
        "axis".into(),
        Value::Array(scan.rows.iter().map(|r| json!(r.axis_value)).collect()),
    );
    object.insert(
        "phase".into(),
        Value::Array(scan.rows.iter().map(phase_value).collect()),
    );
    object.insert(
        "trace_mag".into(),
        Value::Array(
            scan.rows
                .iter()
                .map(|r| trace_value(r.trace_magnitude))
                .collect(),
        ),
    );
    object.insert(
        "flags".into(),
        Value::Array(scan.rows.iter().map(|r| json!(r.flag.as_str())).collect()),
    );
    object.insert(
        "jumps".into(),
        Value::Array(
            scan.jumps
                .iter()
                .map(|j| {
                    json!({
                        "lo": j.axis_value_lo,
                        "hi": j.axis_value_hi,
                        "magnitude": j.magnitude,
                    })
                })
                .collect(),
        ),
    );
    serde_json::to_writer(&mut *out, &Value::Object(object))
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    writeln!(out)?;
    Ok(())
}

pub fn export_scan(scan: &PhaseScan, format: ExportFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        ExportFormat::Csv => export_scan_csv(scan, out),
        ExportFormat::Json => export_scan_json(scan, out),
    }
}

/// Write a grid as long-format CSV: one line per (temperature, endpoint).
pub fn export_grid_csv(grid: &PhaseGrid, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "# geomphase-scan v1")?;
    writeln!(out, "temperature,endpoint,phase,trace_mag,flag")?;
    for (ti, t) in grid.temperatures.iter().enumerate() {
        for (ei, e) in grid.endpoints.iter().enumerate() {
            let row = grid.cell(ti, ei);
            writeln!(
                out,
                "{},{},{},{},{}",
                fmt12(*t),
                fmt12(*e),
                fmt12(phase_for_export(row)),
                fmt12(row.trace_magnitude),
                row.flag.as_str()
            )?;
        }
    }
    Ok(())
}

/// Write a grid as JSON with both coordinate vectors and row-major values.
pub fn export_grid_json(grid: &PhaseGrid, out: &mut dyn Write) -> Result<()> {
    let mut object = Map::new();
    object.insert(
        "spec".into(),
        serde_json::to_value(&grid.spec).expect("spec serializes"),
    );
    object.insert(
        "t_axis".into(),
        Value::Array(grid.temperatures.iter().map(|t| json!(t)).collect()),
    );
    object.insert(
        "e_axis".into(),
        Value::Array(grid.endpoints.iter().map(|e| json!(e)).collect()),
    );
    object.insert(
        "phase".into(),
        Value::Array(grid.rows.iter().map(phase_value).collect()),
    );
    object.insert(
        "flags".into(),
        Value::Array(grid.rows.iter().map(|r| json!(r.flag.as_str())).collect()),
    );
    serde_json::to_writer(&mut *out, &Value::Object(object))
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    writeln!(out)?;
    Ok(())
}

pub fn export_grid(grid: &PhaseGrid, format: ExportFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        ExportFormat::Csv => export_grid_csv(grid, out),
        ExportFormat::Json => export_grid_json(grid, out),
    }
}
