//! Command-line front end for sweeps, grids, critical-point searches, and
//! diagnostics. All numerics live in the library; this binary only parses
//! arguments, builds a `SweepSpec`, and writes the export.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs::File;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use geomphase::igp::{transport_report, EvolutionSpec};
use geomphase::phase::mod_distance;
use geomphase::scan::{
    export_grid, export_scan, find_critical, grid, sweep, Axis, AxisRange, ExportFormat, Family,
    Method, Quantity, Scale, SolverOptions, SweepSpec,
};
use geomphase::uhlmann::{
    berry_phase_css, uhlmann_loop, uhlmann_phase_css_equator_closed, ConnectionMethod,
    HolonomyOptions, LoopSpec,
};
use geomphase::{igp, SpinJ};

#[derive(Parser)]
#[command(
    name = "geomphase-scan",
    about = "Mixed-state geometric phases of thermal spin states: sweeps, grids, critical points",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Uhlmann phase sweeps (closed form on the CSS equator, Trotter otherwise)
    Uhlmann {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Interferometric geometric phase sweeps
    Igp {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Bisect a phase jump inside a bracket along the sweep axis
    Critical {
        quantity: QuantityArg,
        family: FamilyArg,
        /// Lower bracket end (same axis as the sweep)
        #[arg(long)]
        lo: f64,
        /// Upper bracket end
        #[arg(long)]
        hi: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// 2-D phase map over temperature × endpoint
    Grid {
        quantity: QuantityArg,
        family: FamilyArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Transport, convergence, and cross-check diagnostics
    Check {
        /// Trotter steps for the diagnostics
        #[arg(long, default_value_t = 1024)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Coherent spin states under displacement
    Css(CommonArgs),
    /// One-axis twisting (j = 1)
    Oneaxis(CommonArgs),
    /// Two-axis counter-twisting (j = 1)
    Twoaxis(CommonArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Uhlmann,
    Igp,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Css,
    Oneaxis,
    Twoaxis,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Linear,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Closed,
    Trotter,
    Spectral,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Temperature,
    Endpoint,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Spin as the integer 2j (e.g. 3 for j = 3/2)
    #[arg(long = "j")]
    two_j: Option<u32>,

    /// Larmor frequency, the unit of energy and temperature
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,

    /// Polar angle of the CSS Uhlmann loop [rad]
    #[arg(long, default_value_t = FRAC_PI_2)]
    theta: f64,

    /// Azimuth of the CSS IGP longitude [rad]
    #[arg(long, default_value_t = 0.0)]
    phi: f64,

    /// Final polar angle θ_f for CSS / two-axis IGP [rad]
    #[arg(long = "theta-f")]
    theta_f: Option<f64>,

    /// Final squeezing parameter Θ_f for one-axis IGP [rad]
    #[arg(long = "Theta-f")]
    theta_cap_f: Option<f64>,

    /// Temperature axis: lowest T/ω₀
    #[arg(long, default_value_t = 0.05)]
    tmin: f64,

    /// Temperature axis: highest T/ω₀
    #[arg(long, default_value_t = 1.0)]
    tmax: f64,

    /// Temperature axis: number of samples
    #[arg(long, default_value_t = 200)]
    tn: usize,

    /// Temperature axis spacing
    #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
    tscale: ScaleArg,

    /// Sweep axis
    #[arg(long, value_enum, default_value_t = AxisArg::Temperature)]
    axis: AxisArg,

    /// Endpoint axis: lowest value [rad] (endpoint sweeps and grids)
    #[arg(long, default_value_t = 0.0)]
    emin: f64,

    /// Endpoint axis: highest value [rad]
    #[arg(long)]
    emax: Option<f64>,

    /// Endpoint axis: number of samples
    #[arg(long, default_value_t = 200)]
    en: usize,

    /// Endpoint axis spacing
    #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
    escale: ScaleArg,

    /// Fixed temperature T/ω₀ for endpoint sweeps
    #[arg(long, default_value_t = 1.0)]
    temp: f64,

    /// Trotter steps per loop
    #[arg(long, default_value_t = 4096)]
    steps: usize,

    /// Double the step count until the phase converges to 1e-6
    #[arg(long, default_value_t = false)]
    refine: bool,

    /// Mod-2π distance that counts as a jump [rad]
    #[arg(long = "jump-threshold", default_value_t = FRAC_PI_2)]
    jump_threshold: f64,

    /// Evaluation route
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Output path, or "-" for stdout
    #[arg(long, default_value = "-")]
    out: String,
}

impl CommonArgs {
    fn build_spec(&self, quantity: Quantity, family: Family) -> SweepSpec {
        let mut spec = SweepSpec::new(quantity, family);
        if let Some(two_j) = self.two_j {
            spec.two_j = two_j;
        }
        spec.omega0 = self.omega0;
        spec.theta = self.theta;
        spec.phi = self.phi;
        match family {
            Family::OneAxis => {
                if let Some(v) = self.theta_cap_f {
                    spec.endpoint = v;
                }
            }
            _ => {
                if let Some(v) = self.theta_f {
                    spec.endpoint = v;
                }
            }
        }
        spec.axis = match self.axis {
            AxisArg::Temperature => Axis::Temperature,
            AxisArg::Endpoint => Axis::Endpoint,
        };
        spec.range = match spec.axis {
            Axis::Temperature => self.t_range(),
            Axis::Endpoint => self.e_range(family),
        };
        spec.fixed_temperature = self.temp;
        spec.method = match self.method {
            MethodArg::Auto => Method::Auto,
            MethodArg::Closed => Method::Closed,
            MethodArg::Trotter => Method::Trotter,
            MethodArg::Spectral => Method::Spectral,
            MethodArg::Numeric => Method::Numeric,
        };
        spec.solver = SolverOptions {
            n_steps: self.steps,
            refine: self.refine,
            jump_threshold: self.jump_threshold,
        };
        spec
    }

    fn t_range(&self) -> AxisRange {
        AxisRange {
            lo: self.tmin,
            hi: self.tmax,
            n: self.tn,
            scale: scale_of(self.tscale),
        }
    }

    fn e_range(&self, family: Family) -> AxisRange {
        let default_hi = match family {
            Family::Css => 0.95 * PI,
            Family::OneAxis => 4.0 * PI,
            Family::TwoAxis => 0.75 * PI,
        };
        AxisRange {
            lo: self.emin,
            hi: self.emax.unwrap_or(default_hi),
            n: self.en,
            scale: scale_of(self.escale),
        }
    }

    fn export_format(&self) -> ExportFormat {
        match self.format {
            FormatArg::Csv => ExportFormat::Csv,
            FormatArg::Json => ExportFormat::Json,
        }
    }

    fn writer(&self) -> geomphase::Result<Box<dyn Write>> {
        if self.out == "-" {
            Ok(Box::new(std::io::stdout().lock()))
        } else {
            Ok(Box::new(File::create(&self.out)?))
        }
    }
}

fn scale_of(arg: ScaleArg) -> Scale {
    match arg {
        ScaleArg::Linear => Scale::Linear,
        ScaleArg::Log => Scale::Log,
    }
}

fn family_of(arg: FamilyArg) -> Family {
    match arg {
        FamilyArg::Css => Family::Css,
        FamilyArg::Oneaxis => Family::OneAxis,
        FamilyArg::Twoaxis => Family::TwoAxis,
    }
}

fn quantity_of(arg: QuantityArg) -> Quantity {
    match arg {
        QuantityArg::Uhlmann => Quantity::Uhlmann,
        QuantityArg::Igp => Quantity::Igp,
    }
}

fn run_sweep(quantity: Quantity, family: FamilyCommand) -> geomphase::Result<()> {
    let (family, common) = match family {
        FamilyCommand::Css(c) => (Family::Css, c),
        FamilyCommand::Oneaxis(c) => (Family::OneAxis, c),
        FamilyCommand::Twoaxis(c) => (Family::TwoAxis, c),
    };
    let spec = common.build_spec(quantity, family);
    let scan = sweep(&spec)?;
    let mut out = common.writer()?;
    export_scan(&scan, common.export_format(), &mut out)
}

fn run_critical(
    quantity: QuantityArg,
    family: FamilyArg,
    lo: f64,
    hi: f64,
    common: CommonArgs,
) -> geomphase::Result<()> {
    let spec = common.build_spec(quantity_of(quantity), family_of(family));
    let estimate = find_critical(&spec, lo, hi)?;
    let mut out = common.writer()?;
    write!(
        out,
        "critical,{:.11e}\nbracket,{:.11e},{:.11e}\nphase_below,{:.11e}\nphase_above,{:.11e}\n",
        estimate.location,
        estimate.bracket.0,
        estimate.bracket.1,
        estimate.phase_below,
        estimate.phase_above
    )?;
    Ok(())
}

fn run_grid(quantity: QuantityArg, family: FamilyArg, common: CommonArgs) -> geomphase::Result<()> {
    let family = family_of(family);
    let spec = common.build_spec(quantity_of(quantity), family);
    let result = grid(&spec, &common.t_range(), &common.e_range(family))?;
    let mut out = common.writer()?;
    export_grid(&result, common.export_format(), &mut out)
}

fn run_check(steps: usize) -> geomphase::Result<bool> {
    let mut all_ok = true;
    let mut report = |name: &str, ok: bool, detail: String| {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };

    let j32 = SpinJ::from_two_j(3)?;
    let j1 = SpinJ::from_two_j(2)?;

    for (label, spec) in [
        (
            "css-longitude",
            EvolutionSpec::css_longitude(j32, 3.0 * PI / 4.0, 0.0, steps)?,
        ),
        ("one-axis", EvolutionSpec::one_axis(3.0 * PI, steps)?),
        (
            "two-axis-meridian",
            EvolutionSpec::two_axis_meridian(FRAC_PI_2, 4 * steps)?,
        ),
    ] {
        let r = transport_report(&spec, 1.0, 1.0)?;
        let ok = r.weak_residual < 1e-6 && r.strong_residual < 1e-6 && r.dynamic_phase.abs() < 1e-6;
        report(
            &format!("transport {label}"),
            ok,
            format!(
                "weak {:.2e}, strong {:.2e}, dynamic {:.2e}",
                r.weak_residual, r.strong_residual, r.dynamic_phase
            ),
        );
    }

    let opts = HolonomyOptions {
        n_steps: 256,
        refine: true,
        ..Default::default()
    };
    for temperature in [0.2, 0.45, 1.0] {
        let closed = uhlmann_phase_css_equator_closed(j32, 1.0 / temperature, 1.0)?;
        let trotter = uhlmann_loop(
            &LoopSpec::Css {
                j: j32,
                theta: FRAC_PI_2,
            },
            1.0 / temperature,
            1.0,
            ConnectionMethod::ClosedForm,
            &opts,
        )?;
        let diff = mod_distance(closed, trotter.phase);
        report(
            &format!("equator closed vs Trotter at T={temperature}"),
            diff < 1e-4 && trotter.converged,
            format!("difference {diff:.2e} at {} steps", trotter.n_steps),
        );
    }

    for (theta_cap, temperature) in [(3.0, 1.0), (7.0, 0.5)] {
        let spectral = igp::igp_one_axis_spectral(theta_cap, 1.0 / temperature, 1.0, 256)?;
        let closed = igp::igp_one_axis_closed(theta_cap, 1.0 / temperature, 1.0)?;
        let diff = mod_distance(spectral, closed);
        report(
            &format!("one-axis IGP spectral vs closed at Θ={theta_cap}, T={temperature}"),
            diff < 1e-6,
            format!("difference {diff:.2e}"),
        );
    }

    let berry = berry_phase_css(j1, PI / 3.0);
    let trotter = uhlmann_loop(
        &LoopSpec::Css {
            j: j1,
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
    )?;
    let diff = mod_distance(berry, trotter.phase);
    report(
        "Berry limit at T=0.02 (j=1, θ=π/3)",
        diff < 0.02,
        format!("difference {diff:.2e}"),
    );

    Ok(all_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Uhlmann { family } => run_sweep(Quantity::Uhlmann, family),
        Command::Igp { family } => run_sweep(Quantity::Igp, family),
        Command::Critical {
            quantity,
            family,
            lo,
            hi,
            common,
        } => run_critical(quantity, family, lo, hi, common),
        Command::Grid {
            quantity,
            family,
            common,
        } => run_grid(quantity, family, common),
        Command::Check { steps } => match run_check(steps) {
            Ok(true) => Ok(()),
            // failed diagnostics are a numerical failure
            Ok(false) => return ExitCode::from(3),
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
