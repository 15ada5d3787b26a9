//! The j = 1 two-axis squeezed state shows no finite-temperature
//! transitions: both the equator Uhlmann phase and the meridian IGP vary
//! smoothly with temperature. Only at T → 0 does the IGP develop a π-jump,
//! at θ_f = 2·arctan(π/4) ≈ 1.3315.

use std::f64::consts::{FRAC_PI_2, PI};

use geomphase::igp::igp_two_axis_closed;
use geomphase::phase::to_plot_range;
use geomphase::scan::{find_critical, sweep, Axis, AxisRange, Family, Quantity, SweepSpec};

fn main() {
    println!("two-axis equator Uhlmann phase vs temperature (Trotter, converged)");
    println!("{}", "=".repeat(66));

    let mut spec = SweepSpec::new(Quantity::Uhlmann, Family::TwoAxis);
    spec.range = AxisRange::log(0.05, 20.0, 25);
    spec.solver.n_steps = 256;
    spec.solver.refine = true;
    let scan = sweep(&spec).expect("sweep");
    for row in scan.rows.iter().step_by(3) {
        if let Some(p) = row.phase {
            println!(
                "  T = {:8.4} ω₀   θ_U = {:.6}",
                row.axis_value,
                to_plot_range(p)
            );
        }
    }
    println!("  jumps detected: {}", scan.jumps.len());

    println!("\nmeridian IGP at θ_f = π/2 vs temperature (closed form)");
    for k in 0..9 {
        let temperature = 0.05 * (20.0f64 / 0.05).powf(k as f64 / 8.0);
        let phase = igp_two_axis_closed(FRAC_PI_2, 1.0 / temperature, 1.0).unwrap();
        println!(
            "  T = {temperature:8.4} ω₀   θ_G = {:.6}",
            to_plot_range(phase)
        );
    }

    println!("\nzero-temperature limit: IGP vs θ_f at T = 0.01 ω₀");
    for k in 0..9 {
        let theta_f = 0.75 * PI * (k as f64 + 0.5) / 9.0;
        let phase = igp_two_axis_closed(theta_f, 100.0, 1.0).unwrap();
        println!("  θ_f = {theta_f:6.4}   θ_G = {:.6}", to_plot_range(phase));
    }

    let mut cold = SweepSpec::new(Quantity::Igp, Family::TwoAxis);
    cold.axis = Axis::Endpoint;
    cold.fixed_temperature = 0.01;
    cold.range = AxisRange::linear(1.0, 1.6, 10);
    let root = find_critical(&cold, 1.2, 1.4).expect("cold jump");
    println!(
        "\nπ-jump at θ_f = {:.6}  (2·arctan(π/4) = {:.6})",
        root.location,
        2.0 * (PI / 4.0).atan()
    );
}
