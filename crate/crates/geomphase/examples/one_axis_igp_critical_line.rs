//! The j = 1 one-axis IGP: the critical line Θ_c(T) = 4·arccos(−½ sech(ω₀/T))
//! separating the 0 and π phases, and the agreement between the spectral
//! overlap sum and the closed form.

use std::f64::consts::PI;

use geomphase::igp::{critical_theta_one_axis, igp_one_axis_closed, igp_one_axis_spectral};
use geomphase::phase::mod_distance;

fn main() {
    println!("critical squeezing endpoint Θ_c(T), from 2π (T→0) to 8π/3 (T→∞)");
    println!("{}", "=".repeat(64));
    println!("{:>8}  {:>10}  {:>10}", "T/ω₀", "Θ_c", "Θ_c/π");
    for k in 0..12 {
        let temperature = 0.05 * 4f64.powf(k as f64 / 3.0);
        let theta_c = critical_theta_one_axis(temperature, 1.0).unwrap();
        println!("{temperature:8.3}  {theta_c:10.6}  {:10.6}", theta_c / PI);
    }

    println!("\nspectral overlap sum vs closed form on a (T, Θ_f) grid:");
    let mut worst = 0.0f64;
    let mut points = 0;
    for i in 0..12 {
        let temperature = 0.25 + 0.25 * i as f64;
        let beta = 1.0 / temperature;
        let theta_c = critical_theta_one_axis(temperature, 1.0).unwrap();
        for k in 0..12 {
            let theta_cap = 0.2 + (4.0 * PI - 0.4) * k as f64 / 11.0;
            if (theta_cap - theta_c).abs() < 1e-2 {
                continue;
            }
            let closed = igp_one_axis_closed(theta_cap, beta, 1.0).unwrap();
            let spectral = igp_one_axis_spectral(theta_cap, beta, 1.0, 128).unwrap();
            worst = worst.max(mod_distance(closed, spectral));
            points += 1;
        }
    }
    println!("  {points} grid points, worst disagreement {worst:.2e} rad");

    println!(
        "\nphase profile at T = ω₀ (jump at Θ_c = {:.4}):",
        critical_theta_one_axis(1.0, 1.0).unwrap()
    );
    for k in 0..9 {
        let theta_cap = 4.0 * PI * (k as f64 + 0.5) / 9.0;
        let phase = igp_one_axis_closed(theta_cap, 1.0, 1.0).unwrap();
        println!("  Θ_f = {theta_cap:8.4}   θ_G = {phase:.6}");
    }
}
