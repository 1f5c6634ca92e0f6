//! Closed form vs RK4 Schrödinger vs Lindblad master equation on the fig2
//! parameters, reporting the largest density-matrix discrepancy.
//!
//! cargo run --release --example three_way_agreement [dt]

use std::time::Instant;

use qsim::analytic::{amplitudes, density_matrix};
use qsim::basis;
use qsim::cli::preset_params;
use qsim::dynamics::{integrate_master, integrate_schrodinger, DensityMatrix5, IntegratorConfig};

fn main() -> qsim::Result<()> {
    let dt: f64 = std::env::args()
        .nth(1)
        .map_or(1e-4, |s| s.parse().expect("dt must be a number"));
    let params = preset_params(0.9, 0.2);
    let stride = ((0.01 / dt).round() as usize).max(1);
    let cfg = IntegratorConfig::new(dt, 10.0, stride)?;

    let clock = Instant::now();
    let psi = integrate_schrodinger(&params, &cfg)?;
    let t_psi = clock.elapsed();
    let clock = Instant::now();
    let rho = integrate_master(&params, &cfg, &DensityMatrix5::basis_state(basis::A))?;
    let t_rho = clock.elapsed();

    let (mut d_as, mut d_am, mut d_sm) = (0.0_f64, 0.0_f64, 0.0_f64);
    for (s, m) in psi.iter().zip(&rho) {
        let exact = density_matrix(&amplitudes(&params, s.t));
        let from_psi = density_matrix(s);
        d_as = d_as.max(exact.matrix().max_abs_diff(from_psi.matrix()));
        d_am = d_am.max(exact.matrix().max_abs_diff(m.matrix()));
        d_sm = d_sm.max(from_psi.matrix().max_abs_diff(m.matrix()));
    }
    println!("dt = {dt:e}, {} samples", psi.len());
    println!("schrodinger {:.2?}, master {:.2?}", t_psi, t_rho);
    println!("max |rho_closed - rho_schrodinger| = {d_as:.3e}");
    println!("max |rho_closed - rho_master|      = {d_am:.3e}");
    println!("max |rho_schrodinger - rho_master| = {d_sm:.3e}");
    Ok(())
}
