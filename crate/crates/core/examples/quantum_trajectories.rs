//! Monte Carlo unravelling: jump times and channels for an ensemble, and
//! the ensemble-averaged density matrix compared with the master equation.
//!
//! cargo run --release --example quantum_trajectories [n_traj] [seed]

use std::time::Instant;

use qsim::analytic::{amplitudes, p_no};
use qsim::cli::preset_params;
use qsim::dynamics::{integrate_master, DensityMatrix5, IntegratorConfig};
use qsim::trajectories::{ensemble_average, sample_ensemble};
use qsim::{basis, JumpChannel};

fn main() -> qsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let n_traj: usize = args
        .next()
        .map_or(20_000, |s| s.parse().expect("n_traj must be an integer"));
    let seed: u64 = args
        .next()
        .map_or(7, |s| s.parse().expect("seed must be an integer"));
    let params = preset_params(0.9, 0.2);

    for record in sample_ensemble(&params, 10.0, 5, seed)? {
        match record.jump {
            Some(j) => println!(
                "seed {:>3}: jump {} at Kt = {:.6}",
                record.seed, j.channel, j.t
            ),
            None => println!("seed {:>3}: no jump before Kt = 10", record.seed),
        }
    }

    let checkpoints: Vec<f64> = (0..=10).map(f64::from).collect();
    let clock = Instant::now();
    let est = ensemble_average(&params, &checkpoints, n_traj, seed)?;
    println!("\n{n_traj} trajectories in {:.2?}", clock.elapsed());

    let exact = integrate_master(
        &params,
        &IntegratorConfig::new(1e-3, 10.0, 1000)?,
        &DensityMatrix5::basis_state(basis::A),
    )?;
    println!(
        "{:>4}  {:>10} {:>10}  {:>12}",
        "Kt", "unjumped", "p_no", "max|Δρ|"
    );
    for (k, &t) in checkpoints.iter().enumerate() {
        println!(
            "{t:>4}  {:>10.5} {:>10.5}  {:>12.2e}",
            est.unjumped_fraction(k),
            p_no(&amplitudes(&params, t)),
            est.rho_hat[k].max_abs_diff(exact[k].matrix())
        );
    }
    println!();
    for channel in JumpChannel::ALL {
        println!("{channel}: {:.4}", est.channel_fraction(channel));
    }
    Ok(())
}
