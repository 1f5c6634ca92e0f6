//! The Hamiltonian, effective Hamiltonian and jump operators in the
//! basis |a⟩..|e⟩ for an asymmetric pair of nodes.
//!
//! cargo run --example operators

use qsim::model::{build_effective_hamiltonian, build_hamiltonian, build_jump_operators};
use qsim::{NodeParams, SystemParams};

fn main() -> qsim::Result<()> {
    let a = NodeParams {
        g: 5.0,
        kappa: 0.9,
        kappa_prime: 0.1,
        gamma: 0.2,
        delta: 0.1,
    };
    let b = NodeParams {
        g: 4.0,
        kappa: 1.0,
        kappa_prime: 0.2,
        gamma: 0.1,
        delta: -0.1,
    };
    let params = SystemParams::new(a, b, 0.3)?;

    println!("H = {:?}\n", build_hamiltonian(&params).entries);
    println!(
        "H_eff = {:?}\n",
        build_effective_hamiltonian(&params).entries
    );
    for j in build_jump_operators(&params) {
        println!("{:?}: {:?}\n", j.label, j.entries);
    }
    Ok(())
}
