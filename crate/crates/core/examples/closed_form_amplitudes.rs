//! No-jump amplitudes and occupation probabilities from the closed form,
//! fig2 parameters (g = 5, κ = 0.9, Δ = 0.1, Γ = 0.2, all in units of K).
//!
//! cargo run --example closed_form_amplitudes

use qsim::analytic::{amplitudes, p_no};
use qsim::cli::preset_params;

fn main() {
    let params = preset_params(0.9, 0.2);
    println!(
        "{:>5}  {:>9} {:>9} {:>9} {:>9} {:>9}  {:>9}",
        "Kt", "|a|^2", "|b|^2", "|c|^2", "|d|^2", "|e|^2", "p_no"
    );
    for k in 0..=20 {
        let t = 0.25 * k as f64;
        let s = amplitudes(&params, t);
        let p = s.populations();
        println!(
            "{t:>5.2}  {:>9.6} {:>9.6} {:>9.6} {:>9.6} {:>9.6}  {:>9.6}",
            p[0],
            p[1],
            p[2],
            p[3],
            p[4],
            p_no(&s)
        );
    }
    let s = amplitudes(&params, 1.88);
    println!(
        "\nat Kt = 1.88: alpha = {:.6}, beta = {:.6}, gamma = {:.6}, delta = {:.6}",
        s.alpha, s.beta, s.gamma, s.delta
    );
}
