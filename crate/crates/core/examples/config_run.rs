//! Parses a run configuration and writes the resulting CSV, the same path
//! the `qsim run` command takes.
//!
//! cargo run --example config_run [output_dir]

use qsim::cli::{parse_config, run};

const CONFIG: &str = "\
# two unequal nodes, master equation
mode = master
t_max = 5
dt = 1e-3
sample_stride = 50
g_a = 5
g_b = 4
kappa_a = 0.9
kappa_b = 1.0
kappa_prime_a = 0.1
kappa_prime_b = 0.2
gamma_a = 0.2
gamma_b = 0.1
delta_a = 0.1
delta_b = -0.1
";

fn main() -> qsim::Result<()> {
    let mut cfg = parse_config(CONFIG)?;
    if let Some(dir) = std::env::args().nth(1) {
        cfg.output = dir.into();
    }
    for path in run(&cfg)? {
        println!("wrote {}", path.display());
        let text = std::fs::read_to_string(&path).map_err(|e| qsim::Error::Io {
            path: path.clone(),
            source: e,
        })?;
        for line in text.lines().take(5) {
            println!("  {line}");
        }
    }
    Ok(())
}
