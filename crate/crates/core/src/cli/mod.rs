//! Config-driven runs, figure presets and CSV output.

mod config;
mod presets;
mod series;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub use config::{parse_config, Mode, RawConfig, RunConfig};
pub use presets::{
    analytic_series, preset_grid, preset_node, preset_params, preset_series, run_preset, Preset,
    PresetRun, FIG3_VARIANTS, PRESET_POINTS, PRESET_T_MAX,
};
pub use series::{
    emit_csv, format_sig12, parse_csv, write_csv, SeriesPoint, TimeSeries, CSV_HEADER,
};

use crate::analytic::amplitudes;
use crate::dynamics::{integrate_master, integrate_schrodinger, DensityMatrix5};
use crate::error::{Error, Result};
use crate::model::{basis, JumpChannel};
use crate::trajectories::{ensemble_average, EnsembleEstimate};

pub(crate) fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Reads and validates a configuration file.
pub fn load_config(path: &Path) -> Result<RawConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    RawConfig::parse(&text)
}

/// Result of [`execute`]: the series plus, for trajectory runs, the raw
/// ensemble estimate.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub series: TimeSeries,
    pub ensemble: Option<EnsembleEstimate>,
}

/// Computes the time series requested by `cfg` in memory.
pub fn execute(cfg: &RunConfig) -> Result<RunOutput> {
    let integrator = cfg.integrator()?;
    match cfg.mode {
        Mode::Analytic => {
            let states: Vec<_> = integrator
                .sample_times()
                .into_iter()
                .map(|t| amplitudes(&cfg.params, t))
                .collect();
            Ok(RunOutput {
                series: TimeSeries::from_amplitudes(&states),
                ensemble: None,
            })
        }
        Mode::Schrodinger => Ok(RunOutput {
            series: TimeSeries::from_amplitudes(&integrate_schrodinger(&cfg.params, &integrator)?),
            ensemble: None,
        }),
        Mode::Master => {
            let rho0 = DensityMatrix5::basis_state(basis::A);
            let states = integrate_master(&cfg.params, &integrator, &rho0)?;
            Ok(RunOutput {
                series: TimeSeries::from_densities(&states)?,
                ensemble: None,
            })
        }
        Mode::Trajectories => {
            let n_traj = cfg
                .n_traj
                .ok_or_else(|| Error::param("n_traj", "required in trajectories mode"))?;
            let estimate =
                ensemble_average(&cfg.params, &integrator.sample_times(), n_traj, cfg.seed)?;
            let states: Vec<_> = (0..estimate.times.len())
                .map(|k| estimate.density(k))
                .collect();
            Ok(RunOutput {
                series: TimeSeries::from_densities(&states)?,
                ensemble: Some(estimate),
            })
        }
    }
}

/// `channel,count,fraction` with one row per jump channel and a final
/// `none` row for trajectories that never jumped.
pub fn write_channels<W: Write>(estimate: &EnsembleEstimate, mut out: W) -> std::io::Result<()> {
    writeln!(out, "channel,count,fraction")?;
    let mut jumped = 0;
    for channel in JumpChannel::ALL {
        let count = estimate.channel_counts.get(&channel).copied().unwrap_or(0);
        jumped += count;
        writeln!(
            out,
            "{channel},{count},{}",
            format_sig12(estimate.channel_fraction(channel))
        )?;
    }
    let none = estimate.n_traj - jumped;
    writeln!(
        out,
        "none,{none},{}",
        format_sig12(none as f64 / estimate.n_traj as f64)
    )
}

/// Runs `cfg` and writes `<mode>.csv` (plus `channels.csv` for trajectory
/// runs) into `cfg.output`.
pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let output = execute(cfg)?;
    ensure_dir(&cfg.output)?;
    let path = cfg.output.join(format!("{}.csv", cfg.mode));
    emit_csv(&output.series, &path)?;
    let mut written = vec![path];
    if let Some(estimate) = &output.ensemble {
        let path = cfg.output.join("channels.csv");
        let mut buf = Vec::new();
        write_channels(estimate, &mut buf).map_err(|e| Error::io(&path, e))?;
        fs::write(&path, buf).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
