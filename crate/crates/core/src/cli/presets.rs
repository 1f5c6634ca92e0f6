use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::analytic::amplitudes;
use crate::error::Result;
use crate::model::{NodeParams, SystemParams};

use super::series::{emit_csv, TimeSeries};

/// Number of grid points on `[0, PRESET_T_MAX]`.
pub const PRESET_POINTS: usize = 10_001;
pub const PRESET_T_MAX: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            "fig4" => Ok(Preset::Fig4),
            other => Err(format!(
                "unknown preset `{other}` (expected fig2, fig3 or fig4)"
            )),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        })
    }
}

/// Equal-node parameters with `g = 5`, `Δ = 0.1`, `κ' = 1 - κ` (so `K = 1`).
pub fn preset_node(kappa: f64, gamma: f64) -> NodeParams {
    NodeParams {
        g: 5.0,
        kappa,
        kappa_prime: 1.0 - kappa,
        gamma,
        delta: 0.1,
    }
}

pub fn preset_params(kappa: f64, gamma: f64) -> SystemParams {
    SystemParams::symmetric(preset_node(kappa, gamma), 0.0).expect("preset parameters are valid")
}

/// `(κ, Γ)` for the three concurrence curves, lossy first.
pub const FIG3_VARIANTS: [(f64, f64); 3] = [(0.9, 0.2), (0.9, 0.0), (1.0, 0.0)];

/// One output file of a preset.
#[derive(Clone, Debug)]
pub struct PresetRun {
    pub file_name: String,
    pub params: SystemParams,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig2, Preset::Fig3, Preset::Fig4];

    pub fn runs(self) -> Vec<PresetRun> {
        match self {
            Preset::Fig2 | Preset::Fig4 => vec![PresetRun {
                file_name: format!("{self}.csv"),
                params: preset_params(0.9, 0.2),
            }],
            Preset::Fig3 => FIG3_VARIANTS
                .iter()
                .map(|&(kappa, gamma)| PresetRun {
                    file_name: format!("fig3_kappa{kappa}_gamma{gamma}.csv"),
                    params: preset_params(kappa, gamma),
                })
                .collect(),
        }
    }
}

/// `t_k = 10 k / 10000`.
pub fn preset_grid() -> Vec<f64> {
    let n = PRESET_POINTS - 1;
    (0..PRESET_POINTS)
        .map(|k| PRESET_T_MAX * k as f64 / n as f64)
        .collect()
}

/// Closed-form series on an arbitrary grid.
pub fn analytic_series(params: &SystemParams, grid: &[f64]) -> TimeSeries {
    let states: Vec<_> = grid.iter().map(|&t| amplitudes(params, t)).collect();
    TimeSeries::from_amplitudes(&states)
}

/// Evaluates every file of a preset without touching the filesystem.
pub fn preset_series(preset: Preset) -> Vec<(String, TimeSeries)> {
    let grid = preset_grid();
    preset
        .runs()
        .into_iter()
        .map(|run| (run.file_name, analytic_series(&run.params, &grid)))
        .collect()
}

/// Writes the preset's CSV files into `dir` (created if missing) and
/// returns their paths.
pub fn run_preset(preset: Preset, dir: &Path) -> Result<Vec<PathBuf>> {
    super::ensure_dir(dir)?;
    preset_series(preset)
        .into_iter()
        .map(|(name, series)| {
            let path = dir.join(name);
            emit_csv(&series, &path)?;
            Ok(path)
        })
        .collect()
}
