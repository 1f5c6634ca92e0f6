//! `key = value` run configuration files.
//!
//! ```text
//! # fig2 parameters, rates in units of K
//! mode = analytic
//! t_max = 10
//! g_a = 5
//! g_b = 5
//! kappa_a = 0.9
//! ...
//! ```
//!
//! Required keys: the ten node parameters (`g_*`, `kappa_*`,
//! `kappa_prime_*`, `gamma_*`, `delta_*` for `a` and `b`), `mode` and
//! `t_max`. `n_traj` is required in `trajectories` mode and rejected
//! otherwise. Defaults: `phi = 0`, `dt = 1e-3`, `seed = 0`,
//! `sample_stride = 1`, `output = output`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::dynamics::{IntegratorConfig, DEFAULT_DT};
use crate::error::{Error, Result};
use crate::model::{NodeParams, SystemParams};

const PARAM_KEYS: [&str; 10] = [
    "g_a",
    "g_b",
    "kappa_a",
    "kappa_b",
    "kappa_prime_a",
    "kappa_prime_b",
    "gamma_a",
    "gamma_b",
    "delta_a",
    "delta_b",
];
const OPTIONAL_KEYS: [&str; 6] = ["phi", "dt", "n_traj", "seed", "output", "sample_stride"];
const REQUIRED_RUN_KEYS: [&str; 2] = ["mode", "t_max"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Analytic,
    Schrodinger,
    Master,
    Trajectories,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "analytic" => Ok(Mode::Analytic),
            "schrodinger" => Ok(Mode::Schrodinger),
            "master" => Ok(Mode::Master),
            "trajectories" => Ok(Mode::Trajectories),
            other => Err(format!(
                "unknown mode `{other}` (expected analytic, schrodinger, master or trajectories)"
            )),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Analytic => "analytic",
            Mode::Schrodinger => "schrodinger",
            Mode::Master => "master",
            Mode::Trajectories => "trajectories",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: SystemParams,
    pub t_max: f64,
    pub dt: f64,
    pub sample_stride: usize,
    pub n_traj: Option<usize>,
    pub seed: u64,
    pub output: PathBuf,
}

impl RunConfig {
    pub fn integrator(&self) -> Result<IntegratorConfig> {
        IntegratorConfig::new(self.dt, self.t_max, self.sample_stride)
    }
}

/// Parsed but not yet validated `key = value` pairs, remembering the line
/// each key came from.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, (usize, String)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, found `{line}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "empty key or value".into(),
                });
            }
            let known = PARAM_KEYS.contains(&key)
                || OPTIONAL_KEYS.contains(&key)
                || REQUIRED_RUN_KEYS.contains(&key);
            if !known {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown key `{key}`"),
                });
            }
            if let Some((first, _)) = entries.get(key) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate key `{key}` (first set on line {first})"),
                });
            }
            entries.insert(key.to_string(), (line_no, value.to_string()));
        }
        Ok(Self { entries })
    }

    /// Overrides (or adds) a key, e.g. from a command-line flag.
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(key.to_string(), (0, value.into()));
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, value)) => value.parse::<T>().map(Some).map_err(|e| {
                let message = format!("invalid value `{value}` for `{key}`: {e}");
                if *line == 0 {
                    Error::Config(message)
                } else {
                    Error::Parse {
                        line: *line,
                        message,
                    }
                }
            }),
        }
    }

    fn require<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        self.get(key)?
            .ok_or_else(|| Error::Config(format!("missing required key `{key}`")))
    }

    pub fn validate(&self) -> Result<RunConfig> {
        let missing: Vec<&str> = PARAM_KEYS
            .iter()
            .chain(&REQUIRED_RUN_KEYS)
            .copied()
            .filter(|k| !self.entries.contains_key(*k))
            .collect();
        if !missing.is_empty() {
            return Err(Error::Config(format!(
                "missing required keys: {}",
                missing.join(", ")
            )));
        }

        let node = |sfx: &str| -> Result<NodeParams> {
            Ok(NodeParams {
                g: self.require(&format!("g_{sfx}"))?,
                kappa: self.require(&format!("kappa_{sfx}"))?,
                kappa_prime: self.require(&format!("kappa_prime_{sfx}"))?,
                gamma: self.require(&format!("gamma_{sfx}"))?,
                delta: self.require(&format!("delta_{sfx}"))?,
            })
        };
        let phi = self.get("phi")?.unwrap_or(0.0);
        let params = SystemParams::new(node("a")?, node("b")?, phi)?;

        let mode: Mode = self.require("mode")?;
        let t_max: f64 = self.require("t_max")?;
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::param(
                "t_max",
                format!("must be positive, got {t_max}"),
            ));
        }
        let dt = self.get("dt")?.unwrap_or(DEFAULT_DT);
        let sample_stride = self.get("sample_stride")?.unwrap_or(1);
        let n_traj: Option<usize> = self.get("n_traj")?;
        match (mode, n_traj) {
            (Mode::Trajectories, None) => {
                return Err(Error::param("n_traj", "required in trajectories mode"));
            }
            (Mode::Trajectories, Some(0)) => {
                return Err(Error::param("n_traj", "must be at least 1"));
            }
            (Mode::Trajectories, Some(_)) => {}
            (_, Some(_)) => {
                return Err(Error::param(
                    "n_traj",
                    format!("only allowed in trajectories mode, not {mode}"),
                ));
            }
            (_, None) => {}
        }
        let seed = self.get("seed")?.unwrap_or(0);
        let output = self
            .get::<String>("output")?
            .unwrap_or_else(|| "output".into());

        let config = RunConfig {
            mode,
            params,
            t_max,
            dt,
            sample_stride,
            n_traj,
            seed,
            output: PathBuf::from(output),
        };
        config.integrator()?;
        Ok(config)
    }
}

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    RawConfig::parse(text)?.validate()
}
