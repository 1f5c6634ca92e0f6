//! Monte Carlo unravelling of the master equation with the delay-function
//! method.
//!
//! A trajectory starts in `|a⟩` and follows the no-jump evolution until the
//! norm `p_no(t) = ‖ψ̄(t)‖²` falls to a uniform random level `r`; at that
//! instant one of the five channels fires, chosen with weight
//! `‖J_i ψ̄(t_J)‖²`, and the state collapses to `|e⟩`, where it stays. At
//! most one jump can happen per trajectory.
//!
//! Randomness comes from ChaCha8 (a counter-based generator) keyed by
//! `base_seed ^ index`, and ensemble sums are reduced in a fixed chunk order,
//! so results are bit-identical for any thread count.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic::{amplitudes, p_no};
use crate::dynamics::DensityMatrix5;
use crate::error::{Error, Result};
use crate::model::{basis, build_jump_operators, JumpChannel, SystemParams};
use crate::numerics::ComplexMatrix;

/// Intervals of the `p_no` lookup table used to bracket jump times.
const BRACKET_INTERVALS: usize = 512;
/// Absolute tolerance of the jump-time bisection.
pub const JUMP_TIME_TOLERANCE: f64 = 1e-10;
const CHUNK: usize = 1024;
const CHUNKS_PER_WAVE: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jump {
    pub t: f64,
    pub channel: JumpChannel,
}

/// Outcome of one trajectory on `[0, t_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRecord {
    pub seed: u64,
    pub jump: Option<Jump>,
}

impl TrajectoryRecord {
    pub fn jumped(&self) -> bool {
        self.jump.is_some()
    }

    pub fn t_jump(&self) -> Option<f64> {
        self.jump.map(|j| j.t)
    }

    pub fn channel(&self) -> Option<JumpChannel> {
        self.jump.map(|j| j.channel)
    }
}

/// Per-trajectory seed.
pub fn trajectory_seed(base_seed: u64, index: u64) -> u64 {
    base_seed ^ index
}

/// Precomputed state shared by every trajectory of one parameter set.
#[derive(Clone, Debug)]
pub struct JumpSampler {
    params: SystemParams,
    t_max: f64,
    grid: Vec<(f64, f64)>,
    /// Row `e` of each jump operator; `J_i ψ̄ = jump_rows[i] · ψ̄`.
    jump_rows: [[Complex64; basis::DIM]; 5],
}

impl JumpSampler {
    pub fn new(params: &SystemParams, t_max: f64) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::InvalidIntegrator(format!(
                "t_max must be positive, got {t_max}"
            )));
        }
        let grid = (0..=BRACKET_INTERVALS)
            .map(|k| {
                let t = t_max * k as f64 / BRACKET_INTERVALS as f64;
                (t, p_no(&amplitudes(params, t)))
            })
            .collect();
        let jumps = build_jump_operators(params);
        let jump_rows =
            std::array::from_fn(|i| std::array::from_fn(|k| jumps[i].entries[(basis::E, k)]));
        Ok(Self {
            params: *params,
            t_max,
            grid,
            jump_rows,
        })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// `‖J_i ψ̄(t)‖²` for each channel.
    pub fn channel_rates(&self, t: f64) -> [f64; 5] {
        let psi = amplitudes(&self.params, t).vector();
        self.jump_rows.map(|row| {
            row.iter()
                .zip(&psi)
                .map(|(j, x)| j * x)
                .sum::<Complex64>()
                .norm_sqr()
        })
    }

    pub fn sample(&self, seed: u64) -> TrajectoryRecord {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r: f64 = rng.random();
        while r == 0.0 {
            r = rng.random();
        }

        let Some(k) = self.grid.iter().position(|&(_, p)| p <= r) else {
            return TrajectoryRecord { seed, jump: None };
        };
        // p_no(0) = 1 > r, so the crossing lies inside (t_{k-1}, t_k].
        let (mut lo, mut hi) = (self.grid[k - 1].0, self.grid[k].0);
        while hi - lo > JUMP_TIME_TOLERANCE {
            let mid = 0.5 * (lo + hi);
            if p_no(&amplitudes(&self.params, mid)) <= r {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let t = hi;

        let rates = self.channel_rates(t);
        let total: f64 = rates.iter().sum();
        let mut u = rng.random::<f64>() * total;
        let mut channel = JumpChannel::J1;
        for (c, rate) in JumpChannel::ALL.into_iter().zip(rates) {
            if rate <= 0.0 {
                continue;
            }
            channel = c;
            if u < rate {
                break;
            }
            u -= rate;
        }
        TrajectoryRecord {
            seed,
            jump: Some(Jump { t, channel }),
        }
    }
}

/// Samples one trajectory on `[0, t_max]`.
pub fn sample_trajectory(params: &SystemParams, t_max: f64, seed: u64) -> Result<TrajectoryRecord> {
    Ok(JumpSampler::new(params, t_max)?.sample(seed))
}

/// Samples `n_traj` trajectories in parallel; record `i` uses seed
/// `base_seed ^ i`.
pub fn sample_ensemble(
    params: &SystemParams,
    t_max: f64,
    n_traj: usize,
    base_seed: u64,
) -> Result<Vec<TrajectoryRecord>> {
    let sampler = JumpSampler::new(params, t_max)?;
    Ok((0..n_traj as u64)
        .into_par_iter()
        .map(|i| sampler.sample(trajectory_seed(base_seed, i)))
        .collect())
}

/// Sample-mean density matrices over an ensemble of trajectories.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleEstimate {
    pub times: Vec<f64>,
    pub rho_hat: Vec<ComplexMatrix>,
    pub n_traj: usize,
    /// Number of trajectories with `t < t_jump` (or no jump) at each time.
    pub unjumped: Vec<usize>,
    pub channel_counts: BTreeMap<JumpChannel, usize>,
}

impl EnsembleEstimate {
    pub fn unjumped_fraction(&self, k: usize) -> f64 {
        self.unjumped[k] as f64 / self.n_traj as f64
    }

    pub fn channel_fraction(&self, channel: JumpChannel) -> f64 {
        self.channel_counts.get(&channel).copied().unwrap_or(0) as f64 / self.n_traj as f64
    }

    /// Estimate at grid index `k` as a density matrix (not re-validated).
    pub fn density(&self, k: usize) -> DensityMatrix5 {
        DensityMatrix5::from_matrix_unchecked(self.rho_hat[k].clone(), self.times[k])
    }
}

struct Partial {
    sums: Vec<ComplexMatrix>,
    unjumped: Vec<usize>,
    channels: [usize; 5],
}

impl Partial {
    fn new(len: usize) -> Self {
        Self {
            sums: vec![ComplexMatrix::zeros(basis::DIM, basis::DIM); len],
            unjumped: vec![0; len],
            channels: [0; 5],
        }
    }

    fn merge(&mut self, other: Partial) {
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            *a += b;
        }
        for (a, b) in self.unjumped.iter_mut().zip(&other.unjumped) {
            *a += b;
        }
        for (a, b) in self.channels.iter_mut().zip(other.channels) {
            *a += b;
        }
    }
}

/// Ensemble average of the conditioned states over `n_traj` trajectories
/// on the time grid `t_grid` (strictly increasing, nonnegative).
pub fn ensemble_average(
    params: &SystemParams,
    t_grid: &[f64],
    n_traj: usize,
    base_seed: u64,
) -> Result<EnsembleEstimate> {
    if n_traj == 0 {
        return Err(Error::InvalidIntegrator("n_traj must be at least 1".into()));
    }
    if t_grid.is_empty() {
        return Err(Error::InvalidIntegrator("time grid is empty".into()));
    }
    if t_grid[0] < 0.0
        || !t_grid.iter().all(|t| t.is_finite())
        || t_grid.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::InvalidIntegrator(
            "time grid must be finite, nonnegative and strictly increasing".into(),
        ));
    }
    let t_max = *t_grid.last().unwrap();
    let sampler = if t_max > 0.0 {
        Some(JumpSampler::new(params, t_max)?)
    } else {
        None
    };

    // The no-jump branch is deterministic: every unjumped trajectory is in
    // the same normalised state at a given time.
    let conditioned: Vec<ComplexMatrix> = t_grid
        .iter()
        .map(|&t| {
            let psi = amplitudes(params, t).vector();
            match DensityMatrix5::pure(&psi, t) {
                Ok(rho) => rho.matrix().clone(),
                Err(_) => DensityMatrix5::basis_state(basis::E).matrix().clone(),
            }
        })
        .collect();
    let ground = DensityMatrix5::basis_state(basis::E).matrix().clone();

    let run_chunk = |chunk: usize| -> Partial {
        let mut part = Partial::new(t_grid.len());
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(n_traj);
        for i in start..end {
            let seed = trajectory_seed(base_seed, i as u64);
            let record = match &sampler {
                Some(s) => s.sample(seed),
                None => TrajectoryRecord { seed, jump: None },
            };
            if let Some(jump) = record.jump {
                part.channels[jump.channel.index()] += 1;
            }
            for (k, &t) in t_grid.iter().enumerate() {
                let before_jump = record.t_jump().is_none_or(|tj| t < tj);
                if before_jump {
                    part.sums[k] += &conditioned[k];
                    part.unjumped[k] += 1;
                } else {
                    part.sums[k] += &ground;
                }
            }
        }
        part
    };

    let n_chunks = n_traj.div_ceil(CHUNK);
    let mut total = Partial::new(t_grid.len());
    for wave_start in (0..n_chunks).step_by(CHUNKS_PER_WAVE) {
        let wave_end = (wave_start + CHUNKS_PER_WAVE).min(n_chunks);
        let partials: Vec<Partial> = (wave_start..wave_end)
            .into_par_iter()
            .map(run_chunk)
            .collect();
        for p in partials {
            total.merge(p);
        }
    }

    let scale = Complex64::new(1.0 / n_traj as f64, 0.0);
    let channel_counts = JumpChannel::ALL
        .into_iter()
        .map(|c| (c, total.channels[c.index()]))
        .collect();
    Ok(EnsembleEstimate {
        times: t_grid.to_vec(),
        rho_hat: total.sums.iter().map(|m| m.scale(scale)).collect(),
        n_traj,
        unjumped: total.unjumped,
        channel_counts,
    })
}
