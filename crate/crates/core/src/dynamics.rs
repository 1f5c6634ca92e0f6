//! Direct numerical integration of the no-jump amplitude equations and of
//! the full Lindblad master equation, both with fixed-step RK4.
//!
//! These are deliberately independent of the closed forms in
//! [`crate::analytic`]: they only see the operator matrices from
//! [`crate::model`]. Trace is never renormalised, so trace drift stays a
//! visible accuracy diagnostic.

use num_complex::Complex64;

use crate::analytic::AmplitudeState;
use crate::error::{Error, Result};
use crate::model::{
    basis, build_effective_hamiltonian, build_hamiltonian, build_jump_operators, SystemParams,
};
use crate::numerics::{hermitian_eigen, ComplexMatrix, Rk4Workspace};

const DIM: usize = basis::DIM;

/// Upper bound on `dt * max|H_eff|` accepted by the integrators.
pub const STABILITY_LIMIT: f64 = 0.1;

/// Default step in units of `1/K`.
pub const DEFAULT_DT: f64 = 1e-3;

/// A 5x5 density matrix in the fixed basis, stamped with its time.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix5 {
    rho: ComplexMatrix,
    t: f64,
}

impl DensityMatrix5 {
    /// Validates shape, Hermiticity (`1e-10`), unit trace (`1e-9`) and
    /// positivity (smallest eigenvalue `>= -1e-9`).
    pub fn new(rho: ComplexMatrix, t: f64) -> Result<Self> {
        if rho.rows() != DIM || rho.cols() != DIM {
            return Err(Error::Dimension(format!(
                "density matrix must be {DIM}x{DIM}, got {}x{}",
                rho.rows(),
                rho.cols()
            )));
        }
        let dm = Self { rho, t };
        dm.check()?;
        Ok(dm)
    }

    pub(crate) fn from_matrix_unchecked(rho: ComplexMatrix, t: f64) -> Self {
        debug_assert_eq!((rho.rows(), rho.cols()), (DIM, DIM));
        Self { rho, t }
    }

    /// Projector onto basis state `index` at `t = 0`.
    pub fn basis_state(index: usize) -> Self {
        assert!(index < DIM);
        let mut rho = ComplexMatrix::zeros(DIM, DIM);
        rho[(index, index)] = Complex64::new(1.0, 0.0);
        Self { rho, t: 0.0 }
    }

    /// The normalised projector `|ψ⟩⟨ψ|/⟨ψ|ψ⟩`.
    pub fn pure(psi: &[Complex64], t: f64) -> Result<Self> {
        if psi.len() != DIM {
            return Err(Error::Dimension(format!(
                "state vector must have {DIM} entries"
            )));
        }
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState(
                "cannot normalise a zero state vector".into(),
            ));
        }
        let rho = ComplexMatrix::outer(psi, psi).scale(Complex64::new(1.0 / norm, 0.0));
        Ok(Self { rho, t })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    /// Diagonal entries, i.e. occupation probabilities of `a, b, c, d, e`.
    pub fn populations(&self) -> [f64; DIM] {
        std::array::from_fn(|i| self.rho[(i, i)].re)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (vals, _) = hermitian_eigen(&hermitian_part(&self.rho))?;
        Ok(vals[0])
    }

    pub fn check(&self) -> Result<()> {
        let herm = self.rho.hermiticity_defect();
        if herm > 1e-10 {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {herm:.3e})"
            )));
        }
        let tr = self.trace();
        if (tr - 1.0).norm() > 1e-9 {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = self.min_eigenvalue()?;
        if min < -1e-9 {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }
}

pub(crate) fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &m.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// Fixed-step integration settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    dt: f64,
    t_max: f64,
    sample_stride: usize,
    steps: usize,
}

impl IntegratorConfig {
    /// `t_max` must be an integer multiple of `dt` (relative mismatch
    /// `<= 1e-9`) so that every sample lands exactly on `k * dt`.
    pub fn new(dt: f64, t_max: f64, sample_stride: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidIntegrator(format!(
                "dt must be positive, got {dt}"
            )));
        }
        if !(t_max >= 0.0 && t_max.is_finite()) {
            return Err(Error::InvalidIntegrator(format!(
                "t_max must be nonnegative, got {t_max}"
            )));
        }
        if t_max > 0.0 && dt > t_max {
            return Err(Error::InvalidIntegrator(format!(
                "dt = {dt} exceeds t_max = {t_max}"
            )));
        }
        if sample_stride == 0 {
            return Err(Error::InvalidIntegrator(
                "sample_stride must be at least 1".into(),
            ));
        }
        let ratio = t_max / dt;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::InvalidIntegrator(format!(
                "t_max = {t_max} is not an integer multiple of dt = {dt}"
            )));
        }
        Ok(Self {
            dt,
            t_max,
            sample_stride,
            steps: steps as usize,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn sample_stride(&self) -> usize {
        self.sample_stride
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Times at which samples are emitted.
    pub fn sample_times(&self) -> Vec<f64> {
        (0..=self.steps)
            .step_by(self.sample_stride)
            .map(|k| k as f64 * self.dt)
            .collect()
    }
}

/// Sparse linear generator `y' = G y`, stored as nonzero triplets.
#[derive(Clone, Debug)]
struct SparseGenerator {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseGenerator {
    fn from_dense(m: &ComplexMatrix) -> Self {
        let mut entries = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m[(i, j)] != Complex64::new(0.0, 0.0) {
                    entries.push((i, j, m[(i, j)]));
                }
            }
        }
        Self {
            dim: m.rows(),
            entries,
        }
    }

    fn apply(&self, y: &[Complex64], out: &mut [Complex64]) {
        out.fill(Complex64::new(0.0, 0.0));
        for &(i, j, v) in &self.entries {
            out[i] += v * y[j];
        }
    }

    fn integrate(
        &self,
        cfg: &IntegratorConfig,
        y0: Vec<Complex64>,
        mut emit: impl FnMut(f64, &[Complex64]),
    ) {
        let mut y = y0;
        let mut workspace = Rk4Workspace::new(self.dim);
        emit(0.0, &y);
        for k in 1..=cfg.steps {
            workspace.step(|s, out| self.apply(s, out), &mut y, cfg.dt);
            if k % cfg.sample_stride == 0 {
                emit(k as f64 * cfg.dt, &y);
            }
        }
    }
}

fn check_step(params: &SystemParams, cfg: &IntegratorConfig) -> Result<()> {
    let scale = build_effective_hamiltonian(params).entries.max_abs();
    let product = cfg.dt * scale;
    if product > STABILITY_LIMIT {
        return Err(Error::StepTooLarge {
            dt: cfg.dt,
            product,
            limit: STABILITY_LIMIT,
        });
    }
    Ok(())
}

/// Integrates `i d|ψ̄⟩/dt = H_eff|ψ̄⟩` from `|a⟩`.
pub fn integrate_schrodinger(
    params: &SystemParams,
    cfg: &IntegratorConfig,
) -> Result<Vec<AmplitudeState>> {
    check_step(params, cfg)?;
    let generator = build_effective_hamiltonian(params)
        .entries
        .scale(Complex64::new(0.0, -1.0));
    let generator = SparseGenerator::from_dense(&generator);

    let mut y0 = vec![Complex64::new(0.0, 0.0); DIM];
    y0[basis::A] = Complex64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(cfg.steps / cfg.sample_stride + 1);
    generator.integrate(cfg, y0, |t, y| {
        out.push(AmplitudeState::from_amplitudes(t, [y[0], y[1], y[2], y[3]]));
    });
    Ok(out)
}

/// Right-hand side of the master equation,
/// `-i[H, ρ] + Σ (J ρ J† - ½ J†J ρ - ½ ρ J†J)`, evaluated densely.
pub fn lindblad_rhs(
    hamiltonian: &ComplexMatrix,
    jumps: &[ComplexMatrix],
    rho: &ComplexMatrix,
) -> ComplexMatrix {
    let minus_i = Complex64::new(0.0, -1.0);
    let commutator = &(hamiltonian * rho) - &(rho * hamiltonian);
    let mut out = commutator.scale(minus_i);
    for j in jumps {
        let jd = j.adjoint();
        let jdj = &jd * j;
        let feed = &(&(j * rho) * &jd);
        let anti = (&(&jdj * rho) + &(rho * &jdj)).scale(Complex64::new(0.5, 0.0));
        out = &out + &(feed - &anti);
    }
    out
}

/// Flattened (row-major `vec ρ`) Liouvillian of the cascaded system.
fn liouvillian(params: &SystemParams) -> SparseGenerator {
    let h = build_hamiltonian(params).entries;
    let jumps: Vec<ComplexMatrix> = build_jump_operators(params)
        .into_iter()
        .map(|j| j.entries)
        .collect();
    let n = DIM * DIM;
    let mut dense = ComplexMatrix::zeros(n, n);
    for k in 0..DIM {
        for l in 0..DIM {
            let mut unit = ComplexMatrix::zeros(DIM, DIM);
            unit[(k, l)] = Complex64::new(1.0, 0.0);
            let image = lindblad_rhs(&h, &jumps, &unit);
            for i in 0..DIM {
                for j in 0..DIM {
                    dense[(i * DIM + j, k * DIM + l)] = image[(i, j)];
                }
            }
        }
    }
    SparseGenerator::from_dense(&dense)
}

/// Integrates the master equation from `rho0`.
pub fn integrate_master(
    params: &SystemParams,
    cfg: &IntegratorConfig,
    rho0: &DensityMatrix5,
) -> Result<Vec<DensityMatrix5>> {
    check_step(params, cfg)?;
    rho0.check()?;
    let generator = liouvillian(params);
    let mut out = Vec::with_capacity(cfg.steps / cfg.sample_stride + 1);
    generator.integrate(cfg, rho0.matrix().as_slice().to_vec(), |t, y| {
        let rho = ComplexMatrix::from_row_major(DIM, DIM, y.to_vec()).expect("finite state");
        out.push(DensityMatrix5::from_matrix_unchecked(rho, t));
    });
    Ok(out)
}
