//! Closed-form no-jump amplitudes for a single excitation starting in atom A.
//!
//! Until the first (and only possible) jump the state is
//! `α|a⟩ + β|b⟩ + γ|c⟩ + δ|d⟩`, unnormalised. The source pair `(α, β)` is a
//! damped Jaynes-Cummings doublet; the target pair `(γ, δ)` is driven by `β`
//! through the one-way cascade coupling. Once a jump fires the state is
//! `|e⟩` forever, so the unconditional density matrix is
//! `|ψ̄⟩⟨ψ̄| + (1 - ‖ψ̄‖²)|e⟩⟨e|`.
//!
//! The frequencies `Ω_a`, `Ω_b` are square roots; any branch gives the same
//! amplitudes, and the evaluators accept explicit [`OmegaConstants`] so that
//! property can be checked.

use num_complex::Complex64;

use crate::dynamics::DensityMatrix5;
use crate::error::{Error, Result};
use crate::model::{basis, Node, NodeParams, SystemParams};
use crate::numerics::ComplexMatrix;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Amplitudes of the unnormalised no-jump state at time `t`, plus the
/// population `|ε|²` of the post-jump state `|e⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeState {
    pub t: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
    pub eps_sq: f64,
}

impl AmplitudeState {
    /// Atom A excited, everything else empty.
    pub fn initial() -> Self {
        Self::from_amplitudes(0.0, [ONE, ZERO, ZERO, ZERO])
    }

    /// `eps_sq` is set to `1 - p_no`, clamped into `[0, 1]`.
    pub fn from_amplitudes(t: f64, [alpha, beta, gamma, delta]: [Complex64; 4]) -> Self {
        let p = alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr() + delta.norm_sqr();
        Self {
            t,
            alpha,
            beta,
            gamma,
            delta,
            eps_sq: (1.0 - p).clamp(0.0, 1.0),
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    /// The unnormalised no-jump vector in the five-state basis.
    pub fn vector(&self) -> [Complex64; basis::DIM] {
        [self.alpha, self.beta, self.gamma, self.delta, ZERO]
    }

    /// Occupation probabilities of `a, b, c, d, e`.
    pub fn populations(&self) -> [f64; basis::DIM] {
        [
            self.alpha.norm_sqr(),
            self.beta.norm_sqr(),
            self.gamma.norm_sqr(),
            self.delta.norm_sqr(),
            self.eps_sq,
        ]
    }
}

/// `Ω_a`, `Ω_b` and the node mismatch constants `Υ`, `Λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OmegaConstants {
    pub omega_a: Complex64,
    pub omega_b: Complex64,
    pub upsilon: f64,
    pub lambda: f64,
}

impl OmegaConstants {
    pub fn new(params: &SystemParams) -> Self {
        let (a, b) = (params.a(), params.b());
        Self {
            omega_a: omega(params, Node::A),
            omega_b: omega(params, Node::B),
            upsilon: (a.total_loss() - b.total_loss() + a.gamma - b.gamma) / 4.0,
            lambda: (a.delta - b.delta) / 2.0,
        }
    }

    /// `Υ + iΛ`, the difference of the two nodes' decay exponents.
    fn mismatch(&self) -> Complex64 {
        Complex64::new(self.upsilon, self.lambda)
    }
}

/// `Ω² = K²/4 - 4g² - iK(Δ - iΓ/2) - (Δ - iΓ/2)²`, i.e. `(K/2 - i(Δ - iΓ/2))² - 4g²`.
pub fn omega_squared(node: &NodeParams) -> Complex64 {
    let k = node.total_loss();
    let w = node.atomic_frequency();
    Complex64::new(k * k / 4.0 - 4.0 * node.g * node.g, 0.0) - I * k * w - w * w
}

/// Principal square root of [`omega_squared`] for one node.
pub fn omega(params: &SystemParams, node: Node) -> Complex64 {
    omega_squared(params.node(node)).sqrt()
}

/// Decay exponent `(K + Γ)/4 + iΔ/2` shared by both amplitudes of a node.
fn decay_exponent(node: &NodeParams) -> Complex64 {
    Complex64::new((node.total_loss() + node.gamma) / 4.0, node.delta / 2.0)
}

/// `sinh(Ωt/2)/Ω`, continuous through `Ω = 0` where it equals `t/2`.
fn sinh_half_over(omega: Complex64, t: f64) -> Complex64 {
    let x = omega * t * 0.5;
    if x.norm() < 1e-3 {
        let x2 = x * x;
        ONE * (t / 2.0) * (ONE + x2 / 6.0 + x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0)
    } else {
        x.sinh() / omega
    }
}

/// `e^z - 1` without cancellation for small `|z|`.
pub(crate) fn exp_m1(z: Complex64) -> Complex64 {
    let (a, b) = (z.re, z.im);
    let half_sin = (0.5 * b).sin();
    Complex64::new(
        a.exp_m1() * b.cos() - 2.0 * half_sin * half_sin,
        a.exp() * b.sin(),
    )
}

/// `e^z - 1 - z`, series for small arguments.
fn exp_m1_minus_z(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = z * z / 2.0;
        let mut sum = term;
        for k in 3..30 {
            term = term * z / k as f64;
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        exp_m1(z) - z
    }
}

/// `(e^{xt} - 1)/x`; below the degeneracy threshold the four-term series
/// `t(1 + xt/2 + (xt)²/6 + (xt)³/24)` is used, which tends to `t` as `x → 0`.
fn growth_factor(x: Complex64, t: f64, threshold: f64) -> Complex64 {
    if x.norm() * t.max(1.0) < threshold {
        let y = x * t;
        (ONE + y / 2.0 + y * y / 6.0 + y * y * y / 24.0) * t
    } else {
        exp_m1(x * t) / x
    }
}

/// Source amplitudes `(α, β)` at time `t`.
pub fn alpha_beta(params: &SystemParams, t: f64) -> (Complex64, Complex64) {
    alpha_beta_with(params, &OmegaConstants::new(params), t)
}

/// [`alpha_beta`] with caller-supplied square-root branches.
pub fn alpha_beta_with(
    params: &SystemParams,
    omegas: &OmegaConstants,
    t: f64,
) -> (Complex64, Complex64) {
    assert!(t >= 0.0, "time must be nonnegative, got {t}");
    let a = params.a();
    let omega = omegas.omega_a;
    let envelope = (-decay_exponent(a) * t).exp();
    let s = sinh_half_over(omega, t);
    let lead = Complex64::new(a.total_loss() / 2.0, 0.0) - I * a.atomic_frequency();
    let alpha = (lead * s + (omega * t * 0.5).cosh()) * envelope;
    let beta = -2.0 * I * a.g * s * envelope;
    (alpha, beta)
}

/// Target amplitudes `(γ, δ)` for arbitrary (unequal) node parameters.
pub fn gamma_delta_general(params: &SystemParams, t: f64) -> (Complex64, Complex64) {
    gamma_delta_general_with(params, &OmegaConstants::new(params), t)
}

/// [`gamma_delta_general`] with caller-supplied square-root branches.
pub fn gamma_delta_general_with(
    params: &SystemParams,
    omegas: &OmegaConstants,
    t: f64,
) -> (Complex64, Complex64) {
    assert!(t >= 0.0, "time must be nonnegative, got {t}");
    let (a, b) = (params.a(), params.b());
    let (oa, ob) = (omegas.omega_a, omegas.omega_b);
    let mismatch = omegas.mismatch();
    let threshold = 1e-6 * oa.norm().max(ob.norm()).max(1.0);

    let coupling = Complex64::from_polar(a.g * params.cascade_strength(), params.phi()) / (oa * ob);
    let mu_b = decay_exponent(b);
    let f_plus = coupling * ((-mu_b + ob * 0.5) * t).exp();
    let f_minus = coupling * ((-mu_b - ob * 0.5) * t).exp();

    let g_plus = growth_factor((oa + ob) * 0.5 - mismatch, t, threshold);
    let g_minus = growth_factor((oa - ob) * 0.5 - mismatch, t, threshold);
    // (e^{-yt} - 1)/y = -(e^{(-y)t} - 1)/(-y)
    let h_plus = -growth_factor(-((oa + ob) * 0.5 + mismatch), t, threshold);
    let h_minus = -growth_factor(-((oa - ob) * 0.5 + mismatch), t, threshold);

    let upper = f_plus * (g_minus + h_plus);
    let lower = f_minus * (g_plus + h_minus);
    let gamma = (upper - lower) * b.g;

    let base = Complex64::new((b.total_loss() - b.gamma) / 4.0, -b.delta / 2.0);
    let delta = I * (base + ob * 0.5) * lower - I * (base - ob * 0.5) * upper;
    (gamma, delta)
}

/// Target amplitudes `(γ, δ)` for identical nodes, using the simplified
/// closed form. Fails if the nodes differ beyond a `1e-12` relative
/// tolerance; use [`gamma_delta_general`] then.
pub fn gamma_delta_equal(params: &SystemParams, t: f64) -> Result<(Complex64, Complex64)> {
    if let Some(field) = params.first_unequal_field() {
        return Err(Error::UnequalParameters(field));
    }
    Ok(gamma_delta_equal_with(params, omega(params, Node::A), t))
}

/// [`gamma_delta_equal`] with a caller-supplied `Ω` branch; the node
/// equality check is skipped.
pub fn gamma_delta_equal_with(
    params: &SystemParams,
    omega: Complex64,
    t: f64,
) -> (Complex64, Complex64) {
    assert!(t >= 0.0, "time must be nonnegative, got {t}");
    let n = params.a();
    let kappa = params.cascade_strength();
    let prefactor = Complex64::from_polar(kappa, params.phi()) / (omega * omega * omega);
    let mu = decay_exponent(n);
    let rising = ((-mu + omega * 0.5) * t).exp();
    let falling = ((-mu - omega * 0.5) * t).exp();
    // e^{-Ωt} + Ωt - 1 and e^{Ωt} - Ωt - 1
    let bracket_neg = exp_m1_minus_z(-omega * t);
    let bracket_pos = exp_m1_minus_z(omega * t);

    let gamma = prefactor * n.g * n.g * (bracket_neg * rising - bracket_pos * falling);

    let base = Complex64::new((n.total_loss() - n.gamma) / 4.0, -n.delta / 2.0);
    let delta = I
        * prefactor
        * n.g
        * ((base + omega * 0.5) * bracket_pos * falling
            - (base - omega * 0.5) * bracket_neg * rising);
    (gamma, delta)
}

/// Full amplitude state at time `t`. Identical nodes go through the
/// simplified closed form, everything else through the general one.
pub fn amplitudes(params: &SystemParams, t: f64) -> AmplitudeState {
    let (alpha, beta) = alpha_beta(params, t);
    let (gamma, delta) = if params.has_equal_nodes() {
        gamma_delta_equal_with(params, omega(params, Node::A), t)
    } else {
        gamma_delta_general(params, t)
    };
    AmplitudeState::from_amplitudes(t, [alpha, beta, gamma, delta])
}

/// No-jump probability `‖ψ̄‖² = |α|² + |β|² + |γ|² + |δ|²`.
pub fn p_no(state: &AmplitudeState) -> f64 {
    state.amplitudes().iter().map(|z| z.norm_sqr()).sum()
}

/// `|ψ̄⟩⟨ψ̄| + |ε|² |e⟩⟨e|`.
pub fn density_matrix(state: &AmplitudeState) -> DensityMatrix5 {
    let v = state.vector();
    let mut rho = ComplexMatrix::outer(&v, &v);
    rho[(basis::E, basis::E)] += state.eps_sq;
    DensityMatrix5::from_matrix_unchecked(rho, state.t)
}
