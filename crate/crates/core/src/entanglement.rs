//! Reduced two-qubit states and their concurrence.
//!
//! Two-qubit matrices use the product basis `|0,0⟩, |0,1⟩, |1,0⟩, |1,1⟩`
//! (indices 0..3), the first label belonging to node A. The `|1,1⟩` sector
//! is never populated in the single-excitation model but is kept as
//! explicit zeros so the general concurrence routine sees a full 4x4 state.

use num_complex::Complex64;

use crate::dynamics::DensityMatrix5;
use crate::error::{Error, Result};
use crate::model::basis;
use crate::numerics::{eig4, hermitian_eigen, singular_values, ComplexMatrix};

/// Which pair of qubits a reduced state describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    Atoms,
    Cavities,
}

impl Subsystem {
    /// Positions in [`basis::OCCUPATION`] of the kept pair and the traced pair.
    fn slots(self) -> ([usize; 2], [usize; 2]) {
        match self {
            Subsystem::Atoms => ([0, 2], [1, 3]),
            Subsystem::Cavities => ([1, 3], [0, 2]),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QubitPairDensity {
    rho: ComplexMatrix,
    subsystem: Subsystem,
}

impl QubitPairDensity {
    /// Validates a 4x4 two-qubit density matrix: Hermitian within `1e-10`,
    /// unit trace within `1e-9`, no eigenvalue below `-1e-9`.
    pub fn new(rho: ComplexMatrix, subsystem: Subsystem) -> Result<Self> {
        if rho.rows() != 4 || rho.cols() != 4 {
            return Err(Error::Dimension(format!(
                "two-qubit state must be 4x4, got {}x{}",
                rho.rows(),
                rho.cols()
            )));
        }
        let state = Self { rho, subsystem };
        state.check()?;
        Ok(state)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn subsystem(&self) -> Subsystem {
        self.subsystem
    }

    fn check(&self) -> Result<()> {
        let herm = self.rho.hermiticity_defect();
        if herm > 1e-10 {
            return Err(Error::InvalidState(format!(
                "two-qubit state not Hermitian (defect {herm:.3e})"
            )));
        }
        let tr = self.rho.trace();
        if (tr - 1.0).norm() > 1e-9 {
            return Err(Error::InvalidState(format!(
                "two-qubit trace {tr} differs from 1"
            )));
        }
        Ok(())
    }
}

fn partial_trace(rho: &DensityMatrix5, keep: Subsystem) -> QubitPairDensity {
    let ([k0, k1], [e0, e1]) = keep.slots();
    let occ = &basis::OCCUPATION;
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(4, 4);
    for i in 0..basis::DIM {
        for j in 0..basis::DIM {
            if (occ[i][e0], occ[i][e1]) != (occ[j][e0], occ[j][e1]) {
                continue;
            }
            let qi = usize::from(occ[i][k0]) * 2 + usize::from(occ[i][k1]);
            let qj = usize::from(occ[j][k0]) * 2 + usize::from(occ[j][k1]);
            out[(qi, qj)] += m[(i, j)];
        }
    }
    QubitPairDensity {
        rho: out,
        subsystem: keep,
    }
}

/// Reduced state of the two atoms.
pub fn partial_trace_cavities(rho: &DensityMatrix5) -> QubitPairDensity {
    partial_trace(rho, Subsystem::Atoms)
}

/// Reduced state of the two intracavity fields (vacuum/one-photon qubits).
pub fn partial_trace_atoms(rho: &DensityMatrix5) -> QubitPairDensity {
    partial_trace(rho, Subsystem::Cavities)
}

/// `σ_y ⊗ σ_y` in the product basis: swaps `|0,1⟩ ↔ |1,0⟩` and sends
/// `|0,0⟩ ↔ -|1,1⟩`.
pub fn spin_flip() -> ComplexMatrix {
    let mut y = ComplexMatrix::zeros(4, 4);
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y
}

/// Wootters concurrence `max{0, √λ₁ - √λ₂ - √λ₃ - √λ₄}`, where `λᵢ` are the
/// eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` in decreasing order.
///
/// The square roots are computed directly as the singular values of
/// `Wᵀ (σ_y⊗σ_y) W` for a factor `ρ = W W†`. Taking the eigenvalues of
/// the product matrix first and then their square roots turns rounding
/// noise of order `1e-17` in a vanishing eigenvalue into an error of order
/// `1e-9`; see [`concurrence_spectral`] for that route.
pub fn concurrence(rho: &QubitPairDensity) -> Result<f64> {
    rho.check()?;
    let (vals, vecs) = hermitian_eigen(rho.matrix())?;
    if vals[0] < -1e-9 {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {:.3e}",
            vals[0]
        )));
    }
    let factor = ComplexMatrix::from_fn(4, 4, |r, c| vecs[(r, c)] * vals[c].max(0.0).sqrt());
    let tau = &(&factor.transpose() * &spin_flip()) * &factor;
    let sv = singular_values(&tau)?;
    Ok(wootters_combination(&sv))
}

/// Concurrence through the eigenvalues of `ρ ρ̃` from the general 4x4
/// eigensolver. Accurate to roughly `√ε ≈ 1e-8` near rank-deficient states.
pub fn concurrence_spectral(rho: &QubitPairDensity) -> Result<f64> {
    rho.check()?;
    let flip = spin_flip();
    let tilde = &(&flip * &rho.matrix().conj()) * &flip;
    let product = rho.matrix() * &tilde;
    let mut roots = Vec::with_capacity(4);
    for lambda in eig4(&product)? {
        if lambda.im.abs() >= 1e-9 {
            return Err(Error::InvalidState(format!(
                "eigenvalue {lambda} of rho * rho_tilde is not real"
            )));
        }
        roots.push(lambda.re.max(0.0).sqrt());
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(wootters_combination(&roots))
}

fn wootters_combination(sorted_desc: &[f64]) -> f64 {
    let rest: f64 = sorted_desc[1..].iter().sum();
    (sorted_desc[0] - rest).clamp(0.0, 1.0)
}

/// Closed-form atom-pair concurrence `2|α||γ|`.
pub fn concurrence_atoms_closed(alpha: Complex64, gamma: Complex64) -> f64 {
    2.0 * alpha.norm() * gamma.norm()
}

/// Closed-form cavity-pair concurrence `2|β||δ|`.
pub fn concurrence_cavities_closed(beta: Complex64, delta: Complex64) -> f64 {
    2.0 * beta.norm() * delta.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{density_matrix, AmplitudeState};
    use crate::model::basis::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn projector(q: usize, subsystem: Subsystem) -> QubitPairDensity {
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(q, q)] = c(1.0, 0.0);
        QubitPairDensity::new(m, subsystem).unwrap()
    }

    #[test]
    fn traces_of_basis_projectors() {
        let at = partial_trace_cavities(&DensityMatrix5::basis_state(A));
        assert_eq!(at, projector(2, Subsystem::Atoms));
        let at = partial_trace_cavities(&DensityMatrix5::basis_state(E));
        assert_eq!(at, projector(0, Subsystem::Atoms));
        let cav = partial_trace_atoms(&DensityMatrix5::basis_state(B));
        assert_eq!(cav, projector(2, Subsystem::Cavities));
        let cav = partial_trace_atoms(&DensityMatrix5::basis_state(A));
        assert_eq!(cav, projector(0, Subsystem::Cavities));
    }

    #[test]
    fn atomic_reduction_has_expected_entries() {
        let s = AmplitudeState::from_amplitudes(
            1.0,
            [c(0.5, 0.1), c(0.1, -0.3), c(-0.2, 0.4), c(0.3, 0.0)],
        );
        let rho = density_matrix(&s);
        let at = partial_trace_cavities(&rho);
        let m = at.matrix();
        assert!((m[(2, 2)] - s.alpha.norm_sqr()).norm() < 1e-16);
        assert!((m[(1, 1)] - s.gamma.norm_sqr()).norm() < 1e-16);
        assert!((m[(2, 1)] - s.alpha * s.gamma.conj()).norm() < 1e-16);
        let ground = s.beta.norm_sqr() + s.delta.norm_sqr() + s.eps_sq;
        assert!((m[(0, 0)] - ground).norm() < 1e-15);
        assert_eq!(m[(2, 0)], c(0.0, 0.0));
        assert_eq!(m[(1, 0)], c(0.0, 0.0));
        for k in 0..4 {
            assert_eq!(m[(3, k)], c(0.0, 0.0));
            assert_eq!(m[(k, 3)], c(0.0, 0.0));
        }
        let cav = partial_trace_atoms(&rho);
        assert!((cav.matrix()[(2, 1)] - s.beta * s.delta.conj()).norm() < 1e-16);
    }

    #[test]
    fn separable_and_bell_states() {
        assert_eq!(concurrence(&projector(0, Subsystem::Atoms)).unwrap(), 0.0);
        let phi = [
            c(0.0, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
            c(0.0, 0.0),
        ];
        let bell =
            QubitPairDensity::new(ComplexMatrix::outer(&phi, &phi), Subsystem::Atoms).unwrap();
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-14);
        assert!((concurrence_spectral(&bell).unwrap() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn maximally_mixed_state_is_unentangled() {
        let m = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        let mixed = QubitPairDensity::new(m, Subsystem::Cavities).unwrap();
        assert!(concurrence(&mixed).unwrap() < 1e-15);
    }

    #[test]
    fn werner_state_threshold() {
        // p|Ψ⁺⟩⟨Ψ⁺| + (1-p) I/4 has concurrence max(0, (3p - 1)/2).
        let psi = [
            c(0.0, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
            c(0.0, 0.0),
        ];
        for p in [0.2, 1.0 / 3.0, 0.5, 0.8] {
            let m = &ComplexMatrix::outer(&psi, &psi).scale(c(p, 0.0))
                + &ComplexMatrix::identity(4).scale(c((1.0 - p) / 4.0, 0.0));
            let w = QubitPairDensity::new(m, Subsystem::Atoms).unwrap();
            let want = f64::max(0.0, (3.0 * p - 1.0) / 2.0);
            assert!((concurrence(&w).unwrap() - want).abs() < 1e-13, "p = {p}");
            assert!(
                (concurrence_spectral(&w).unwrap() - want).abs() < 1e-7,
                "p = {p}"
            );
        }
    }

    #[test]
    fn rejects_invalid_states() {
        let mut m = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        m[(0, 1)] = c(0.1, 0.0);
        assert!(QubitPairDensity::new(m, Subsystem::Atoms).is_err());
        let m = ComplexMatrix::identity(4).scale(c(0.3, 0.0));
        assert!(QubitPairDensity::new(m, Subsystem::Atoms).is_err());
        assert!(QubitPairDensity::new(ComplexMatrix::identity(3), Subsystem::Atoms).is_err());
        let m =
            ComplexMatrix::from_diagonal(&[c(1.1, 0.0), c(-0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let bad = QubitPairDensity {
            rho: m,
            subsystem: Subsystem::Atoms,
        };
        assert!(concurrence(&bad).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(concurrence_atoms_closed(c(1.0, 0.0), c(0.0, 0.0)), 0.0);
        let h = c(FRAC_1_SQRT_2, 0.0);
        assert!((concurrence_atoms_closed(h, h) - 1.0).abs() < 1e-15);
        assert_eq!(concurrence_cavities_closed(c(0.0, 0.0), c(0.0, 0.0)), 0.0);
    }
}
