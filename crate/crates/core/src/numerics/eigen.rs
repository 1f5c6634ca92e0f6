//! Eigenvalue and singular-value routines for matrices of dimension <= 8.
//!
//! * [`eigenvalues`] / [`eig4`]: general complex matrices, Householder
//!   reduction to Hessenberg form followed by single-shift QR with Wilkinson
//!   shifts and deflation.
//! * [`hermitian_eigen`]: cyclic complex Jacobi rotations, eigenvectors
//!   included.
//! * [`singular_values`]: one-sided (Hestenes) Jacobi. Small singular values
//!   come out with absolute error of order `eps * ||A||`, which is what the
//!   concurrence needs.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_DIM: usize = 8;
const QR_ITERATIONS_PER_EIGENVALUE: usize = 60;
const JACOBI_SWEEPS: usize = 60;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigenvalues of a general square complex matrix, in no particular order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    check_square(m)?;
    let n = m.rows();
    let mut h = m.clone();
    hessenberg_in_place(&mut h);

    let norm = h.frobenius_norm();
    if norm == 0.0 {
        return Ok(vec![ZERO; n]);
    }

    let mut values = vec![ZERO; n];
    let mut hi = n - 1;
    let mut iterations = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        // Locate the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let scale = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let scale = if scale == 0.0 { norm } else { scale };
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * scale {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            values[hi] = h[(hi, hi)];
            hi -= 1;
            iterations = 0;
            continue;
        }

        iterations += 1;
        total += 1;
        if iterations > QR_ITERATIONS_PER_EIGENVALUE {
            return Err(Error::NoConvergence(total));
        }

        let shift = if iterations.is_multiple_of(11) {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_sweep(&mut h, lo, hi, shift);
    }
    values[0] = h[(0, 0)];
    Ok(values)
}

/// Eigenvalues of a 4x4 complex matrix.
pub fn eig4(m: &ComplexMatrix) -> Result<[Complex64; 4]> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Dimension(format!(
            "eig4 expects a 4x4 matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let v = eigenvalues(m)?;
    Ok([v[0], v[1], v[2], v[3]])
}

/// Eigen-decomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and the unitary whose columns are the matching eigenvectors.
///
/// Only the Hermitian part of `m` is looked at implicitly; callers validate
/// Hermiticity beforehand.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    check_square(m)?;
    let n = m.rows();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = scale == 0.0;
    for _ in 0..JACOBI_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() <= 1e-300 {
                    continue;
                }
                let (c, s, phase) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                rotate_two_sided(&mut a, p, q, c, s, phase);
                rotate_columns(&mut v, p, q, c, s, phase);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(JACOBI_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.rows() > MAX_DIM || m.cols() > MAX_DIM {
        return Err(Error::Dimension(format!(
            "singular_values supports up to {MAX_DIM}x{MAX_DIM}"
        )));
    }
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());

    let mut converged = false;
    for _ in 0..JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for r in 0..rows {
                    alpha += a[(r, p)].norm_sqr();
                    beta += a[(r, q)].norm_sqr();
                    gamma += a[(r, p)].conj() * a[(r, q)];
                }
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() || gamma.norm() <= 1e-300 {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut a, p, q, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(JACOBI_SWEEPS));
    }

    let mut sv: Vec<f64> = (0..cols)
        .map(|c| (0..rows).map(|r| a[(r, c)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv.truncate(rows.min(cols));
    Ok(sv)
}

fn check_square(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() > MAX_DIM {
        return Err(Error::Dimension(format!(
            "eigen-solvers support up to {MAX_DIM}x{MAX_DIM}"
        )));
    }
    if m.as_slice()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::InvalidState("non-finite matrix entry".into()));
    }
    Ok(())
}

/// Parameters `(c, s, e^{iθ})` of the unitary `G = D R` that annihilates
/// the `(p,q)` entry of the Hermitian 2x2 block `[[app, apq], [apq*, aqq]]`
/// under `G† A G`. `D = diag(1, e^{-iθ})` makes the off-diagonal real,
/// `R` is the classic real Jacobi rotation.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let r = apq.norm();
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, phase)
}

/// `A <- A G` restricted to columns `p`, `q`, with
/// `G = [[c, s], [-s e^{-iθ}, c e^{-iθ}]]`.
fn rotate_columns(a: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let ph = phase.conj();
    for r in 0..a.rows() {
        let x = a[(r, p)];
        let y = a[(r, q)];
        a[(r, p)] = x * c - y * ph * s;
        a[(r, q)] = x * s + y * ph * c;
    }
}

/// `A <- G† A G`.
fn rotate_two_sided(a: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    rotate_columns(a, p, q, c, s, phase);
    // Rows: (G† A)[p,:] = c A[p,:] - s e^{iθ} A[q,:], (G† A)[q,:] = s A[p,:] + c e^{iθ} A[q,:]
    for col in 0..a.cols() {
        let x = a[(p, col)];
        let y = a[(q, col)];
        a[(p, col)] = x * c - y * phase * s;
        a[(q, col)] = x * s + y * phase * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
}

fn hessenberg_in_place(a: &mut ComplexMatrix) {
    let n = a.rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= vnorm;
        }
        // A <- (I - 2vv†) A
        for col in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * a[(k + 1 + i, col)])
                .sum();
            for (i, vi) in v.iter().enumerate() {
                a[(k + 1 + i, col)] -= 2.0 * vi * dot;
            }
        }
        // A <- A (I - 2vv†)
        for row in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| a[(row, k + 1 + i)] * vi)
                .sum();
            for (i, vi) in v.iter().enumerate() {
                a[(row, k + 1 + i)] -= 2.0 * dot * vi.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    let mu1 = half_tr + disc;
    let mu2 = half_tr - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// One shifted QR step `H - μI = QR`, `H <- RQ + μI` on the active block.
fn qr_sweep(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let x = h[(k, k)];
        let y = h[(k + 1, k)];
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), ZERO)
        } else {
            (x / r, y / r)
        };
        // rows k, k+1 <- [[c*, s*], [-s, c]] applied from the left
        for col in k..=hi {
            let p = h[(k, col)];
            let q = h[(k + 1, col)];
            h[(k, col)] = c.conj() * p + s.conj() * q;
            h[(k + 1, col)] = -s * p + c * q;
        }
        rotations.push((c, s));
    }
    for (offset, (c, s)) in rotations.into_iter().enumerate() {
        let k = lo + offset;
        let last = (k + 2).min(hi);
        // columns k, k+1 <- multiplied by G† = [[c, -s*], [s, c*]] from the right
        for row in lo..=last {
            let p = h[(row, k)];
            let q = h[(row, k + 1)];
            h[(row, k)] = p * c + q * s;
            h[(row, k + 1)] = -p * s.conj() + q * c.conj();
        }
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let a = random_matrix(rng, n);
        (&a + &a.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let (_, u) = hermitian_eigen(&random_hermitian(rng, n)).unwrap();
        u
    }

    /// Determinant via Gaussian elimination with partial pivoting.
    fn det(m: &ComplexMatrix) -> Complex64 {
        let n = m.rows();
        let mut a = m.clone();
        let mut d = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
                .unwrap();
            if a[(piv, k)].norm() == 0.0 {
                return ZERO;
            }
            if piv != k {
                for c in 0..n {
                    let t = a[(k, c)];
                    a[(k, c)] = a[(piv, c)];
                    a[(piv, c)] = t;
                }
                d = -d;
            }
            d *= a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                for c in k..n {
                    let t = a[(k, c)];
                    a[(i, c)] -= f * t;
                }
            }
        }
        d
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn identity_and_diagonal() {
        let ev = eig4(&ComplexMatrix::identity(4)).unwrap();
        for z in ev {
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let d = ComplexMatrix::from_diagonal(&[1.0, 2.0, 3.0, 4.0].map(|x| Complex64::new(x, 0.0)));
        let ev = sorted_re(eig4(&d).unwrap().to_vec());
        for (z, want) in ev.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!((z - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_matrix_has_zero_spectrum() {
        let ev = eig4(&ComplexMatrix::zeros(4, 4)).unwrap();
        assert!(ev.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn rejects_wrong_shape() {
        assert!(eig4(&ComplexMatrix::identity(3)).is_err());
        assert!(eigenvalues(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn jordan_block_and_nilpotent() {
        let mut j = ComplexMatrix::zeros(4, 4);
        for i in 0..3 {
            j[(i, i + 1)] = Complex64::new(1.0, 0.0);
        }
        let ev = eig4(&j).unwrap();
        assert!(ev.iter().all(|z| z.norm() < 1e-3));
    }

    #[test]
    fn characteristic_polynomial_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = random_matrix(&mut rng, 4);
            let scale = m.frobenius_norm();
            for lambda in eig4(&m).unwrap() {
                let shifted = &m - &ComplexMatrix::identity(4).scale(lambda);
                assert!(
                    det(&shifted).norm() <= 1e-8 * scale.powi(4),
                    "residual too large"
                );
            }
        }
    }

    #[test]
    fn hermitian_spectrum_matches_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let h = random_hermitian(&mut rng, 4);
            let (jac, _) = hermitian_eigen(&h).unwrap();
            let qr = eig4(&h).unwrap();
            assert!(qr.iter().all(|z| z.im.abs() < 1e-12));
            let mut qr: Vec<f64> = qr.iter().map(|z| z.re).collect();
            qr.sort_by(f64::total_cmp);
            for (a, b) in qr.iter().zip(&jac) {
                assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn similarity_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, 4);
            let u = random_unitary(&mut rng, 4);
            let conj = &(&u * &m) * &u.adjoint();
            let a = sorted_re(eig4(&m).unwrap().to_vec());
            let b = sorted_re(eig4(&conj).unwrap().to_vec());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() < 1e-8, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn jacobi_reconstructs_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=6 {
            let h = random_hermitian(&mut rng, n);
            let (vals, v) = hermitian_eigen(&h).unwrap();
            let d = ComplexMatrix::from_diagonal(
                &vals
                    .iter()
                    .map(|&x| Complex64::new(x, 0.0))
                    .collect::<Vec<_>>(),
            );
            let back = &(&v * &d) * &v.adjoint();
            assert!(back.max_abs_diff(&h) < 1e-13);
            assert!((&v.adjoint() * &v).max_abs_diff(&ComplexMatrix::identity(n)) < 1e-13);
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn singular_values_of_unitary_times_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let u = random_unitary(&mut rng, 4);
            let w = random_unitary(&mut rng, 4);
            let s = [3.0, 1.5, 1e-6, 0.0];
            let d = ComplexMatrix::from_diagonal(&s.map(|x| Complex64::new(x, 0.0)));
            let m = &(&u * &d) * &w;
            let sv = singular_values(&m).unwrap();
            for (a, b) in sv.iter().zip(s) {
                assert!((a - b).abs() < 1e-14, "{a} vs {b}");
            }
        }
    }
}
