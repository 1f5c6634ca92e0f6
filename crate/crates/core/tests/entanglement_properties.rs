mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use qsim::analytic::{amplitudes, density_matrix, AmplitudeState};
use qsim::entanglement::{
    concurrence, concurrence_atoms_closed, concurrence_cavities_closed, concurrence_spectral,
    partial_trace_atoms, partial_trace_cavities, QubitPairDensity, Subsystem,
};
use qsim::numerics::ComplexMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{c, fig2, random_amplitudes, unequal};

fn random_unitary2(rng: &mut impl Rng) -> ComplexMatrix {
    let (a, b, ph, th) = (
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(0.0..std::f64::consts::FRAC_PI_2),
    );
    let (s, co) = th.sin_cos();
    let g = Complex64::from_polar(1.0, ph);
    ComplexMatrix::from_row_major(
        2,
        2,
        vec![
            Complex64::from_polar(co, a) * g,
            Complex64::from_polar(s, b) * g,
            -Complex64::from_polar(s, -b) * g,
            Complex64::from_polar(co, -a) * g,
        ],
    )
    .unwrap()
}

fn kron(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |i, j| x[(i / 2, j / 2)] * y[(i % 2, j % 2)])
}

/// Random full-rank two-qubit state `A A† / tr`.
fn random_mixed(rng: &mut impl Rng) -> QubitPairDensity {
    let a = ComplexMatrix::from_fn(4, 4, |_, _| {
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &a * &a.adjoint();
    let tr = m.trace();
    QubitPairDensity::new(m.scale(tr.inv()), Subsystem::Atoms).unwrap()
}

#[test]
fn closed_forms_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let s = AmplitudeState::from_amplitudes(0.0, random_amplitudes(&mut rng));
        let rho = density_matrix(&s);
        let at = partial_trace_cavities(&rho);
        let cav = partial_trace_atoms(&rho);
        let want_at = concurrence_atoms_closed(s.alpha, s.gamma);
        let want_cav = concurrence_cavities_closed(s.beta, s.delta);
        assert!((concurrence(&at).unwrap() - want_at).abs() <= 1e-10);
        assert!((concurrence(&cav).unwrap() - want_cav).abs() <= 1e-10);
        // the eigenvalue route is less accurate but must agree loosely
        assert!((concurrence_spectral(&at).unwrap() - want_at).abs() <= 1e-6);
    }
}

#[test]
fn routes_agree_on_generic_mixed_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let rho = random_mixed(&mut rng);
        let a = concurrence(&rho).unwrap();
        let b = concurrence_spectral(&rho).unwrap();
        assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
        assert!((0.0..=1.0).contains(&a));
    }
}

#[test]
fn local_unitaries_leave_concurrence_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let rho = random_mixed(&mut rng);
        let u = kron(&random_unitary2(&mut rng), &random_unitary2(&mut rng));
        let rotated = &(&u * rho.matrix()) * &u.adjoint();
        let rotated = QubitPairDensity::new(rotated, Subsystem::Atoms).unwrap();
        assert!((concurrence(&rho).unwrap() - concurrence(&rotated).unwrap()).abs() <= 1e-10);
    }
}

#[test]
fn atoms_then_cavities_trade_entanglement() {
    let p = fig2();
    let series: Vec<(f64, f64, f64)> = (0..=1000)
        .map(|k| {
            let t = k as f64 * 0.01;
            let rho = density_matrix(&amplitudes(&p, t));
            (
                t,
                concurrence(&partial_trace_cavities(&rho)).unwrap(),
                concurrence(&partial_trace_atoms(&rho)).unwrap(),
            )
        })
        .collect();
    let peak_at = series
        .iter()
        .copied()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap();
    let peak_cav = series
        .iter()
        .copied()
        .max_by(|x, y| x.2.total_cmp(&y.2))
        .unwrap();
    assert!((peak_at.0 - 1.88).abs() < 0.05);
    assert!(peak_at.2 < 0.1 * peak_cav.2);
    assert!(peak_cav.1 < 0.1 * peak_at.1);
    assert!(peak_cav.0 < peak_at.0);
}

#[test]
fn entanglement_dies_out() {
    for p in [fig2(), unequal()] {
        let rho = density_matrix(&amplitudes(&p, 60.0));
        assert!(concurrence(&partial_trace_cavities(&rho)).unwrap() < 1e-3);
        assert!(concurrence(&partial_trace_atoms(&rho)).unwrap() < 1e-3);
    }
}

#[test]
fn product_and_bell_states() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let singlet =
        AmplitudeState::from_amplitudes(0.0, [c(s, 0.0), c(0.0, 0.0), c(0.0, -s), c(0.0, 0.0)]);
    let rho = density_matrix(&singlet);
    assert!((concurrence(&partial_trace_cavities(&rho)).unwrap() - 1.0).abs() < 1e-12);
    assert!(concurrence(&partial_trace_atoms(&rho)).unwrap() < 1e-12);
    let product = AmplitudeState::initial();
    let rho = density_matrix(&product);
    assert_eq!(concurrence(&partial_trace_cavities(&rho)).unwrap(), 0.0);
}

proptest! {
    #[test]
    fn concurrence_is_bounded_and_matches_closed_form(
        re in proptest::array::uniform4(-1.0..1.0f64),
        im in proptest::array::uniform4(-1.0..1.0f64),
        scale in 0.0..1.0f64,
    ) {
        let raw: [Complex64; 4] = std::array::from_fn(|k| c(re[k], im[k]));
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);
        let amps = raw.map(|z| z * (scale.sqrt() / norm));
        let s = AmplitudeState::from_amplitudes(0.0, amps);
        let rho = density_matrix(&s);
        let at = concurrence(&partial_trace_cavities(&rho)).unwrap();
        prop_assert!((0.0..=1.0).contains(&at));
        prop_assert!((at - concurrence_atoms_closed(s.alpha, s.gamma)).abs() <= 1e-10);
    }
}
