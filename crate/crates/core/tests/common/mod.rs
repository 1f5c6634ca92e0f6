#![allow(dead_code)]

use num_complex::Complex64;
use qsim::{NodeParams, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn node(g: f64, kappa: f64, kappa_prime: f64, gamma: f64, delta: f64) -> NodeParams {
    NodeParams {
        g,
        kappa,
        kappa_prime,
        gamma,
        delta,
    }
}

pub fn fig2() -> SystemParams {
    SystemParams::symmetric(node(5.0, 0.9, 0.1, 0.2, 0.1), 0.0).unwrap()
}

/// The unequal two-node example used across the test suite.
pub fn unequal() -> SystemParams {
    SystemParams::new(
        node(5.0, 0.9, 0.1, 0.2, 0.1),
        node(4.0, 1.0, 0.2, 0.1, -0.1),
        0.3,
    )
    .unwrap()
}

pub fn random_node(rng: &mut impl Rng) -> NodeParams {
    node(
        rng.random_range(0.5..6.0),
        rng.random_range(0.2..1.2),
        rng.random_range(0.0..0.5),
        rng.random_range(0.0..0.5),
        rng.random_range(-0.5..0.5),
    )
}

/// `n` parameter sets with independently drawn nodes.
pub fn random_unequal_sets(n: usize, seed: u64) -> Vec<SystemParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let a = random_node(&mut rng);
            let b = random_node(&mut rng);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            SystemParams::new(a, b, phi).unwrap()
        })
        .collect()
}

/// `(α, β, γ, δ)` with `Σ|·|² ≤ 1`, drawn uniformly in direction and with
/// a random total norm.
pub fn random_amplitudes(rng: &mut impl Rng) -> [Complex64; 4] {
    let mut v: [Complex64; 4] =
        std::array::from_fn(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scale = rng.random_range(0.0..1.0f64).sqrt() / norm;
    for z in &mut v {
        *z *= scale;
    }
    v
}

/// Non-Hermitian no-jump generator `-i H_eff` written out entry by entry,
/// independently of the library's operator builders.
pub fn no_jump_generator(p: &SystemParams) -> [[Complex64; 4]; 4] {
    let (a, b) = (p.a(), p.b());
    let ka = a.kappa + a.kappa_prime;
    let kb = b.kappa + b.kappa_prime;
    let cascade = (a.kappa * b.kappa).sqrt();
    let i = c(0.0, 1.0);
    let mut h = [[c(0.0, 0.0); 4]; 4];
    h[0][0] = c(a.delta, -a.gamma / 2.0);
    h[1][1] = c(0.0, -ka / 2.0);
    h[2][2] = c(b.delta, -b.gamma / 2.0);
    h[3][3] = c(0.0, -kb / 2.0);
    h[0][1] = c(a.g, 0.0);
    h[1][0] = c(a.g, 0.0);
    h[2][3] = c(b.g, 0.0);
    h[3][2] = c(b.g, 0.0);
    h[3][1] = -i * cascade * Complex64::from_polar(1.0, p.phi());
    let mut m = [[c(0.0, 0.0); 4]; 4];
    for r in 0..4 {
        for k in 0..4 {
            m[r][k] = -i * h[r][k];
        }
    }
    m
}

/// Oracle: plain RK4 on the four no-jump amplitudes from `|a⟩`, returning
/// the state at each requested time (ascending, multiples of `dt`).
pub fn rk4_oracle(p: &SystemParams, dt: f64, times: &[f64]) -> Vec<[Complex64; 4]> {
    let m = no_jump_generator(p);
    let f = |y: &[Complex64; 4]| -> [Complex64; 4] {
        std::array::from_fn(|r| (0..4).map(|k| m[r][k] * y[k]).sum())
    };
    let mut y = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    let mut t_steps = 0usize;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let target = (t / dt).round() as usize;
        while t_steps < target {
            let k1 = f(&y);
            let k2 = f(&std::array::from_fn(|i| y[i] + k1[i] * (dt / 2.0)));
            let k3 = f(&std::array::from_fn(|i| y[i] + k2[i] * (dt / 2.0)));
            let k4 = f(&std::array::from_fn(|i| y[i] + k3[i] * dt));
            y = std::array::from_fn(|i| {
                y[i] + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0)
            });
            t_steps += 1;
        }
        out.push(y);
    }
    out
}

/// Composite Simpson rule on `[a, b]` with `n` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + k as f64 * h);
    }
    sum * h / 3.0
}
