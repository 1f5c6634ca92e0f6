use num_complex::Complex64;

/// One classic fourth-order Runge-Kutta step of `dy/dt = f(t, y)`.
///
/// The input state is left untouched and the advanced state is returned.
pub fn rk4_step<F>(derivative: F, t: f64, state: &[Complex64], dt: f64) -> Vec<Complex64>
where
    F: Fn(f64, &[Complex64]) -> Vec<Complex64>,
{
    let half = 0.5 * dt;
    let k1 = derivative(t, state);
    let y2 = axpy(state, half, &k1);
    let k2 = derivative(t + half, &y2);
    let y3 = axpy(state, half, &k2);
    let k3 = derivative(t + half, &y3);
    let y4 = axpy(state, dt, &k3);
    let k4 = derivative(t + dt, &y4);

    let w = dt / 6.0;
    state
        .iter()
        .enumerate()
        .map(|(i, y)| y + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * w)
        .collect()
}

/// Scratch buffers for allocation-free RK4 steps of an autonomous system
/// `dy/dt = f(y)`. Produces the same values as [`rk4_step`].
#[derive(Clone, Debug)]
pub struct Rk4Workspace {
    k: [Vec<Complex64>; 4],
    stage: Vec<Complex64>,
}

impl Rk4Workspace {
    pub fn new(dim: usize) -> Self {
        let zero = vec![Complex64::new(0.0, 0.0); dim];
        Self {
            k: [zero.clone(), zero.clone(), zero.clone(), zero.clone()],
            stage: zero,
        }
    }

    /// Advances `state` by `dt` in place. `derivative(y, out)` must
    /// overwrite `out` with `f(y)`.
    pub fn step<F>(&mut self, mut derivative: F, state: &mut [Complex64], dt: f64)
    where
        F: FnMut(&[Complex64], &mut [Complex64]),
    {
        assert_eq!(
            state.len(),
            self.stage.len(),
            "workspace dimension mismatch"
        );
        let half = 0.5 * dt;
        let [k1, k2, k3, k4] = &mut self.k;
        derivative(state, k1);
        axpy_into(&mut self.stage, state, half, k1);
        derivative(&self.stage, k2);
        axpy_into(&mut self.stage, state, half, k2);
        derivative(&self.stage, k3);
        axpy_into(&mut self.stage, state, dt, k3);
        derivative(&self.stage, k4);
        let w = dt / 6.0;
        for i in 0..state.len() {
            state[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * w;
        }
    }
}

fn axpy_into(out: &mut [Complex64], y: &[Complex64], a: f64, x: &[Complex64]) {
    for ((o, y), x) in out.iter_mut().zip(y).zip(x) {
        *o = y + x * a;
    }
}

fn axpy(y: &[Complex64], a: f64, x: &[Complex64]) -> Vec<Complex64> {
    y.iter().zip(x).map(|(y, x)| y + x * a).collect()
}
