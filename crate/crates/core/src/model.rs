//! Physical parameters of the two cascaded atom-cavity nodes and the
//! operators of the cascaded master equation.
//!
//! Everything lives in the single-excitation basis, always in this order:
//!
//! | index | state | atom A | cavity A | atom B | cavity B |
//! |-------|-------|--------|----------|--------|----------|
//! | 0     | `a`   | 1      | 0        | 0      | 0        |
//! | 1     | `b`   | 0      | 1        | 0      | 0        |
//! | 2     | `c`   | 0      | 0        | 1      | 0        |
//! | 3     | `d`   | 0      | 0        | 0      | 1        |
//! | 4     | `e`   | 0      | 0        | 0      | 0        |
//!
//! `ħ = 1`. Rates are usually quoted in units of the total cavity loss
//! rate `K = κ + κ'`, so the figure presets have `K = 1`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Basis indices of the five-state model.
pub mod basis {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const D: usize = 3;
    pub const E: usize = 4;
    pub const DIM: usize = 5;

    /// Occupation `(atom A, cavity A, atom B, cavity B)` of each basis state.
    pub const OCCUPATION: [[u8; 4]; DIM] = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [0, 0, 0, 0],
    ];
}

/// Which of the two cascaded subsystems: `A` is the source, `B` the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    A,
    B,
}

impl Node {
    fn suffix(self) -> &'static str {
        match self {
            Node::A => "a",
            Node::B => "b",
        }
    }
}

/// Couplings and rates of one atom-cavity node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeParams {
    /// Atom-cavity coupling constant.
    pub g: f64,
    /// Cavity output coupling through the transmitting mirror.
    pub kappa: f64,
    /// Absorption/scattering loss at the mirrors.
    pub kappa_prime: f64,
    /// Atomic spontaneous emission out the side of the cavity.
    pub gamma: f64,
    /// Atom-cavity detuning.
    pub delta: f64,
}

impl NodeParams {
    /// Total cavity loss rate `K = κ + κ'`.
    pub fn total_loss(&self) -> f64 {
        self.kappa + self.kappa_prime
    }

    /// Complex atomic frequency `Δ - iΓ/2`.
    pub(crate) fn atomic_frequency(&self) -> Complex64 {
        Complex64::new(self.delta, -0.5 * self.gamma)
    }

    fn validate(&self, node: Node) -> Result<()> {
        let sfx = node.suffix();
        let finite = [
            ("g", self.g),
            ("kappa", self.kappa),
            ("kappa_prime", self.kappa_prime),
            ("gamma", self.gamma),
            ("delta", self.delta),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::param(format!("{name}_{sfx}"), "must be finite"));
            }
        }
        for (name, v) in [
            ("kappa", self.kappa),
            ("kappa_prime", self.kappa_prime),
            ("gamma", self.gamma),
        ] {
            if v < 0.0 {
                return Err(Error::param(
                    format!("{name}_{sfx}"),
                    format!("rates must be nonnegative, got {v}"),
                ));
            }
        }
        if self.total_loss() <= 0.0 {
            return Err(Error::param(
                format!("kappa_{sfx}"),
                format!("total cavity loss kappa_{sfx} + kappa_prime_{sfx} must be positive"),
            ));
        }
        Ok(())
    }
}

/// Validated parameter set of the cascaded system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    a: NodeParams,
    b: NodeParams,
    phi: f64,
}

impl SystemParams {
    pub fn new(a: NodeParams, b: NodeParams, phi: f64) -> Result<Self> {
        a.validate(Node::A)?;
        b.validate(Node::B)?;
        if !phi.is_finite() {
            return Err(Error::param("phi", "must be finite"));
        }
        Ok(Self { a, b, phi })
    }

    /// Both nodes share the same parameters.
    pub fn symmetric(node: NodeParams, phi: f64) -> Result<Self> {
        Self::new(node, node, phi)
    }

    pub fn a(&self) -> &NodeParams {
        &self.a
    }

    pub fn b(&self) -> &NodeParams {
        &self.b
    }

    pub fn node(&self, node: Node) -> &NodeParams {
        match node {
            Node::A => &self.a,
            Node::B => &self.b,
        }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        Self::new(self.a, self.b, phi)
    }

    /// `√(κ_a κ_b)`, the strength of the one-way cavity coupling.
    pub fn cascade_strength(&self) -> f64 {
        (self.a.kappa * self.b.kappa).sqrt()
    }

    /// True when every node parameter agrees between A and B to a
    /// relative tolerance of `1e-12`.
    pub fn has_equal_nodes(&self) -> bool {
        self.first_unequal_field().is_none()
    }

    pub(crate) fn first_unequal_field(&self) -> Option<&'static str> {
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
        let pairs = [
            ("g", self.a.g, self.b.g),
            ("kappa", self.a.kappa, self.b.kappa),
            ("K", self.a.total_loss(), self.b.total_loss()),
            ("delta", self.a.delta, self.b.delta),
            ("gamma", self.a.gamma, self.b.gamma),
        ];
        pairs
            .into_iter()
            .find(|&(_, x, y)| !close(x, y))
            .map(|(n, _, _)| n)
    }
}

/// Total cavity loss rates `(K_a, K_b)`.
pub fn derived_rates(params: &SystemParams) -> (f64, f64) {
    (params.a.total_loss(), params.b.total_loss())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorLabel {
    Hamiltonian,
    EffectiveHamiltonian,
    Jump(JumpChannel),
}

/// The five decay channels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JumpChannel {
    /// Photon leaving through the output mirrors; the fields of both
    /// cavities superpose in this one channel.
    J1,
    /// Absorption/scattering at the mirrors of cavity A.
    J2,
    /// Absorption/scattering at the mirrors of cavity B.
    J3,
    /// Spontaneous emission of atom A.
    J4,
    /// Spontaneous emission of atom B.
    J5,
}

impl JumpChannel {
    pub const ALL: [JumpChannel; 5] = [
        JumpChannel::J1,
        JumpChannel::J2,
        JumpChannel::J3,
        JumpChannel::J4,
        JumpChannel::J5,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for JumpChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J{}", self.index() + 1)
    }
}

/// A labelled 5x5 operator in the fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub label: OperatorLabel,
    pub entries: ComplexMatrix,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Hermitian Hamiltonian: two Jaynes-Cummings nodes plus the cascade term
/// `i(√(κ_aκ_b)/2)(e^{-iφ} b a† - e^{iφ} b† a)`.
pub fn build_hamiltonian(params: &SystemParams) -> OperatorMatrix {
    use basis::*;
    let (na, nb) = (&params.a, &params.b);
    let mut h = ComplexMatrix::zeros(DIM, DIM);
    h[(A, A)] = c(na.delta, 0.0);
    h[(C, C)] = c(nb.delta, 0.0);
    h[(A, B)] = c(na.g, 0.0);
    h[(B, A)] = c(na.g, 0.0);
    h[(C, D)] = c(nb.g, 0.0);
    h[(D, C)] = c(nb.g, 0.0);

    let half = 0.5 * params.cascade_strength();
    // b a† |d⟩ = |b⟩ and b† a |b⟩ = |d⟩
    h[(B, D)] = c(0.0, half) * Complex64::from_polar(1.0, -params.phi);
    h[(D, B)] = c(0.0, -half) * Complex64::from_polar(1.0, params.phi);
    OperatorMatrix {
        label: OperatorLabel::Hamiltonian,
        entries: h,
    }
}

/// Jump operators `J1..J5`, each mapping one-excitation states onto `|e⟩`.
pub fn build_jump_operators(params: &SystemParams) -> [OperatorMatrix; 5] {
    use basis::*;
    let (na, nb) = (&params.a, &params.b);
    JumpChannel::ALL.map(|channel| {
        let mut j = ComplexMatrix::zeros(DIM, DIM);
        match channel {
            JumpChannel::J1 => {
                j[(E, B)] = c(na.kappa.sqrt(), 0.0);
                j[(E, D)] = Complex64::from_polar(nb.kappa.sqrt(), -params.phi);
            }
            JumpChannel::J2 => j[(E, B)] = c(na.kappa_prime.sqrt(), 0.0),
            JumpChannel::J3 => j[(E, D)] = c(nb.kappa_prime.sqrt(), 0.0),
            JumpChannel::J4 => j[(E, A)] = c(na.gamma.sqrt(), 0.0),
            JumpChannel::J5 => j[(E, C)] = c(nb.gamma.sqrt(), 0.0),
        }
        OperatorMatrix {
            label: OperatorLabel::Jump(channel),
            entries: j,
        }
    })
}

/// Non-Hermitian no-jump generator `H - (i/2) Σ J†J`, written out entrywise.
pub fn build_effective_hamiltonian(params: &SystemParams) -> OperatorMatrix {
    use basis::*;
    let (na, nb) = (&params.a, &params.b);
    let mut h = ComplexMatrix::zeros(DIM, DIM);
    h[(A, A)] = na.atomic_frequency();
    h[(B, B)] = c(0.0, -0.5 * na.total_loss());
    h[(C, C)] = nb.atomic_frequency();
    h[(D, D)] = c(0.0, -0.5 * nb.total_loss());
    h[(A, B)] = c(na.g, 0.0);
    h[(B, A)] = c(na.g, 0.0);
    h[(C, D)] = c(nb.g, 0.0);
    h[(D, C)] = c(nb.g, 0.0);
    h[(D, B)] = c(0.0, -params.cascade_strength()) * Complex64::from_polar(1.0, params.phi);
    OperatorMatrix {
        label: OperatorLabel::EffectiveHamiltonian,
        entries: h,
    }
}

#[cfg(test)]
mod tests {
    use super::basis::*;
    use super::*;

    fn fig2() -> SystemParams {
        SystemParams::symmetric(
            NodeParams {
                g: 5.0,
                kappa: 0.9,
                kappa_prime: 0.1,
                gamma: 0.2,
                delta: 0.1,
            },
            0.0,
        )
        .unwrap()
    }

    fn only(node: NodeParams) -> SystemParams {
        SystemParams::symmetric(node, 0.0).unwrap()
    }

    const QUIET: NodeParams = NodeParams {
        g: 0.0,
        kappa: 0.0,
        kappa_prime: 1.0,
        gamma: 0.0,
        delta: 0.0,
    };

    #[test]
    fn derived_rates_sum_losses() {
        let p = |kappa, kappa_prime| {
            SystemParams::symmetric(
                NodeParams {
                    kappa,
                    kappa_prime,
                    ..QUIET
                },
                0.0,
            )
            .unwrap()
        };
        assert_eq!(derived_rates(&p(0.9, 0.1)).0, 1.0);
        assert_eq!(derived_rates(&p(0.0, 1.0)).0, 1.0);
        assert_eq!(derived_rates(&p(1.0, 0.0)), (1.0, 1.0));
    }

    #[test]
    fn rejects_negative_and_nonfinite_rates() {
        let err = SystemParams::symmetric(
            NodeParams {
                kappa: -1.0,
                ..QUIET
            },
            0.0,
        )
        .unwrap_err();
        assert!(err.to_string().contains("kappa_a"), "{err}");
        let err = SystemParams::new(
            QUIET,
            NodeParams {
                gamma: f64::NAN,
                ..QUIET
            },
            0.0,
        )
        .unwrap_err();
        assert!(err.to_string().contains("gamma_b"), "{err}");
        let err = SystemParams::symmetric(
            NodeParams {
                kappa_prime: 0.0,
                ..QUIET
            },
            0.0,
        )
        .unwrap_err();
        assert!(err.to_string().contains("positive"), "{err}");
        assert!(SystemParams::symmetric(QUIET, f64::INFINITY).is_err());
    }

    #[test]
    fn hamiltonian_without_couplings_vanishes() {
        let h = build_hamiltonian(&only(QUIET));
        assert_eq!(h.entries.max_abs(), 0.0);

        let p = SystemParams::new(
            NodeParams {
                delta: 1.0,
                ..QUIET
            },
            QUIET,
            0.0,
        )
        .unwrap();
        let h = build_hamiltonian(&p).entries;
        let want = ComplexMatrix::from_diagonal(&[
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ]);
        assert_eq!(h, want);
    }

    #[test]
    fn fig2_cascade_entries() {
        let h = build_hamiltonian(&fig2()).entries;
        assert!((h[(B, D)] - c(0.0, 0.45)).norm() < 1e-15);
        assert!((h[(D, B)] - c(0.0, -0.45)).norm() < 1e-15);
        assert!(h.hermiticity_defect() < 1e-15);
        for k in 0..DIM {
            assert_eq!(h[(E, k)], c(0.0, 0.0));
            assert_eq!(h[(k, E)], c(0.0, 0.0));
        }
    }

    #[test]
    fn jump_operator_entries() {
        let p = only(NodeParams {
            gamma: 4.0,
            ..QUIET
        });
        let js = build_jump_operators(&p);
        assert_eq!(js[3].entries[(E, A)], c(2.0, 0.0));
        assert_eq!(js[0].entries.max_abs(), 0.0);
        assert_eq!(js[1].entries.max_abs(), 1.0); // kappa_prime = 1 in QUIET

        let js = build_jump_operators(&fig2());
        assert!((js[0].entries[(E, B)].re - 0.9f64.sqrt()).abs() < 1e-15);
        assert!((js[0].entries[(E, D)] - c(0.9f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((0.9f64.sqrt() - 0.9487).abs() < 1e-4);

        let p = SystemParams::symmetric(
            NodeParams {
                kappa: 1.0,
                ..QUIET
            },
            std::f64::consts::PI,
        )
        .unwrap();
        let j1 = &build_jump_operators(&p)[0].entries;
        assert!((j1[(E, D)] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn jump_operators_only_feed_ground_state() {
        for j in build_jump_operators(&fig2()) {
            for r in 0..E {
                for col in 0..DIM {
                    assert_eq!(j.entries[(r, col)], c(0.0, 0.0));
                }
            }
            assert_eq!(j.entries[(E, E)], c(0.0, 0.0));
        }
    }

    #[test]
    fn effective_hamiltonian_matches_definition() {
        for phi in [0.0, 0.4, 2.5] {
            let p = SystemParams::new(
                NodeParams {
                    g: 5.0,
                    kappa: 0.9,
                    kappa_prime: 0.1,
                    gamma: 0.2,
                    delta: 0.1,
                },
                NodeParams {
                    g: 3.0,
                    kappa: 0.7,
                    kappa_prime: 0.4,
                    gamma: 0.05,
                    delta: -0.3,
                },
                phi,
            )
            .unwrap();
            let h = build_hamiltonian(&p).entries;
            let mut decay = ComplexMatrix::zeros(DIM, DIM);
            for j in build_jump_operators(&p) {
                decay = &decay + &(&j.entries.adjoint() * &j.entries);
            }
            let expect = &h - &decay.scale(c(0.0, 0.5));
            let got = build_effective_hamiltonian(&p).entries;
            assert!(got.max_abs_diff(&expect) <= 1e-14);
            assert_eq!(got[(B, D)], c(0.0, 0.0));
            assert!(got[(D, B)].norm() > 0.0);
        }
        assert_eq!(
            build_effective_hamiltonian(&only(NodeParams {
                kappa_prime: 1.0,
                ..QUIET
            }))
            .entries[(B, B)],
            c(0.0, -0.5)
        );
    }

    #[test]
    fn equality_detection() {
        assert!(fig2().has_equal_nodes());
        let b = NodeParams {
            g: 5.0 + 1e-9,
            kappa: 0.9,
            kappa_prime: 0.1,
            gamma: 0.2,
            delta: 0.1,
        };
        let p = SystemParams::new(*fig2().a(), b, 0.0).unwrap();
        assert_eq!(p.first_unequal_field(), Some("g"));
    }
}
