//! Correlation and coherence quantifiers for qubits and qubit pairs.
//!
//! Entropies are in bits. Discord is one-way: the measurement acts on the
//! second factor `B`, which for Choi states is the channel output.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::covariant::CovariantRates;
use crate::error::{Error, Result};
use crate::linalg::{binary_entropy, eigvals_sym3, eigvalsh4, re, Mat3, Mat4, Vec3, C64};
use crate::numerics::simplex::{self, SimplexOptions};
use crate::qstate::{QubitState, Subsystem, TwoQubitState};

/// `(||rho^{T_B}||_1 - 1) / 2`.
pub fn negativity(rho: &TwoQubitState) -> f64 {
    let ev = eigvalsh4(&rho.partial_transpose());
    ev.iter().filter(|&&v| v < 0.0).map(|v| -v).sum()
}

/// `S(A) + S(B) - S(AB)`.
pub fn mutual_information(rho: &TwoQubitState) -> f64 {
    let sa = rho.partial_trace(Subsystem::B).entropy();
    let sb = rho.partial_trace(Subsystem::A).entropy();
    (sa + sb - rho.entropy()).max(0.0)
}

/// Sum of the moduli of the off-diagonal entries in the computational basis.
pub fn l1_coherence(rho: &QubitState) -> f64 {
    2.0 * rho.rho()[(0, 1)].norm()
}

/// Two-qubit state whose only off-diagonal entries are `rho_14`, `rho_23`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub diag: [f64; 4],
    /// `(rho_14, rho_23)`.
    pub anti: [C64; 2],
}

const X_PATTERN_TOL: f64 = 1e-10;

impl XState {
    pub fn new(diag: [f64; 4], anti: [C64; 2]) -> Result<Self> {
        let x = Self { diag, anti };
        TwoQubitState::new(x.matrix())?;
        Ok(x)
    }

    pub fn from_state(rho: &TwoQubitState) -> Result<Self> {
        let m = rho.rho();
        let mut max_entry: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    max_entry = max_entry.max(m[(i, j)].norm());
                }
            }
        }
        if max_entry > X_PATTERN_TOL {
            return Err(Error::NotXState { max_entry });
        }
        Ok(Self {
            diag: [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re],
            anti: [m[(0, 3)], m[(1, 2)]],
        })
    }

    pub fn matrix(&self) -> Mat4 {
        let mut m = Mat4::zeros();
        for k in 0..4 {
            m[(k, k)] = re(self.diag[k]);
        }
        m[(0, 3)] = self.anti[0];
        m[(3, 0)] = self.anti[0].conj();
        m[(1, 2)] = self.anti[1];
        m[(2, 1)] = self.anti[1].conj();
        m
    }

    pub fn state(&self) -> Result<TwoQubitState> {
        TwoQubitState::new(self.matrix())
    }
}

/// How a discord value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscordMethod {
    /// Minimum over the three X-state measurement candidates.
    XStateCandidates,
    /// Grid search plus simplex refinement over measurement directions.
    BruteForce,
}

/// Parameters of the optimal measurement: `theta`, `theta_prime` are the
/// arguments of the binary entropies of the two post-measurement states of
/// `A`; `k = (1 + n_z) / 2` and `l = 1 - k` describe the projector direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordWitness {
    pub theta: f64,
    pub theta_prime: f64,
    pub k: f64,
    pub l: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discord {
    pub value: f64,
    pub classical: f64,
    pub mutual_information: f64,
    pub method: DiscordMethod,
    /// Optimal measurement direction on `B`.
    pub direction: Vec3,
    pub witness: DiscordWitness,
}

/// Pauli data `(a, b, T)` used by the conditional entropy.
#[derive(Debug, Clone, Copy)]
struct Components {
    a: Vec3,
    b: Vec3,
    t: Mat3,
}

impl Components {
    fn of(rho: &TwoQubitState) -> Self {
        let (a, b, t) = rho.pauli_components();
        Self { a, b, t }
    }

    /// Conditional entropy of `A` after measuring `B` along `n`, and the
    /// two binary-entropy arguments.
    fn conditional(&self, n: &Vec3) -> (f64, f64, f64) {
        let bn = self.b.dot(n);
        let tn = self.t * n;
        let mut entropy = 0.0;
        let mut args = [0.5; 2];
        for (idx, sign) in [1.0, -1.0].into_iter().enumerate() {
            let p = 0.5 * (1.0 + sign * bn);
            if p <= 1e-14 {
                continue;
            }
            let r = ((self.a + tn * sign) / (1.0 + sign * bn)).norm().min(1.0);
            args[idx] = 0.5 * (1.0 + r);
            entropy += p * binary_entropy(args[idx]);
        }
        (entropy, args[0], args[1])
    }
}

fn assemble(rho: &TwoQubitState, comps: &Components, n: Vec3, method: DiscordMethod) -> Discord {
    let (cond, theta, theta_prime) = comps.conditional(&n);
    let mi = mutual_information(rho);
    let sa = rho.partial_trace(Subsystem::B).entropy();
    let classical = (sa - cond).max(0.0);
    let k = 0.5 * (1.0 + n[2]);
    Discord {
        value: (mi - classical).max(0.0),
        classical,
        mutual_information: mi,
        method,
        direction: n,
        witness: DiscordWitness {
            theta,
            theta_prime,
            k,
            l: 1.0 - k,
        },
    }
}

/// Discord of an X-state from the three candidate measurements (along
/// `+z`, `-z`, and the best equatorial direction). States whose `A`
/// marginal is not maximally mixed go through [`brute_force_discord`].
pub fn xstate_discord(x: &XState) -> Result<Discord> {
    let rho = x.state()?;
    let comps = Components::of(&rho);
    if comps.a.norm() > 1e-9 {
        return brute_force_discord(&rho, DEFAULT_GRID);
    }
    // Largest singular direction of the transverse block of T.
    let block = nalgebra::Matrix2::new(comps.t[(0, 0)], comps.t[(0, 1)], comps.t[(1, 0)], comps.t[(1, 1)]);
    let gram = block.transpose() * block;
    let eig = gram.symmetric_eigen();
    let top = if eig.eigenvalues[0] >= eig.eigenvalues[1] { 0 } else { 1 };
    let v = eig.eigenvectors.column(top);
    let candidates = [Vec3::z(), -Vec3::z(), Vec3::new(v[0], v[1], 0.0).normalize()];
    let best = candidates
        .into_iter()
        .min_by(|m, n| comps.conditional(m).0.total_cmp(&comps.conditional(n).0))
        .expect("three candidates");
    Ok(assemble(&rho, &comps, best, DiscordMethod::XStateCandidates))
}

/// Discord of any two-qubit state: the X-state route when the pattern
/// allows, brute force otherwise.
pub fn discord(rho: &TwoQubitState) -> Result<Discord> {
    match XState::from_state(rho) {
        Ok(x) => xstate_discord(&x),
        Err(Error::NotXState { .. }) => brute_force_discord(rho, DEFAULT_GRID),
        Err(e) => Err(e),
    }
}

pub const DEFAULT_GRID: usize = 200;

fn direction(polar: f64, azimuth: f64) -> Vec3 {
    Vec3::new(polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin(), polar.cos())
}

/// Minimises the conditional entropy over projective measurements on `B`:
/// a `grid x grid` polar/azimuth scan with golden-ratio offsets, then
/// Nelder-Mead refinement from the best few grid points.
pub fn brute_force_discord(rho: &TwoQubitState, grid: usize) -> Result<Discord> {
    const GOLDEN: f64 = 0.618_033_988_749_895;
    let comps = Components::of(rho);
    let grid = grid.max(2);
    let mut scored: Vec<(f64, f64, f64)> = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        // Measurements along n and -n coincide, so azimuths in [0, pi) suffice.
        let polar = core::f64::consts::PI * (i as f64 + GOLDEN) / grid as f64;
        for j in 0..grid {
            let azimuth = core::f64::consts::PI * (j as f64 + GOLDEN * GOLDEN) / grid as f64;
            scored.push((comps.conditional(&direction(polar, azimuth)).0, polar, azimuth));
        }
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Axis-aligned candidates are cheap and often optimal.
    let mut best_n = [Vec3::z(), Vec3::x(), Vec3::y()]
        .into_iter()
        .min_by(|m, n| comps.conditional(m).0.total_cmp(&comps.conditional(n).0))
        .expect("three axes");
    let mut best = comps.conditional(&best_n).0;
    let opts = SimplexOptions {
        initial_step: 0.02,
        f_tol: 1e-14,
        x_tol: 1e-9,
        max_iterations: 5_000,
    };
    for &(_, polar, azimuth) in scored.iter().take(4) {
        let m = simplex::minimize(
            |p: &[f64; 2]| comps.conditional(&direction(p[0], p[1])).0,
            [polar, azimuth],
            &opts,
        )?;
        if m.value < best {
            best = m.value;
            best_n = direction(m.point[0], m.point[1]);
        }
    }
    if scored[0].0 < best {
        best_n = direction(scored[0].1, scored[0].2);
    }
    Ok(assemble(rho, &comps, best_n, DiscordMethod::BruteForce))
}

/// `(|x|^2 + ||T||^2 - lambda_max(x x^T + T T^T)) / 4` with `x` the Bloch
/// vector of the first factor.
pub fn geometric_discord(rho: &TwoQubitState) -> f64 {
    let (x, _, t) = rho.pauli_components();
    let k = x * x.transpose() + t * t.transpose();
    let lmax = eigvals_sym3(&k)[2];
    (0.25 * (x.norm_squared() + t.norm_squared() - lmax)).max(0.0)
}

/// Correlation and coherence values along the optimal covariant dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationRow {
    pub t: f64,
    pub negativity: f64,
    pub mutual_information: f64,
    pub discord: f64,
    pub coherence: f64,
}

/// Negativity and coherence from their closed forms, mutual information
/// and discord computed from the closed-form Choi state. `c0` is the
/// initial l1-coherence of the probe state.
pub fn closed_form_trajectories(a: f64, x: f64, grid: &[f64], c0: f64) -> Result<Vec<CorrelationRow>> {
    let rates = CovariantRates::optimal_constant(a, x);
    let r = if a > 0.0 { x / a } else { 0.0 };
    grid.iter()
        .map(|&t| {
            let choi = rates.choi_closed_form(t)?.state()?;
            let beta = (-2.0 * a * t).exp();
            let coherence = 0.5 * c0 * ((1.0 + beta).powi(2) - r * r * (1.0 - beta).powi(2)).max(0.0).sqrt();
            Ok(CorrelationRow {
                t,
                negativity: 0.5 * beta,
                mutual_information: mutual_information(&choi),
                discord: discord(&choi)?.value,
                coherence,
            })
        })
        .collect()
}

/// `t -> infinity` limit of the mutual information of the optimal Choi state.
pub fn limit_mutual_information(x_over_a: f64) -> f64 {
    0.5 * binary_entropy(0.5 * (1.0 + x_over_a))
}

/// `t -> infinity` limit of the discord of the optimal Choi state.
pub fn limit_discord(x_over_a: f64) -> f64 {
    let r = x_over_a;
    limit_mutual_information(r) + binary_entropy(0.5 * (1.0 + 0.5 * (1.0 - r * r).max(0.0).sqrt())) - 1.0
}

/// `t -> infinity` limit of the l1-coherence under optimal dephasing.
pub fn limit_coherence(x_over_a: f64, c0: f64) -> f64 {
    0.5 * c0 * (1.0 - x_over_a * x_over_a).max(0.0).sqrt()
}
