//! Qubit dynamics generated by a time-dependent decoherence matrix.
//!
//! The generator is
//!
//! ```text
//! L_t(rho) = -i[(omega/2) sigma_z, rho]
//!            + 1/2 sum_ij gamma_ij(t) (sigma_j rho sigma_i - 1/2 {sigma_i sigma_j, rho})
//! ```
//!
//! i.e. GKSL form with jump operators `sigma_k / sqrt(2)`. With this
//! normalisation the Bloch vector obeys the affine system
//! `dr/dt = (Re gamma - tr(gamma) 1) r + xi`, `xi_k = -i sum_ij eps_ijk gamma_ij`,
//! and the phase-covariant matrix with off-diagonal `-i x` drives
//! `dr_3/dt = -2 a r_3 - 2 x`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::{AffineBlochMap, ChoiState};
use crate::error::{Error, Result};
use crate::linalg::{
    eigvalsh3, eigvalsh4, hermiticity_defect, kron, log_grid, pauli, re, trace_norm_hermitian4, Mat2, Mat3, Mat3c,
    Mat4, Vec3, I,
};
use crate::numerics::ode::{self, Tolerances};
use crate::numerics::simplex::{self, SimplexOptions};
use crate::qstate::{QubitState, Subsystem, TwoQubitState, PSD_TOL};

/// Shared, thread-safe `t -> gamma(t)`.
pub type GammaFn = Arc<dyn Fn(f64) -> Mat3c + Send + Sync>;

/// Decoherence matrix `gamma(t)` in the Pauli basis, plus an optional
/// `(omega/2) sigma_z` Hamiltonian.
#[derive(Clone)]
pub struct DecoherenceMatrix {
    gamma: GammaFn,
    hamiltonian_rate: f64,
}

impl fmt::Debug for DecoherenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DecoherenceMatrix")
            .field("gamma(0)", &(self.gamma)(0.0))
            .field("hamiltonian_rate", &self.hamiltonian_rate)
            .finish()
    }
}

impl DecoherenceMatrix {
    pub fn new<F>(gamma: F) -> Self
    where
        F: Fn(f64) -> Mat3c + Send + Sync + 'static,
    {
        Self {
            gamma: Arc::new(gamma),
            hamiltonian_rate: 0.0,
        }
    }

    pub fn constant(gamma: Mat3c) -> Self {
        Self::new(move |_| gamma)
    }

    /// `gamma = c 1`: isotropic depolarising noise.
    pub fn isotropic(c: f64) -> Self {
        Self::constant(Mat3c::identity() * re(c))
    }

    pub fn with_hamiltonian_rate(mut self, omega: f64) -> Self {
        self.hamiltonian_rate = omega;
        self
    }

    pub fn hamiltonian_rate(&self) -> f64 {
        self.hamiltonian_rate
    }

    pub fn at(&self, t: f64) -> Mat3c {
        (self.gamma)(t)
    }

    /// Checked Bloch generator at `t`.
    pub fn generator_at(&self, t: f64) -> Result<BlochGenerator> {
        let gamma = self.at(t);
        check_gamma(&gamma, t)?;
        Ok(BlochGenerator::from_gamma_unchecked(&gamma, self.hamiltonian_rate))
    }

    pub fn min_eigenvalue_at(&self, t: f64) -> f64 {
        eigvalsh3(&self.at(t))[0]
    }
}

fn check_gamma(gamma: &Mat3c, t: f64) -> Result<()> {
    if gamma.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFiniteGamma { t });
    }
    let scale = gamma.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if hermiticity_defect(gamma) > 1e-12 * scale {
        return Err(Error::NonHermitianGamma { t });
    }
    Ok(())
}

/// Affine Bloch-vector generator `dr/dt = drift r + xi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochGenerator {
    pub drift: Mat3,
    pub xi: Vec3,
}

impl BlochGenerator {
    pub fn from_gamma(gamma: &Mat3c, omega: f64) -> Result<Self> {
        check_gamma(gamma, f64::NAN)?;
        Ok(Self::from_gamma_unchecked(gamma, omega))
    }

    fn from_gamma_unchecked(gamma: &Mat3c, omega: f64) -> Self {
        // Symmetric part (gamma + gamma^T)/2 is Re(gamma) for Hermitian gamma.
        let trace = gamma[(0, 0)].re + gamma[(1, 1)].re + gamma[(2, 2)].re;
        let mut drift = Mat3::from_fn(|i, j| 0.5 * (gamma[(i, j)] + gamma[(j, i)]).re);
        for k in 0..3 {
            drift[(k, k)] -= trace;
        }
        drift[(0, 1)] -= omega;
        drift[(1, 0)] += omega;
        // xi_k = -i sum_ij eps_ijk gamma_ij = -i (gamma_ij - gamma_ji) for cyclic (i, j, k).
        let xi = Vec3::from_fn(|k, _| {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            (-I * (gamma[(i, j)] - gamma[(j, i)])).re
        });
        Self { drift, xi }
    }

    pub fn velocity(&self, r: &Vec3) -> Vec3 {
        self.drift * r + self.xi
    }
}

/// `L(rho)` for a fixed decoherence matrix.
pub fn lindbladian_apply(gamma: &Mat3c, rho: &QubitState, omega: f64) -> Result<Mat2> {
    check_gamma(gamma, f64::NAN)?;
    Ok(lindbladian_apply_operator(gamma, rho.rho(), omega))
}

/// Linear extension of [`lindbladian_apply`] to any 2x2 operator.
pub fn lindbladian_apply_operator(gamma: &Mat3c, x: &Mat2, omega: f64) -> Mat2 {
    let h = pauli(3) * re(0.5 * omega);
    let mut out = (h * x - x * h) * (-I);
    for i in 0..3 {
        for j in 0..3 {
            let g = gamma[(i, j)];
            if g.norm() == 0.0 {
                continue;
            }
            let (si, sj) = (pauli(i + 1), pauli(j + 1));
            let prod = si * sj;
            let term = sj * x * si - (prod * x + x * prod) * re(0.5);
            out += term * (g * 0.5);
        }
    }
    out
}

/// Settings for [`propagate`].
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationOptions {
    pub tolerances: Tolerances,
    /// Output times; `None` selects `default_points` log-spaced points on
    /// `[1e-4, t_end]`. Time 0 is always prepended.
    pub grid: Option<Vec<f64>>,
    pub default_points: usize,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            grid: None,
            default_points: 400,
        }
    }
}

impl PropagationOptions {
    pub fn with_grid(grid: Vec<f64>) -> Self {
        Self {
            grid: Some(grid),
            ..Self::default()
        }
    }
}

/// The dynamical map `Lambda_t` sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagatedMap {
    times: Vec<f64>,
    maps: Vec<AffineBlochMap>,
}

impl PropagatedMap {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn maps(&self) -> &[AffineBlochMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &AffineBlochMap)> {
        self.times.iter().copied().zip(self.maps.iter())
    }

    /// Index of the grid point equal to `t` (to rounding).
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let tol = 1e-12 * t.abs().max(1.0);
        self.times
            .iter()
            .position(|&s| (s - t).abs() <= tol)
            .ok_or(Error::NotOnGrid { t })
    }

    pub fn map_at(&self, t: f64) -> Result<&AffineBlochMap> {
        Ok(&self.maps[self.index_of(t)?])
    }

    /// Bloch trajectory `r(t) = M_t r0 + v_t` on the grid.
    pub fn trajectory(&self, r0: &Vec3) -> Vec<Vec3> {
        self.maps.iter().map(|m| m.apply_bloch(r0)).collect()
    }
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid { reason: "empty grid" });
    }
    if grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidGrid {
            reason: "times must be finite and non-negative",
        });
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid {
            reason: "times must be ascending",
        });
    }
    Ok(())
}

/// Integrates the map `Lambda_t` (the 3x3 matrix and the shift jointly) from
/// the identity at `t = 0`.
pub fn propagate(generator: &DecoherenceMatrix, t_end: f64, opts: &PropagationOptions) -> Result<PropagatedMap> {
    if !(t_end >= 0.0) {
        return Err(Error::InvalidGrid {
            reason: "t_end must be non-negative",
        });
    }
    let mut times = match &opts.grid {
        Some(g) => g.clone(),
        None if t_end > 1e-4 => log_grid(1e-4, t_end, opts.default_points.max(2)),
        None => alloc::vec![t_end],
    };
    validate_grid(&times)?;
    if times[0] > 0.0 {
        times.insert(0, 0.0);
    }
    for &t in &times {
        generator.generator_at(t)?;
    }

    let omega = generator.hamiltonian_rate;
    let rhs = |t: f64, y: &[f64; 12]| -> [f64; 12] {
        let g = BlochGenerator::from_gamma_unchecked(&generator.at(t), omega);
        let mut dy = [0.0; 12];
        for i in 0..3 {
            for j in 0..3 {
                dy[3 * i + j] = (0..3).map(|k| g.drift[(i, k)] * y[3 * k + j]).sum();
            }
            dy[9 + i] = (0..3).map(|k| g.drift[(i, k)] * y[9 + k]).sum::<f64>() + g.xi[i];
        }
        dy
    };
    let mut y0 = [0.0; 12];
    y0[0] = 1.0;
    y0[4] = 1.0;
    y0[8] = 1.0;
    let states = ode::integrate(rhs, 0.0, y0, &times, &opts.tolerances)?;
    let maps = states
        .iter()
        .map(|y| AffineBlochMap::new(Mat3::from_fn(|i, j| y[3 * i + j]), Vec3::new(y[9], y[10], y[11])))
        .collect();
    Ok(PropagatedMap { times, maps })
}

/// Outcome of a CP-divisibility scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpDivisibility {
    pub divisible: bool,
    pub first_violation: Option<f64>,
    pub min_eigenvalue: f64,
}

/// `gamma(t) >= 0` at every grid point (to `-1e-9`).
pub fn is_cp_divisible(generator: &DecoherenceMatrix, grid: &[f64]) -> Result<CpDivisibility> {
    validate_grid(grid)?;
    let mut min_eigenvalue = f64::INFINITY;
    let mut first_violation = None;
    for &t in grid {
        let ev = generator.min_eigenvalue_at(t);
        min_eigenvalue = min_eigenvalue.min(ev);
        if ev < -PSD_TOL && first_violation.is_none() {
            first_violation = Some(t);
        }
    }
    Ok(CpDivisibility {
        divisible: first_violation.is_none(),
        first_violation,
        min_eigenvalue,
    })
}

/// The propagator `V_{t,s}` with `Lambda_t = V_{t,s} o Lambda_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermediateMap {
    pub map: AffineBlochMap,
    pub choi_min_eigenvalue: f64,
}

pub const MAX_CONDITION: f64 = 1e12;

pub fn intermediate_map(map: &PropagatedMap, s: f64, t: f64) -> Result<IntermediateMap> {
    if !(t >= s && s >= 0.0) {
        return Err(Error::InvalidGrid {
            reason: "intermediate map needs t >= s >= 0",
        });
    }
    let lambda_s = map.map_at(s)?;
    let lambda_t = map.map_at(t)?;
    let singular = lambda_s.matrix.singular_values();
    let (smax, smin) = (singular.max(), singular.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::SingularIntermediateMap { condition });
    }
    let inv = lambda_s.inverse().ok_or(Error::SingularIntermediateMap { condition })?;
    let v = lambda_t.compose(&inv);
    Ok(IntermediateMap {
        map: v,
        choi_min_eigenvalue: v.choi().min_eigenvalue(),
    })
}

/// One time point of a product-state distance scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductDistance {
    pub t: f64,
    /// `min ||(Lambda_t x id)(rho) - sigma_A x sigma_B||_1` over product states.
    pub distance: f64,
    /// Distance to the fixed-point witness `Phi_t(rho_A) x rho_B`.
    pub witness_distance: f64,
    /// `2 exp(-2 c (t - onset))` for `t >= onset`, otherwise the trivial 2.
    pub bound: f64,
    pub best_a: Vec3,
    pub best_b: Vec3,
}

impl ProductDistance {
    pub fn within_bound(&self) -> bool {
        self.distance <= self.bound + 1e-6
    }
}

/// Checks the exponential loss of correlations for dynamics with
/// `gamma(t) >= c 1` from `onset` on.
pub fn verify_correlation_decay(
    generator: &DecoherenceMatrix,
    c: f64,
    onset: f64,
    rho_ab: &TwoQubitState,
    grid: &[f64],
) -> Result<Vec<ProductDistance>> {
    validate_grid(grid)?;
    let mut times: Vec<f64> = grid.to_vec();
    times.push(onset);
    times.sort_by(f64::total_cmp);
    times.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * a.abs().max(1.0));
    let end = *times.last().expect("non-empty");
    let dynamics = propagate(generator, end, &PropagationOptions::with_grid(times))?;
    let lambda_onset = *dynamics.map_at(onset)?;
    let rho_b = rho_ab.partial_trace(Subsystem::A);

    grid.iter()
        .map(|&t| {
            let lambda_t = dynamics.map_at(t)?;
            let evolved = lambda_t.apply_local(rho_ab.rho(), Subsystem::A);
            // Image of the maximally mixed state under V_{t, onset} (or under
            // Lambda_t itself before the onset).
            let fixed = if t >= onset {
                let inv = lambda_onset.inverse().ok_or(Error::SingularIntermediateMap {
                    condition: f64::INFINITY,
                })?;
                lambda_t.compose(&inv).shift
            } else {
                lambda_t.shift
            };
            let fixed = clamp_to_ball(fixed);
            let witness = kron(QubitState::from_bloch(fixed)?.rho(), rho_b.rho());
            let witness_distance = trace_norm_hermitian4(&(evolved - witness));
            let search = min_product_distance(&evolved, &[(fixed, rho_b.bloch())])?;
            let bound = if t >= onset {
                2.0 * (-2.0 * c * (t - onset)).exp()
            } else {
                2.0
            };
            Ok(ProductDistance {
                t,
                distance: search.distance.min(witness_distance),
                witness_distance,
                bound,
                best_a: search.a,
                best_b: search.b,
            })
        })
        .collect()
}

/// Result of a product-state search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductSearch {
    pub distance: f64,
    pub a: Vec3,
    pub b: Vec3,
}

const COARSE_POINTS: usize = 9;

fn clamp_to_ball(r: Vec3) -> Vec3 {
    let n = r.norm();
    if n > 1.0 {
        r / n
    } else {
        r
    }
}

fn bloch_rho(r: &Vec3) -> Mat2 {
    let mut rho = pauli(0);
    for k in 0..3 {
        rho += pauli(k + 1) * re(r[k]);
    }
    rho * re(0.5)
}

/// Minimises `||x - sigma_A x sigma_B||_1` over product states: a coarse
/// Cartesian scan of both Bloch balls (9 points per axis) followed by
/// Nelder-Mead refinement from the best coarse point and from each seed.
pub fn min_product_distance(x: &Mat4, seeds: &[(Vec3, Vec3)]) -> Result<ProductSearch> {
    let objective = |a: &Vec3, b: &Vec3| -> f64 {
        let sigma = kron(&bloch_rho(&clamp_to_ball(*a)), &bloch_rho(&clamp_to_ball(*b)));
        eigvalsh4(&(x - sigma)).iter().map(|v| v.abs()).sum()
    };

    let axis = |i: usize| -1.0 + 2.0 * i as f64 / (COARSE_POINTS - 1) as f64;
    let mut ball: Vec<(Vec3, Mat2)> = Vec::new();
    for i in 0..COARSE_POINTS {
        for j in 0..COARSE_POINTS {
            for k in 0..COARSE_POINTS {
                let r = Vec3::new(axis(i), axis(j), axis(k));
                if r.norm() <= 1.0 + 1e-12 {
                    ball.push((r, bloch_rho(&r)));
                }
            }
        }
    }
    let mut best = (f64::INFINITY, Vec3::zeros(), Vec3::zeros());
    for (ra, ma) in &ball {
        for (rb, mb) in &ball {
            let d: f64 = eigvalsh4(&(x - kron(ma, mb))).iter().map(|v| v.abs()).sum();
            if d < best.0 {
                best = (d, *ra, *rb);
            }
        }
    }

    let opts = SimplexOptions {
        initial_step: 0.05,
        f_tol: 1e-11,
        x_tol: 1e-8,
        max_iterations: 20_000,
    };
    let mut result = ProductSearch {
        distance: best.0,
        a: best.1,
        b: best.2,
    };
    let starts = core::iter::once((best.1, best.2)).chain(seeds.iter().copied());
    for (a0, b0) in starts {
        let start = [a0[0], a0[1], a0[2], b0[0], b0[1], b0[2]];
        let m = simplex::minimize(
            |p: &[f64; 6]| objective(&Vec3::new(p[0], p[1], p[2]), &Vec3::new(p[3], p[4], p[5])),
            start,
            &opts,
        )?;
        if m.value < result.distance {
            result = ProductSearch {
                distance: m.value,
                a: clamp_to_ball(Vec3::new(m.point[0], m.point[1], m.point[2])),
                b: clamp_to_ball(Vec3::new(m.point[3], m.point[4], m.point[5])),
            };
        }
    }
    Ok(result)
}

/// Choi matrix of `Lambda_t` at every grid point.
pub fn choi_trajectory(map: &PropagatedMap) -> Vec<ChoiState> {
    map.maps.iter().map(AffineBlochMap::choi).collect()
}
