//! Process matrices of qubit channels and the birefringent-dephasing
//! realisation of the covariant channel with optimal dephasing.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::Matrix4;

use crate::channel::AffineBlochMap;
use crate::error::{Error, Result};
use crate::linalg::{c, pauli, re, trace2, Mat2, Vec3, C64};
use crate::qstate::QubitState;

/// `F_ij = Tr[G_i Lambda(G_j)]` with `G_i = sigma_i / sqrt(2)`, `G_0 = 1 / sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessMatrix {
    pub f: Matrix4<f64>,
    pub eigenvalues: [C64; 4],
}

impl ProcessMatrix {
    /// Eigenvalue moduli, largest first (ties broken by real part).
    pub fn moduli(&self) -> [f64; 4] {
        let mut ev = self.eigenvalues;
        ev.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(b.re.total_cmp(&a.re)));
        ev.map(|z| z.norm())
    }
}

pub fn f_matrix(channel: &AffineBlochMap) -> ProcessMatrix {
    let basis: [Mat2; 4] = core::array::from_fn(|k| pauli(k) * re(core::f64::consts::FRAC_1_SQRT_2));
    let images: [Mat2; 4] = core::array::from_fn(|j| channel.apply_operator(&basis[j]));
    let f = Matrix4::from_fn(|i, j| trace2(&(basis[i] * images[j])).re);
    let ev = f.complex_eigenvalues();
    ProcessMatrix {
        f,
        eigenvalues: [ev[0], ev[1], ev[2], ev[3]],
    }
}

/// `sigma_i / sqrt(2) = (rho_1 - rho_2) / c` with the two eigenstates of
/// `sigma_i` and `c = sqrt(2)`.
pub fn basis_decompose(i: usize) -> Result<(QubitState, QubitState, f64)> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidPauliIndex(i));
    }
    let mut axis = Vec3::zeros();
    axis[i - 1] = 1.0;
    Ok((
        QubitState::from_bloch(axis)?,
        QubitState::from_bloch(-axis)?,
        core::f64::consts::SQRT_2,
    ))
}

/// Gaussian frequency spectrum of width `delta` around `omega0`, and a
/// birefringent element with index difference `delta_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalModel {
    pub delta: f64,
    pub delta_n: f64,
    pub omega0: f64,
}

impl Default for OpticalModel {
    fn default() -> Self {
        Self {
            delta: 1.44e12,
            delta_n: 0.0089,
            omega0: 0.0,
        }
    }
}

impl OpticalModel {
    /// `s = delta^2 delta_n^2 t^2 / 2`.
    pub fn exponent(&self, t: f64) -> f64 {
        0.5 * (self.delta * self.delta_n * t).powi(2)
    }

    /// Interaction time at which the exponent equals `s`.
    pub fn time_for_exponent(&self, s: f64) -> f64 {
        (2.0 * s).sqrt() / (self.delta * self.delta_n).abs()
    }

    /// Decoherence factor `exp(-s - i delta_n omega0 t)`.
    pub fn kappa(&self, t: f64) -> C64 {
        let phase = -self.delta_n * self.omega0 * t;
        C64::from_polar((-self.exponent(t)).exp(), phase)
    }
}

/// Dephasing in the `sigma_z` basis with real factor `k`.
fn dephase(rho: &Mat2, k: f64) -> Mat2 {
    let mut out = *rho;
    out[(0, 1)] *= k;
    out[(1, 0)] *= k;
    out
}

/// Equal mixture of two dephasing branches, conjugated by
/// `u1 = (sigma_x + sigma_z) / sqrt(2)` and `u2 = [[1, i], [1, -i]] / sqrt(2)`.
/// The phase of `kappa` is compensated, so only `|kappa|` enters.
pub fn enm_channel_from_optics(model: &OpticalModel, t: f64) -> AffineBlochMap {
    enm_channel_from_modulus(model.kappa(t).norm())
}

/// The branch construction at a given `|kappa|`.
pub fn enm_channel_from_modulus(kappa: f64) -> AffineBlochMap {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let u1 = (pauli(1) + pauli(3)) * re(s);
    let u2 = Mat2::new(re(s), c(0.0, s), re(s), c(0.0, -s));
    let branch = |u: &Mat2, rho: &Mat2| u.adjoint() * dephase(&(u * rho * u.adjoint()), kappa) * u;
    let apply = |rho: &Mat2| (branch(&u1, rho) + branch(&u2, rho)) * re(0.5);
    // Read the affine Bloch form off the images of 1/2 and sigma_j / 2.
    let shift_image = apply(&(pauli(0) * re(0.5)));
    let shift = Vec3::from_fn(|k, _| trace2(&(pauli(k + 1) * shift_image)).re);
    let mut matrix = nalgebra::Matrix3::zeros();
    for j in 0..3 {
        let image = apply(&(pauli(j + 1) * re(0.5)));
        for k in 0..3 {
            matrix[(k, j)] = trace2(&(pauli(k + 1) * image)).re;
        }
    }
    AffineBlochMap::new(matrix, shift)
}

/// `{1, (1 + e^{-s})/2, (1 + e^{-s})/2, e^{-s}}`.
pub fn spectrum_moduli(s: f64) -> [f64; 4] {
    let k = (-s).exp();
    [1.0, 0.5 * (1.0 + k), 0.5 * (1.0 + k), k]
}

/// `prod |lambda_i| = (1 + e^{-s})^2 e^{-s} / 4`.
pub fn spectrum_product(s: f64) -> f64 {
    spectrum_moduli(s).iter().product()
}

/// Process-matrix spectra along a grid of exponents.
pub fn spectrum_sweep(exponents: &[f64]) -> Vec<[f64; 4]> {
    exponents
        .iter()
        .map(|&s| f_matrix(&enm_channel_from_modulus((-s).exp())).moduli())
        .collect()
}
