//! One- and two-qubit state algebra.
//!
//! Two-qubit matrices use the ordering `|00>, |01>, |10>, |11>` with the
//! first tensor factor labelled `A` and the second `B`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{
    eigvalsh2, eigvalsh4, hermiticity_defect, kron, pauli, re, trace2, trace4, Mat2, Mat3, Mat4, Vec3, ZERO,
};

/// Tolerance for algebraic identities (trace, Hermiticity).
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for positivity checks.
pub const PSD_TOL: f64 = 1e-9;
/// Trace/Hermiticity tolerance for two-qubit matrices built from numerically
/// propagated maps.
const TWO_QUBIT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// A single-qubit density matrix together with its Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    rho: Mat2,
    bloch: Vec3,
}

impl QubitState {
    /// `rho = (1 + r . sigma) / 2`.
    pub fn from_bloch(r: Vec3) -> Result<Self> {
        let norm = r.norm();
        if !(norm <= 1.0 + PSD_TOL) {
            return Err(Error::BlochOutOfBall { norm });
        }
        let mut rho = pauli(0);
        for k in 0..3 {
            rho += pauli(k + 1) * re(r[k]);
        }
        Ok(Self {
            rho: rho * re(0.5),
            bloch: r,
        })
    }

    pub fn from_density(rho: Mat2) -> Result<Self> {
        let tr = trace2(&rho);
        if (tr.re - 1.0).abs() > ALGEBRAIC_TOL || tr.im.abs() > ALGEBRAIC_TOL {
            return Err(Error::NotAState {
                reason: "trace is not 1",
            });
        }
        if hermiticity_defect(&rho) > ALGEBRAIC_TOL {
            return Err(Error::NotAState {
                reason: "matrix is not Hermitian",
            });
        }
        let bloch = bloch_of(&rho);
        if bloch.norm() > 1.0 + PSD_TOL {
            return Err(Error::NotAState {
                reason: "negative eigenvalue",
            });
        }
        Ok(Self { rho, bloch })
    }

    pub fn maximally_mixed() -> Self {
        Self::from_bloch(Vec3::zeros()).expect("origin is inside the ball")
    }

    /// `|+><+|`, the equatorial state with unit coherence.
    pub fn plus() -> Self {
        Self::from_bloch(Vec3::new(1.0, 0.0, 0.0)).expect("unit vector")
    }

    pub fn rho(&self) -> &Mat2 {
        &self.rho
    }

    pub fn bloch(&self) -> Vec3 {
        self.bloch
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        eigvalsh2(&self.rho)
    }

    pub fn entropy(&self) -> f64 {
        // Always a valid state, so the spectrum check cannot fail.
        entropy_of_spectrum(&self.eigenvalues()).unwrap_or(0.0)
    }
}

fn bloch_of(rho: &Mat2) -> Vec3 {
    Vec3::new(
        (trace2(&(pauli(1) * rho))).re,
        (trace2(&(pauli(2) * rho))).re,
        (trace2(&(pauli(3) * rho))).re,
    )
}

pub fn bloch_to_density(r: Vec3) -> Result<QubitState> {
    QubitState::from_bloch(r)
}

/// `r_k = Tr[sigma_k rho]`.
pub fn density_to_bloch(state: &QubitState) -> Vec3 {
    bloch_of(&state.rho)
}

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    rho: Mat4,
}

impl TwoQubitState {
    pub fn new(rho: Mat4) -> Result<Self> {
        let tr = trace4(&rho);
        if (tr.re - 1.0).abs() > TWO_QUBIT_TOL || tr.im.abs() > TWO_QUBIT_TOL {
            return Err(Error::NotAState {
                reason: "trace is not 1",
            });
        }
        if hermiticity_defect(&rho) > TWO_QUBIT_TOL {
            return Err(Error::NotAState {
                reason: "matrix is not Hermitian",
            });
        }
        if eigvalsh4(&rho)[0] < -PSD_TOL {
            return Err(Error::NotAState {
                reason: "negative eigenvalue",
            });
        }
        Ok(Self { rho })
    }

    /// Skips validation; for matrices that are states by construction.
    #[cfg(test)]
    pub(crate) fn new_unchecked(rho: Mat4) -> Self {
        Self { rho }
    }

    pub fn product(a: &QubitState, b: &QubitState) -> Self {
        Self {
            rho: kron(a.rho(), b.rho()),
        }
    }

    /// `|Phi+> = (|00> + |11>) / sqrt(2)`.
    pub fn bell_phi_plus() -> Self {
        let mut rho = Mat4::zeros();
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            rho[(i, j)] = re(0.5);
        }
        Self { rho }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            rho: Mat4::identity() * re(0.25),
        }
    }

    /// `rho = (1 + a.sigma x 1 + 1 x b.sigma + sum T_ij sigma_i x sigma_j) / 4`.
    /// The result is not validated.
    pub fn from_pauli_components(a: &Vec3, b: &Vec3, t: &Mat3) -> Mat4 {
        let mut rho = kron(&pauli(0), &pauli(0));
        for i in 0..3 {
            rho += kron(&pauli(i + 1), &pauli(0)) * re(a[i]);
            rho += kron(&pauli(0), &pauli(i + 1)) * re(b[i]);
            for j in 0..3 {
                rho += kron(&pauli(i + 1), &pauli(j + 1)) * re(t[(i, j)]);
            }
        }
        rho * re(0.25)
    }

    pub fn rho(&self) -> &Mat4 {
        &self.rho
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        eigvalsh4(&self.rho)
    }

    pub fn entropy(&self) -> f64 {
        entropy_of_spectrum(&self.eigenvalues()).unwrap_or(0.0)
    }

    /// Traces out `traced` and returns the remaining qubit.
    pub fn partial_trace(&self, traced: Subsystem) -> QubitState {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = ZERO;
                for k in 0..2 {
                    acc += match traced {
                        Subsystem::B => self.rho[(2 * i + k, 2 * j + k)],
                        Subsystem::A => self.rho[(2 * k + i, 2 * k + j)],
                    };
                }
                out[(i, j)] = acc;
            }
        }
        // Hermitise to absorb rounding before building the state.
        let herm = (out + out.adjoint()) * re(0.5);
        let bloch = bloch_of(&herm);
        QubitState { rho: herm, bloch }
    }

    /// Transpose on subsystem `B`.
    pub fn partial_transpose(&self) -> Mat4 {
        partial_transpose(&self.rho)
    }

    /// Local Bloch vectors `a_i = Tr[(sigma_i x 1) rho]`, `b_i = Tr[(1 x sigma_i) rho]`
    /// and the correlation tensor `T_ij = Tr[(sigma_i x sigma_j) rho]`.
    pub fn pauli_components(&self) -> (Vec3, Vec3, Mat3) {
        let expect = |m: Mat4| trace4(&(m * self.rho)).re;
        let mut a = Vec3::zeros();
        let mut b = Vec3::zeros();
        let mut t = Mat3::zeros();
        for i in 0..3 {
            a[i] = expect(kron(&pauli(i + 1), &pauli(0)));
            b[i] = expect(kron(&pauli(0), &pauli(i + 1)));
            for j in 0..3 {
                t[(i, j)] = expect(kron(&pauli(i + 1), &pauli(j + 1)));
            }
        }
        (a, b, t)
    }
}

/// Transpose on the second tensor factor. Involutive.
pub fn partial_transpose(rho: &Mat4) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = rho[(2 * i + l, 2 * j + k)];
                }
            }
        }
    }
    out
}

/// Von Neumann entropy in bits of a spectrum. Eigenvalues within
/// [`PSD_TOL`] of zero are clamped to zero.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> Result<f64> {
    if eigenvalues.iter().any(|&v| v < -PSD_TOL) {
        return Err(Error::NotAState {
            reason: "negative eigenvalue",
        });
    }
    Ok(eigenvalues
        .iter()
        .filter(|&&p| p > PSD_TOL)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0))
}

/// Matrices whose Hermitian spectrum can be taken.
pub trait HermitianSpectrum {
    fn hermitian_spectrum(&self) -> Vec<f64>;
}

impl HermitianSpectrum for Mat2 {
    fn hermitian_spectrum(&self) -> Vec<f64> {
        eigvalsh2(self).to_vec()
    }
}

impl HermitianSpectrum for Mat4 {
    fn hermitian_spectrum(&self) -> Vec<f64> {
        eigvalsh4(self).to_vec()
    }
}

impl HermitianSpectrum for QubitState {
    fn hermitian_spectrum(&self) -> Vec<f64> {
        self.eigenvalues().to_vec()
    }
}

impl HermitianSpectrum for TwoQubitState {
    fn hermitian_spectrum(&self) -> Vec<f64> {
        self.eigenvalues().to_vec()
    }
}

/// `S(rho) = -Tr rho log2 rho`.
pub fn von_neumann_entropy<M: HermitianSpectrum>(rho: &M) -> Result<f64> {
    entropy_of_spectrum(&rho.hermitian_spectrum())
}
