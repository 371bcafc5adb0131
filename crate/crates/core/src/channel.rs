//! Qubit channels in affine Bloch form and their Choi matrices.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Result;
use crate::linalg::{eigvalsh4, pauli, re, trace2, Mat2, Mat3, Mat4, Vec3, ONE, ZERO};
use crate::qstate::{QubitState, Subsystem, TwoQubitState};

/// Trace- and Hermiticity-preserving qubit map acting on Bloch vectors as
/// `r -> M r + v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineBlochMap {
    pub matrix: Mat3,
    pub shift: Vec3,
}

impl AffineBlochMap {
    pub fn new(matrix: Mat3, shift: Vec3) -> Self {
        Self { matrix, shift }
    }

    pub fn identity() -> Self {
        Self::new(Mat3::identity(), Vec3::zeros())
    }

    /// Maps every state to `1/2`.
    pub fn completely_depolarizing() -> Self {
        Self::new(Mat3::zeros(), Vec3::zeros())
    }

    /// Diagonal phase-covariant form: `(r1, r2, r3) -> (t r1, t r2, l r3 + shift)`.
    pub fn phase_covariant(transverse: f64, longitudinal: f64, shift: f64) -> Self {
        Self::new(
            Mat3::from_diagonal(&Vec3::new(transverse, transverse, longitudinal)),
            Vec3::new(0.0, 0.0, shift),
        )
    }

    pub fn apply_bloch(&self, r: &Vec3) -> Vec3 {
        self.matrix * r + self.shift
    }

    pub fn apply_state(&self, state: &QubitState) -> Result<QubitState> {
        QubitState::from_bloch(self.apply_bloch(&state.bloch()))
    }

    /// Linear extension to an arbitrary 2x2 operator.
    pub fn apply_operator(&self, x: &Mat2) -> Mat2 {
        // x = (tr(x) 1 + sum_k x_k sigma_k) / 2 with complex x_k.
        let tr = trace2(x);
        let comps: [_; 3] = core::array::from_fn(|k| trace2(&(pauli(k + 1) * x)));
        let mut out = pauli(0) * tr;
        for k in 0..3 {
            let mut image = tr * re(self.shift[k]);
            for (j, comp) in comps.iter().enumerate() {
                image += comp * re(self.matrix[(k, j)]);
            }
            out += pauli(k + 1) * image;
        }
        out * re(0.5)
    }

    /// `self o first`.
    pub fn compose(&self, first: &AffineBlochMap) -> AffineBlochMap {
        AffineBlochMap::new(self.matrix * first.matrix, self.matrix * first.shift + self.shift)
    }

    pub fn inverse(&self) -> Option<AffineBlochMap> {
        let inv = self.matrix.try_inverse()?;
        Some(AffineBlochMap::new(inv, -(inv * self.shift)))
    }

    /// `sum_ij |i><j| x Lambda(|i><j|) / 2`: the map acts on the second
    /// factor of `|Phi+>`, matching the usual matrix layout of covariant
    /// Choi states.
    pub fn choi(&self) -> ChoiState {
        let mut out = Mat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut unit = Mat2::zeros();
                unit[(i, j)] = ONE;
                let image = self.apply_operator(&unit);
                for k in 0..2 {
                    for l in 0..2 {
                        out[(2 * i + k, 2 * j + l)] = image[(k, l)] * 0.5;
                    }
                }
            }
        }
        ChoiState(out)
    }

    /// Applies the map to one factor of a two-qubit operator.
    pub fn apply_local(&self, rho: &Mat4, on: Subsystem) -> Mat4 {
        let mut out = Mat4::zeros();
        for p in 0..2 {
            for q in 0..2 {
                let mut block = Mat2::zeros();
                for u in 0..2 {
                    for v in 0..2 {
                        block[(u, v)] = match on {
                            // Block over A indices with B fixed to (p, q).
                            Subsystem::A => rho[(2 * u + p, 2 * v + q)],
                            Subsystem::B => rho[(2 * p + u, 2 * q + v)],
                        };
                    }
                }
                let image = self.apply_operator(&block);
                for u in 0..2 {
                    for v in 0..2 {
                        match on {
                            Subsystem::A => out[(2 * u + p, 2 * v + q)] = image[(u, v)],
                            Subsystem::B => out[(2 * p + u, 2 * q + v)] = image[(u, v)],
                        }
                    }
                }
            }
        }
        out
    }

    /// Maximum entrywise difference to another map.
    pub fn distance(&self, other: &AffineBlochMap) -> f64 {
        (self.matrix - other.matrix)
            .abs()
            .max()
            .max((self.shift - other.shift).abs().max())
    }
}

/// Choi matrix of a qubit map; positive semidefinite iff the map is
/// completely positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChoiState(pub Mat4);

impl ChoiState {
    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        eigvalsh4(&self.0)[0]
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        eigvalsh4(&self.0)
    }

    /// The Choi matrix as a two-qubit state; fails for non-CP maps.
    pub fn state(&self) -> Result<TwoQubitState> {
        TwoQubitState::new(self.0)
    }

    /// Recovers the affine Bloch map: `Lambda(X) = 2 Tr_A[(X^T x 1) Omega]`.
    pub fn to_map(&self) -> AffineBlochMap {
        let image = |x: &Mat2| -> Mat2 {
            let mut out = Mat2::zeros();
            for k in 0..2 {
                for l in 0..2 {
                    let mut acc = ZERO;
                    for i in 0..2 {
                        for j in 0..2 {
                            acc += x[(i, j)] * self.0[(2 * i + k, 2 * j + l)];
                        }
                    }
                    out[(k, l)] = acc * 2.0;
                }
            }
            out
        };
        let half_identity = image(&(pauli(0) * re(0.5)));
        let shift = Vec3::from_fn(|k, _| trace2(&(pauli(k + 1) * half_identity)).re);
        let mut matrix = Mat3::zeros();
        for j in 0..3 {
            let img = image(&(pauli(j + 1) * re(0.5)));
            for k in 0..3 {
                matrix[(k, j)] = trace2(&(pauli(k + 1) * img)).re;
            }
        }
        AffineBlochMap::new(matrix, shift)
    }
}
