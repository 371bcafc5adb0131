//! Small fixed-size complex matrices and the handful of dense routines the
//! rest of the crate needs.

use alloc::vec::Vec;

use nalgebra::{Complex, DMatrix, Dim, Matrix, Matrix2, Matrix3, Matrix4, RawStorage, Vector3, Vector4};
#[allow(unused_imports)]
use num_traits::Float;

pub type C64 = Complex<f64>;
pub type Mat2 = Matrix2<C64>;
pub type Mat3c = Matrix3<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Mat3 = Matrix3<f64>;
pub type Vec3 = Vector3<f64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Pauli matrix `sigma_k`; `k = 0` is the identity.
pub fn pauli(k: usize) -> Mat2 {
    match k {
        0 => Mat2::new(ONE, ZERO, ZERO, ONE),
        1 => Mat2::new(ZERO, ONE, ONE, ZERO),
        2 => Mat2::new(ZERO, -I, I, ZERO),
        3 => Mat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// Normalised Pauli basis element `G_k = sigma_k / sqrt(2)`, orthonormal
/// under the Hilbert-Schmidt inner product.
pub fn pauli_normalized(k: usize) -> Mat2 {
    pauli(k).map(|z| z * core::f64::consts::FRAC_1_SQRT_2)
}

pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn trace2(m: &Mat2) -> C64 {
    m[(0, 0)] + m[(1, 1)]
}

pub fn trace4(m: &Mat4) -> C64 {
    m[(0, 0)] + m[(1, 1)] + m[(2, 2)] + m[(3, 3)]
}

/// Largest entrywise deviation from Hermiticity.
pub fn hermiticity_defect<R: Dim, S: RawStorage<C64, R, R>>(m: &Matrix<C64, R, R, S>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Real eigenvalues of a Hermitian 2x2 matrix, ascending.
pub fn eigvalsh2(m: &Mat2) -> [f64; 2] {
    // Closed form: (tr +- sqrt((a-d)^2 + 4|b|^2)) / 2.
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [half_tr - disc, half_tr + disc]
}

/// Real eigenvalues of a Hermitian 4x4 matrix, ascending.
pub fn eigvalsh4(m: &Mat4) -> [f64; 4] {
    let ev: Vector4<f64> = m.symmetric_eigenvalues();
    let mut out = [ev[0], ev[1], ev[2], ev[3]];
    out.sort_by(f64::total_cmp);
    out
}

/// Real eigenvalues of a Hermitian 3x3 matrix, ascending.
pub fn eigvalsh3(m: &Mat3c) -> [f64; 3] {
    let ev = m.symmetric_eigenvalues();
    let mut out = [ev[0], ev[1], ev[2]];
    out.sort_by(f64::total_cmp);
    out
}

/// Eigenvalues of a real symmetric 3x3 matrix, ascending.
pub fn eigvals_sym3(m: &Mat3) -> [f64; 3] {
    let ev = m.symmetric_eigenvalues();
    let mut out = [ev[0], ev[1], ev[2]];
    out.sort_by(f64::total_cmp);
    out
}

/// Trace norm `Tr sqrt(M^dagger M)`: the sum of singular values.
pub fn trace_norm<R: Dim, C: Dim, S: RawStorage<C64, R, C>>(m: &Matrix<C64, R, C, S>) -> f64 {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return 0.0;
    }
    let dense = DMatrix::from_fn(rows, cols, |i, j| m[(i, j)]);
    dense.singular_values().iter().sum()
}

/// Trace norm of a Hermitian 4x4 matrix via its spectrum.
pub fn trace_norm_hermitian4(m: &Mat4) -> f64 {
    eigvalsh4(m).iter().map(|v| v.abs()).sum()
}

/// Shannon entropy in bits of a probability vector; values within
/// `clamp` of zero (including small negatives) count as zero.
pub fn shannon_bits(probabilities: &[f64], clamp: f64) -> f64 {
    probabilities
        .iter()
        .filter(|&&p| p > clamp)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Binary entropy `h(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// Log-spaced grid of `points` values on `[lo, hi]` (both > 0).
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return alloc::vec![hi];
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                (l0 + (l1 - l0) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

/// Uniform grid of `points` values on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return alloc::vec![lo];
    }
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn normalized_paulis_are_orthonormal() {
        for i in 0..4 {
            for j in 0..4 {
                let g = pauli_normalized(i) * pauli_normalized(j);
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(trace2(&g).re, expected, epsilon = 1e-15);
                assert_abs_diff_eq!(trace2(&g).im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn trace_norm_examples() {
        assert_abs_diff_eq!(trace_norm(&pauli(0)), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(trace_norm(&pauli(3)), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(trace_norm(&Mat2::zeros()), 0.0, epsilon = 1e-15);
        // Non-normal: singular values of [[0, 2], [0, 0]] are {2, 0}.
        let m = Mat2::new(ZERO, re(2.0), ZERO, ZERO);
        assert_abs_diff_eq!(trace_norm(&m), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn eigvalsh2_matches_nalgebra() {
        let m = Mat2::new(re(0.7), c(0.1, -0.2), c(0.1, 0.2), re(0.3));
        let ours = eigvalsh2(&m);
        let mut theirs: [f64; 2] = m.symmetric_eigenvalues().into();
        theirs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(ours[0], theirs[0], epsilon = 1e-14);
        assert_abs_diff_eq!(ours[1], theirs[1], epsilon = 1e-14);
    }

    #[test]
    fn binary_entropy_values() {
        assert_abs_diff_eq!(binary_entropy(0.5), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(binary_entropy(0.0), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.75), 0.811_278_124_459_132_8, epsilon = 1e-15);
    }

    #[test]
    fn grids_hit_endpoints() {
        let g = log_grid(1e-4, 5.0, 400);
        assert_eq!(g.len(), 400);
        assert_abs_diff_eq!(g[0], 1e-4, epsilon = 1e-18);
        assert_eq!(*g.last().unwrap(), 5.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let l = linear_grid(0.0, 3.0, 50);
        assert_eq!(l[0], 0.0);
        assert_eq!(l[49], 3.0);
    }
}
