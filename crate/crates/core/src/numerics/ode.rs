//! Dormand-Prince 5(4) integrator with adaptive step control.
//!
//! The state is a fixed-size array; the integrator lands exactly on every
//! requested output time, so no interpolation is involved.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Step-size control settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    /// Steps smaller than this (relative to `max(1, |t|)`) abort the run.
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            min_step: 1e-14,
            max_steps: 5_000_000,
        }
    }
}

// Butcher tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Difference between the 5th and embedded 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (w, k) in terms {
        for i in 0..N {
            out[i] += h * w * k[i];
        }
    }
    out
}

/// Integrates `dy/dt = rhs(t, y)` from `(t0, y0)` and returns the state at
/// each of `outputs` (ascending, all `>= t0`).
pub fn integrate<const N: usize, F>(
    rhs: F,
    t0: f64,
    y0: [f64; N],
    outputs: &[f64],
    tol: &Tolerances,
) -> Result<Vec<[f64; N]>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut results = Vec::with_capacity(outputs.len());
    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let span = outputs.last().map_or(0.0, |&end| end - t0);
    let mut h = initial_step(&rhs, t, &y, &k1, span, tol);
    let mut steps = 0usize;

    for &target in outputs {
        if target < t - 1e-15 * t.abs().max(1.0) {
            return Err(Error::InvalidGrid {
                reason: "output times must be ascending and not before t0",
            });
        }
        while t < target {
            steps += 1;
            if steps > tol.max_steps {
                return Err(Error::IntegratorDiverged { t });
            }
            let remaining = target - t;
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            if step < tol.min_step * t.abs().max(1.0) && !last {
                return Err(Error::IntegratorDiverged { t });
            }

            let k2 = rhs(t + C2 * step, &axpy(&y, step, &[(A21, &k1)]));
            let k3 = rhs(t + C3 * step, &axpy(&y, step, &[(A31, &k1), (A32, &k2)]));
            let k4 = rhs(t + C4 * step, &axpy(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = rhs(
                t + C5 * step,
                &axpy(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = rhs(
                t + step,
                &axpy(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = axpy(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let t_new = if last { target } else { t + step };
            let k7 = rhs(t_new, &y_new);

            let mut err_sq = 0.0;
            for i in 0..N {
                let e = step * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
                err_sq += (e / scale) * (e / scale);
            }
            let err = (err_sq / N as f64).sqrt();
            if !err.is_finite() {
                return Err(Error::IntegratorDiverged { t });
            }

            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                t = t_new;
                y = y_new;
                k1 = k7;
                // Keep the proposed step unless it grew; a truncated final
                // step says nothing about the natural step size.
                if !last {
                    h = step * factor;
                } else {
                    h = h.max(step * factor);
                }
            } else {
                h = step * factor.min(1.0);
                if h < tol.min_step * t.abs().max(1.0) {
                    return Err(Error::IntegratorDiverged { t });
                }
            }
        }
        results.push(y);
    }
    Ok(results)
}

fn initial_step<const N: usize, F>(rhs: &F, t: f64, y: &[f64; N], f0: &[f64; N], span: f64, tol: &Tolerances) -> f64
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    if span <= 0.0 {
        return 1e-3;
    }
    let norm = |v: &[f64; N]| {
        let mut s = 0.0;
        for i in 0..N {
            let sc = tol.atol + tol.rtol * y[i].abs();
            s += (v[i] / sc) * (v[i] / sc);
        }
        (s / N as f64).sqrt()
    };
    let d0 = norm(y);
    let d1 = norm(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(span);
    let y1 = axpy(y, h0, &[(1.0, f0)]);
    let f1 = rhs(t + h0, &y1);
    let mut diff = [0.0; N];
    for i in 0..N {
        diff[i] = f1[i] - f0[i];
    }
    let d2 = norm(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(span)
}
