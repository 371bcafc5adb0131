//! Nelder-Mead downhill simplex minimisation.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Initial edge length of the simplex.
    pub initial_step: f64,
    /// Converged once the spread of function values and the simplex
    /// diameter both drop below these.
    pub f_tol: f64,
    pub x_tol: f64,
    pub max_iterations: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            f_tol: 1e-12,
            x_tol: 1e-9,
            max_iterations: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<const N: usize> {
    pub point: [f64; N],
    pub value: f64,
    pub iterations: usize,
}

fn diameter<const N: usize>(pts: &[[f64; N]]) -> f64 {
    let mut d = 0.0_f64;
    for p in &pts[1..] {
        for i in 0..N {
            d = d.max((p[i] - pts[0][i]).abs());
        }
    }
    d
}

/// Minimises `f` starting from `start`.
pub fn minimize<const N: usize, F>(f: F, start: [f64; N], opts: &SimplexOptions) -> Result<Minimum<N>>
where
    F: Fn(&[f64; N]) -> f64,
{
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;

    // N + 1 vertices; N is small so arrays on the stack would need
    // generic_const_exprs, hence the Vec.
    let mut pts: alloc::vec::Vec<[f64; N]> = alloc::vec::Vec::with_capacity(N + 1);
    pts.push(start);
    for i in 0..N {
        let mut p = start;
        p[i] += opts.initial_step;
        pts.push(p);
    }
    let mut vals: alloc::vec::Vec<f64> = pts.iter().map(&f).collect();

    for iteration in 0..opts.max_iterations {
        // Sort vertices by value.
        let mut order: alloc::vec::Vec<usize> = (0..=N).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i]).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        if (vals[N] - vals[0]).abs() <= opts.f_tol && diameter(&pts) <= opts.x_tol {
            return Ok(Minimum {
                point: pts[0],
                value: vals[0],
                iterations: iteration,
            });
        }

        let mut centroid = [0.0; N];
        for p in &pts[..N] {
            for i in 0..N {
                centroid[i] += p[i] / N as f64;
            }
        }
        let along = |coef: f64| {
            let mut out = [0.0; N];
            for i in 0..N {
                out[i] = centroid[i] + coef * (pts[N][i] - centroid[i]);
            }
            out
        };

        let reflected = along(-ALPHA);
        let fr = f(&reflected);
        if fr < vals[0] {
            let expanded = along(-GAMMA);
            let fe = f(&expanded);
            if fe < fr {
                pts[N] = expanded;
                vals[N] = fe;
            } else {
                pts[N] = reflected;
                vals[N] = fr;
            }
            continue;
        }
        if fr < vals[N - 1] {
            pts[N] = reflected;
            vals[N] = fr;
            continue;
        }
        let (contracted, fc) = if fr < vals[N] {
            let p = along(-RHO);
            let v = f(&p);
            (p, v)
        } else {
            let p = along(RHO);
            let v = f(&p);
            (p, v)
        };
        if fc < vals[N].min(fr) {
            pts[N] = contracted;
            vals[N] = fc;
            continue;
        }
        // Shrink towards the best vertex.
        let best = pts[0];
        for k in 1..=N {
            for i in 0..N {
                pts[k][i] = best[i] + SIGMA * (pts[k][i] - best[i]);
            }
            vals[k] = f(&pts[k]);
        }
    }
    Err(Error::OptimizerFailed {
        iterations: opts.max_iterations,
    })
}
