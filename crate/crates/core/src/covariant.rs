//! Phase-covariant qubit channels.
//!
//! The decoherence matrix
//!
//! ```text
//!         [ a   -i x  0 ]
//! gamma = [ i x  a    0 ]      eigenvalues a + x, a - x, f
//!         [ 0    0    f ]
//! ```
//!
//! integrates to `r_{1,2} -> e^{-A-F} r_{1,2}`, `r_3 -> e^{-2A} r_3 + l_z`
//! with `A = int a`, `F = int f` and
//! `l_z(t) = -2 int_0^t x(s) e^{-2(A(t) - A(s))} ds`.
//! The longitudinal shift therefore points towards `-x/a`.

use alloc::sync::Arc;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::{AffineBlochMap, ChoiState};
use crate::error::{Error, Result};
use crate::linalg::{c, re, Mat3c, Mat4, Vec3, ZERO};
use crate::lindblad::DecoherenceMatrix;
use crate::numerics::quad;
use crate::qstate::PSD_TOL;

const QUAD_ABS_TOL: f64 = 1e-12;
const QUAD_REL_TOL: f64 = 1e-13;

/// A real rate as a function of time.
#[derive(Clone)]
pub enum Rate {
    Constant(f64),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Constant(v) => f.debug_tuple("Constant").field(v).finish(),
            Rate::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl From<f64> for Rate {
    fn from(v: f64) -> Self {
        Rate::Constant(v)
    }
}

impl Rate {
    pub fn function<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Rate::Function(Arc::new(f))
    }

    pub fn at(&self, t: f64) -> f64 {
        match self {
            Rate::Constant(v) => *v,
            Rate::Function(f) => f(t),
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            Rate::Constant(v) => Some(*v),
            Rate::Function(_) => None,
        }
    }

    /// `int_0^t rate`.
    pub fn integral(&self, t: f64) -> Result<f64> {
        match self {
            Rate::Constant(v) => Ok(v * t),
            Rate::Function(f) => quad::integrate(|s| f(s), 0.0, t, QUAD_ABS_TOL, QUAD_REL_TOL),
        }
    }
}

/// Choice of the dephasing rate `f`.
#[derive(Clone, Debug)]
pub enum Dephasing {
    /// The smallest dephasing compatible with complete positivity.
    Optimal,
    Rate(Rate),
}

/// `A(t)`, `F(t)` and `l_z(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateIntegrals {
    pub a: f64,
    pub f: f64,
    pub lz: f64,
}

/// Channel coefficients at one time: `r_{1,2} -> alpha r_{1,2}`,
/// `r_3 -> beta r_3 - c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovariantChannelAt {
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub c: f64,
}

impl CovariantChannelAt {
    pub fn map(&self) -> AffineBlochMap {
        AffineBlochMap::phase_covariant(self.alpha, self.beta, -self.c)
    }

    /// Choi matrix written out directly from the coefficients.
    pub fn choi(&self) -> ChoiState {
        let (al, be, cc) = (self.alpha, self.beta, self.c);
        let mut m = Mat4::zeros();
        m[(0, 0)] = re(0.25 * (1.0 + be - cc));
        m[(1, 1)] = re(0.25 * (1.0 - be + cc));
        m[(2, 2)] = re(0.25 * (1.0 - be - cc));
        m[(3, 3)] = re(0.25 * (1.0 + be + cc));
        m[(0, 3)] = re(0.5 * al);
        m[(3, 0)] = re(0.5 * al);
        ChoiState(m)
    }
}

/// Complete-positivity conditions on the integrated rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptpConditions {
    /// `e^{-2A} + |l_z| <= 1`.
    pub cond_a: bool,
    /// `4 e^{-2A-2F} + l_z^2 <= (1 + e^{-2A})^2`.
    pub cond_b: bool,
    /// Right-hand side minus left-hand side of `cond_b`.
    pub slack_b: f64,
}

/// Rates `(a, x, f)` of a phase-covariant decoherence matrix.
#[derive(Clone, Debug)]
pub struct CovariantRates {
    pub a: Rate,
    pub x: Rate,
    pub f: Dephasing,
}

impl CovariantRates {
    pub fn new(a: Rate, x: Rate, f: Dephasing) -> Self {
        Self { a, x, f }
    }

    pub fn constant(a: f64, x: f64, f: f64) -> Self {
        Self::new(a.into(), x.into(), Dephasing::Rate(f.into()))
    }

    pub fn optimal(a: Rate, x: Rate) -> Self {
        Self::new(a, x, Dephasing::Optimal)
    }

    pub fn optimal_constant(a: f64, x: f64) -> Self {
        Self::optimal(a.into(), x.into())
    }

    /// Same `a`, `x` with a different dephasing choice.
    pub fn with_dephasing(&self, f: Dephasing) -> Self {
        Self::new(self.a.clone(), self.x.clone(), f)
    }

    /// `A(t)` and `l_z(t)`.
    fn longitudinal(&self, t: f64) -> Result<(f64, f64)> {
        if let (Some(a), Some(x)) = (self.a.as_constant(), self.x.as_constant()) {
            let lz = if a.abs() * t < 1e-8 {
                // Series of -(x/a)(1 - e^{-2at}) around a t = 0.
                -2.0 * x * t * (1.0 - a * t)
            } else {
                -(x / a) * (1.0 - (-2.0 * a * t).exp())
            };
            return Ok((a * t, lz));
        }
        let big_a = self.a.integral(t)?;
        let integrand = |s: f64| -> f64 {
            let a_s = self.a.integral(s).unwrap_or(f64::NAN);
            self.x.at(s) * (-2.0 * (big_a - a_s)).exp()
        };
        let lz = -2.0 * quad::integrate(integrand, 0.0, t, QUAD_ABS_TOL, QUAD_REL_TOL)?;
        Ok((big_a, lz))
    }

    pub fn integrals(&self, t: f64) -> Result<RateIntegrals> {
        let (a, lz) = self.longitudinal(t)?;
        let f = match &self.f {
            Dephasing::Rate(r) => r.integral(t)?,
            Dephasing::Optimal => optimal_integral(a, lz, t)?,
        };
        Ok(RateIntegrals { a, f, lz })
    }

    /// `F_opt(t)`: the dephasing integral saturating `cond_b`.
    pub fn optimal_f_integral(&self, t: f64) -> Result<f64> {
        self.check_optimality_precondition(t)?;
        let (a, lz) = self.longitudinal(t)?;
        optimal_integral(a, lz, t)
    }

    /// `f_opt(t) = dF_opt/dt`.
    pub fn optimal_f_rate(&self, t: f64) -> Result<f64> {
        self.check_optimality_precondition(t)?;
        if let (Some(a), Some(x)) = (self.a.as_constant(), self.x.as_constant()) {
            if a == 0.0 {
                return Ok(0.0);
            }
            let r2 = (x / a) * (x / a);
            let th = (a * t).tanh();
            return Ok(-a * (1.0 - r2) * th / (1.0 - r2 * th * th));
        }
        let (big_a, lz) = self.longitudinal(t)?;
        let (a, x) = (self.a.at(t), self.x.at(t));
        let e = (-2.0 * big_a).exp();
        let d = (1.0 + e) * (1.0 + e) - lz * lz;
        if !(d > 0.0) {
            return Err(Error::InfeasibleRates {
                t,
                reason: "(1 + e^{-2A})^2 <= l_z^2",
            });
        }
        let lz_dot = -2.0 * a * lz - 2.0 * x;
        Ok(-a + (2.0 * a * e * (1.0 + e) + lz * lz_dot) / d)
    }

    fn check_optimality_precondition(&self, t: f64) -> Result<()> {
        let (a, x) = (self.a.at(t), self.x.at(t));
        if !(x.abs() <= a * (1.0 + 1e-12) + 1e-15) {
            return Err(Error::InfeasibleRates {
                t,
                reason: "optimal dephasing needs |x| <= a",
            });
        }
        Ok(())
    }

    /// Dephasing rate `f(t)`.
    pub fn f_at(&self, t: f64) -> Result<f64> {
        match &self.f {
            Dephasing::Rate(r) => Ok(r.at(t)),
            Dephasing::Optimal => self.optimal_f_rate(t),
        }
    }

    pub fn gamma_at(&self, t: f64) -> Result<Mat3c> {
        Ok(covariant_gamma(self.a.at(t), self.x.at(t), self.f_at(t)?))
    }

    /// Decoherence matrix for numerical propagation. Evaluation failures
    /// surface as non-finite entries.
    pub fn decoherence_matrix(&self) -> DecoherenceMatrix {
        let rates = self.clone();
        DecoherenceMatrix::new(move |t| rates.gamma_at(t).unwrap_or_else(|_| Mat3c::from_element(re(f64::NAN))))
    }

    pub fn channel_at(&self, t: f64) -> Result<CovariantChannelAt> {
        let ints = self.integrals(t)?;
        let beta = (-2.0 * ints.a).exp();
        let alpha = match self.f {
            // e^{-A-F_opt} = sqrt((1 + beta)^2 - l_z^2) / 2, without the cancellation.
            Dephasing::Optimal => 0.5 * ((1.0 + beta) * (1.0 + beta) - ints.lz * ints.lz).max(0.0).sqrt(),
            Dephasing::Rate(_) => (-ints.a - ints.f).exp(),
        };
        Ok(CovariantChannelAt {
            t,
            alpha,
            beta,
            c: -ints.lz,
        })
    }

    pub fn closed_form_bloch(&self, r0: &Vec3, t: f64) -> Result<Vec3> {
        Ok(self.channel_at(t)?.map().apply_bloch(r0))
    }

    pub fn cptp_conditions(&self, t: f64) -> Result<CptpConditions> {
        let ch = self.channel_at(t)?;
        Ok(conditions_from_channel(&ch))
    }

    pub fn choi_closed_form(&self, t: f64) -> Result<ChoiState> {
        Ok(self.channel_at(t)?.choi())
    }
}

fn conditions_from_channel(ch: &CovariantChannelAt) -> CptpConditions {
    let slack_b = (1.0 + ch.beta).powi(2) - 4.0 * ch.alpha * ch.alpha - ch.c * ch.c;
    CptpConditions {
        cond_a: ch.beta + ch.c.abs() <= 1.0 + PSD_TOL,
        cond_b: slack_b >= -PSD_TOL,
        slack_b,
    }
}

fn optimal_integral(big_a: f64, lz: f64, t: f64) -> Result<f64> {
    let e = (-2.0 * big_a).exp();
    let d = (1.0 + e) * (1.0 + e) - lz * lz;
    if !(d > 0.0) {
        return Err(Error::InfeasibleRates {
            t,
            reason: "(1 + e^{-2A})^2 <= l_z^2",
        });
    }
    Ok(-big_a - 0.5 * (0.25 * d).ln())
}

/// The phase-covariant decoherence matrix.
pub fn covariant_gamma(a: f64, x: f64, f: f64) -> Mat3c {
    Mat3c::new(re(a), c(0.0, -x), ZERO, c(0.0, x), re(a), ZERO, ZERO, ZERO, re(f))
}

/// Long-time image of the Bloch ball under constant `(a, x)` with optimal
/// dephasing: a flat disk in the equatorial plane shifted along z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticImage {
    pub radius: f64,
    pub center_z: f64,
}

pub fn asymptotic_image(a: f64, x: f64) -> Result<AsymptoticImage> {
    if !(a > 0.0) || x.abs() > a {
        return Err(Error::InfeasibleRates {
            t: f64::INFINITY,
            reason: "asymptotic image needs a > 0 and |x| <= a",
        });
    }
    let r = x / a;
    Ok(AsymptoticImage {
        radius: 0.5 * (1.0 - r * r).max(0.0).sqrt(),
        center_z: -r,
    })
}

/// Pure dephasing with integrated rate `g`: `r_{1,2} -> e^{-g} r_{1,2}`.
pub fn dephasing_map(g: f64) -> AffineBlochMap {
    AffineBlochMap::phase_covariant((-g).exp(), 1.0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigvalsh3, hermiticity_defect, linear_grid};
    use crate::lindblad::{propagate, PropagationOptions};
    use approx::assert_abs_diff_eq;

    #[test]
    fn gamma_assembly() {
        let g = covariant_gamma(1.3, 0.4, -0.2);
        assert!(hermiticity_defect(&g) < 1e-15);
        let e = eigvalsh3(&g);
        assert_abs_diff_eq!(e[0], -0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(e[2], 1.7, epsilon = 1e-12);
    }

    #[test]
    fn integrals_constant_rates() {
        let r = CovariantRates::constant(1.0, 0.5, 0.0);
        let i0 = r.integrals(0.0).unwrap();
        assert_eq!((i0.a, i0.f, i0.lz), (0.0, 0.0, 0.0));
        for t in [0.1, 1.0, 3.0] {
            let i = r.integrals(t).unwrap();
            assert_abs_diff_eq!(i.a, t, epsilon = 1e-15);
            assert_abs_diff_eq!(i.lz, -0.5 * (1.0 - (-2.0 * t).exp()), epsilon = 1e-15);
        }
        let i = CovariantRates::constant(1.0, 0.0, 0.3).integrals(2.0).unwrap();
        assert_eq!(i.lz, 0.0);
        assert_abs_diff_eq!(i.f, 0.6, epsilon = 1e-15);
    }

    #[test]
    fn integrals_by_quadrature_match_constants() {
        let r = CovariantRates::new(
            Rate::function(|_| 1.0),
            Rate::function(|_| 0.5),
            Dephasing::Rate(Rate::function(|_| 0.3)),
        );
        for t in [0.0, 0.5, 2.0] {
            let i = r.integrals(t).unwrap();
            let exact = CovariantRates::constant(1.0, 0.5, 0.3).integrals(t).unwrap();
            assert_abs_diff_eq!(i.a, exact.a, epsilon = 1e-10);
            assert_abs_diff_eq!(i.f, exact.f, epsilon = 1e-10);
            assert_abs_diff_eq!(i.lz, exact.lz, epsilon = 1e-10);
        }
    }

    #[test]
    fn zero_damping_shift_is_linear() {
        let i = CovariantRates::constant(0.0, 0.2, 0.0).integrals(1.5).unwrap();
        assert_abs_diff_eq!(i.lz, -0.6, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let r = CovariantRates::constant(1.0, 0.0, 0.0);
        let r0 = Vec3::new(1.0, 0.0, 1.0);
        assert_eq!(r.closed_form_bloch(&r0, 0.0).unwrap(), r0);
        let v = r.closed_form_bloch(&r0, 1.0).unwrap();
        assert!((v - Vec3::new((-1.0f64).exp(), 0.0, (-2.0f64).exp())).norm() < 1e-15);
        let pole = CovariantRates::constant(1.0, 1.0, 0.0)
            .closed_form_bloch(&Vec3::zeros(), 30.0)
            .unwrap();
        assert!((pole - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_propagation() {
        let cases = [
            CovariantRates::constant(1.0, 0.5, 0.2),
            CovariantRates::optimal_constant(1.0, 0.5),
            CovariantRates::optimal_constant(0.7, 0.0),
            CovariantRates::new(
                Rate::function(|t| 1.0 + 0.3 * t.sin()),
                Rate::function(|t| 0.4 * t.cos()),
                Dephasing::Rate(Rate::function(|t| 0.2 * t)),
            ),
        ];
        let grid = linear_grid(0.0, 3.0, 13);
        let r0 = Vec3::new(0.4, -0.3, 0.5);
        for rates in cases {
            let map = propagate(
                &rates.decoherence_matrix(),
                3.0,
                &PropagationOptions::with_grid(grid.clone()),
            )
            .unwrap();
            for (t, m) in map.iter() {
                let closed = rates.closed_form_bloch(&r0, t).unwrap();
                assert!((m.apply_bloch(&r0) - closed).norm() < 1e-7, "{rates:?} t = {t}");
            }
        }
    }

    #[test]
    fn cptp_examples() {
        let r = CovariantRates::constant(1.0, 0.0, 0.0);
        for t in [0.5, 1.0, 4.0] {
            let c = r.cptp_conditions(t).unwrap();
            assert!(c.cond_a && c.cond_b && c.slack_b > 0.0);
        }
        let opt = CovariantRates::optimal_constant(1.0, 0.5);
        for t in linear_grid(0.0, 5.0, 51) {
            let c = opt.cptp_conditions(t).unwrap();
            assert!(c.cond_a && c.cond_b);
            assert_abs_diff_eq!(c.slack_b, 0.0, epsilon = 1e-8);
        }
        let over = CovariantRates::constant(1.0, 0.5, -2.0);
        assert!(!over.cptp_conditions(1.0).unwrap().cond_b);
    }

    #[test]
    fn optimal_integral_examples() {
        let r = CovariantRates::optimal_constant(1.0, 0.0);
        assert_eq!(r.optimal_f_integral(0.0).unwrap(), 0.0);
        for t in [0.3, 1.0, 2.5] {
            assert_abs_diff_eq!(r.optimal_f_integral(t).unwrap(), -t.cosh().ln(), epsilon = 1e-14);
            assert_abs_diff_eq!(r.optimal_f_rate(t).unwrap(), -t.tanh(), epsilon = 1e-14);
        }
        let pole = CovariantRates::optimal_constant(1.0, 1.0);
        for t in [0.3, 1.0, 2.5] {
            assert_eq!(pole.optimal_f_rate(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn optimal_rate_values() {
        assert_abs_diff_eq!(
            CovariantRates::optimal_constant(1.0, 0.0).optimal_f_rate(1.0).unwrap(),
            -0.761594,
            epsilon = 1e-6
        );
        // -(3/4) tanh 1 / (1 - tanh^2(1) / 4), equal to the sinh/cosh form.
        let f = CovariantRates::optimal_constant(1.0, 0.5).optimal_f_rate(1.0).unwrap();
        assert_abs_diff_eq!(f, -0.668070, epsilon = 1e-6);
        let s = 2f64.sinh();
        let alt = -0.5 * 0.75 * s / (1f64.cosh().powi(2) - 0.25 * 1f64.sinh().powi(2));
        assert_abs_diff_eq!(f, alt, epsilon = 1e-14);
    }

    #[test]
    fn optimal_rate_agrees_with_finite_difference() {
        let constant = CovariantRates::optimal_constant(1.0, 0.5);
        let general = CovariantRates::optimal(Rate::function(|_| 1.0), Rate::function(|_| 0.5));
        let varying = CovariantRates::optimal(
            Rate::function(|t| 1.0 + 0.5 * t.sin()),
            Rate::function(|t| 0.3 * t.cos()),
        );
        for t in [0.2, 1.0, 2.0] {
            let h = 1e-6 * t.max(1.0);
            for r in [&constant, &general, &varying] {
                let fd = (r.optimal_f_integral(t + h).unwrap() - r.optimal_f_integral(t - h).unwrap()) / (2.0 * h);
                assert_abs_diff_eq!(r.optimal_f_rate(t).unwrap(), fd, epsilon = 1e-6);
            }
            assert_abs_diff_eq!(
                general.optimal_f_rate(t).unwrap(),
                constant.optimal_f_rate(t).unwrap(),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn optimal_rate_is_negative() {
        for (a, x) in [(1.0, 0.0), (1.0, 0.5), (2.0, -1.5), (0.3, 0.29)] {
            let r = CovariantRates::optimal_constant(a, x);
            for t in [0.01, 0.5, 3.0] {
                assert!(r.optimal_f_rate(t).unwrap() < 0.0);
            }
        }
    }

    #[test]
    fn infeasible_rates() {
        let r = CovariantRates::optimal_constant(1.0, 1.5);
        assert!(matches!(r.optimal_f_rate(1.0), Err(Error::InfeasibleRates { .. })));
        assert!(matches!(asymptotic_image(1.0, 2.0), Err(Error::InfeasibleRates { .. })));
        assert!(r.decoherence_matrix().at(1.0)[(0, 0)].re.is_nan());
    }

    #[test]
    fn choi_closed_form_examples() {
        let opt = CovariantRates::optimal_constant(1.0, 0.0);
        let bell = opt.choi_closed_form(0.0).unwrap();
        assert!((bell.0 - crate::qstate::TwoQubitState::bell_phi_plus().rho()).norm() < 1e-15);
        let late = opt.choi_closed_form(30.0).unwrap();
        let mut expected = Mat4::identity() * re(0.25);
        expected[(0, 3)] = re(0.25);
        expected[(3, 0)] = re(0.25);
        assert!((late.0 - expected).norm() < 1e-12);
        let pole = CovariantRates::constant(1.0, 1.0, 0.5).choi_closed_form(40.0).unwrap();
        let expected = Mat4::from_diagonal(&nalgebra::Vector4::new(ZERO, re(0.5), ZERO, re(0.5)));
        assert!((pole.0 - expected).norm() < 1e-12);
    }

    #[test]
    fn choi_closed_form_matches_channel() {
        for rates in [
            CovariantRates::constant(0.8, -0.3, 0.4),
            CovariantRates::optimal_constant(1.0, 0.6),
        ] {
            for t in [0.0, 0.4, 2.0] {
                let ch = rates.channel_at(t).unwrap();
                assert!((ch.choi().0 - ch.map().choi().0).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn optimal_choi_is_saturated() {
        let opt = CovariantRates::optimal_constant(1.0, 0.5);
        for t in linear_grid(0.0, 10.0, 101) {
            let m = opt.choi_closed_form(t).unwrap().min_eigenvalue();
            assert_abs_diff_eq!(m, 0.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn splitting_into_optimal_and_dephasing() {
        let (a, x, f) = (1.0, 0.4, 0.3);
        let rates = CovariantRates::constant(a, x, f);
        let opt = CovariantRates::optimal_constant(a, x);
        for t in [0.3, 1.0, 4.0] {
            let extra = f * t - opt.optimal_f_integral(t).unwrap();
            let split = dephasing_map(extra).compose(&opt.channel_at(t).unwrap().map());
            assert!(split.distance(&rates.channel_at(t).unwrap().map()) < 1e-8);
        }
    }

    #[test]
    fn asymptotic_image_examples() {
        let i = asymptotic_image(1.0, 0.0).unwrap();
        assert_eq!((i.radius, i.center_z), (0.5, 0.0));
        let i = asymptotic_image(2.0, 2.0).unwrap();
        assert_eq!(i.radius, 0.0);
        assert_eq!(i.center_z.abs(), 1.0);
        let i = asymptotic_image(1.0, 0.6).unwrap();
        assert_abs_diff_eq!(i.radius, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(i.center_z, -0.6, epsilon = 1e-15);
    }

    #[test]
    fn asymptotic_image_matches_long_time_channel() {
        for (a, x) in [(1.0, 0.0), (1.0, 0.6), (2.0, -0.5)] {
            let image = asymptotic_image(a, x).unwrap();
            let rates = CovariantRates::optimal_constant(a, x);
            let at30 = rates.channel_at(30.0 / a).unwrap();
            let at40 = rates.channel_at(40.0 / a).unwrap();
            assert!((at30.alpha - at40.alpha).abs() < 1e-8);
            assert_abs_diff_eq!(at30.alpha, image.radius, epsilon = 1e-6);
            assert_abs_diff_eq!(-at30.c, image.center_z, epsilon = 1e-6);
            assert!(at30.beta < 1e-6);
        }
    }

    #[test]
    fn excess_x_violates_positivity() {
        // x = a + 0.5: cond_a fails as soon as t > 0.
        let r = CovariantRates::constant(1.0, 1.5, 0.0);
        let c = r.cptp_conditions(0.1).unwrap();
        assert!(!c.cond_a);
        assert!(r.choi_closed_form(4.0).unwrap().min_eigenvalue() < -1e-3);
    }
}
