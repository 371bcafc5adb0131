//! Seeded randomized property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use enm_core::correlations::{brute_force_discord, mutual_information, negativity, xstate_discord, XState};
use enm_core::linalg::{c, Mat2, Mat4, Vec3};
use enm_core::{AffineBlochMap, CovariantRates, QubitState, Subsystem, TwoQubitState};

use crate::config::Suite;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: usize,
    /// Largest observed violation measure (negative or zero when all pass).
    pub worst: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn rng_for(seed: u64, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(Suite::EACH.iter().position(|s| *s == suite).unwrap_or(0) as u64);
    rng
}

fn bloch_in_ball(rng: &mut ChaCha8Rng) -> Vec3 {
    let dir = Vec3::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
    let radius = rng.random::<f64>().cbrt();
    dir.normalize() * radius
}

fn ginibre2(rng: &mut ChaCha8Rng) -> Mat2 {
    let g = Mat2::from_fn(|_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let rho = g * g.adjoint();
    rho / rho.trace()
}

fn ginibre4(rng: &mut ChaCha8Rng) -> TwoQubitState {
    let g = Mat4::from_fn(|_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let rho = g * g.adjoint();
    TwoQubitState::new(rho / rho.trace()).expect("Ginibre matrices give states")
}

/// A covariant channel with dephasing between the optimal value and the
/// optimal value plus `a`.
fn covariant_channel(rng: &mut ChaCha8Rng) -> AffineBlochMap {
    let a = rng.random_range(0.01..2.0);
    let x = a * rng.random_range(-1.0..1.0);
    let t = rng.random_range(0.0..3.0);
    let extra = rng.random::<f64>() * a * t;
    let ch = CovariantRates::optimal_constant(a, x)
        .channel_at(t)
        .expect("admissible rates");
    AffineBlochMap::phase_covariant(ch.alpha * (-extra).exp(), ch.beta, -ch.c)
}

/// X-state with maximally mixed first marginal.
fn mixed_marginal_xstate(rng: &mut ChaCha8Rng) -> XState {
    let p1 = 0.5 * rng.random::<f64>();
    let p3 = 0.5 * rng.random::<f64>();
    let (p2, p4) = (0.5 - p1, 0.5 - p3);
    let r14 = 0.999 * rng.random::<f64>() * (p1 * p4).sqrt();
    let r23 = 0.999 * rng.random::<f64>() * (p2 * p3).sqrt();
    let (ph14, ph23) = (
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(0.0..std::f64::consts::TAU),
    );
    XState::new(
        [p1, p2, p3, p4],
        [
            c(r14 * ph14.cos(), r14 * ph14.sin()),
            c(r23 * ph23.cos(), r23 * ph23.sin()),
        ],
    )
    .expect("inside the positivity bounds")
}

/// Violation measure of one case; the case fails when it is positive.
fn check_case(suite: Suite, rng: &mut ChaCha8Rng) -> Box<dyn Fn() -> f64 + Send + Sync> {
    match suite {
        Suite::RoundTrip => {
            let r = bloch_in_ball(rng);
            let rho = ginibre2(rng);
            Box::new(move || {
                let back = QubitState::from_bloch(r)
                    .map(|s| (s.bloch() - r).norm())
                    .unwrap_or(f64::INFINITY);
                let forth = QubitState::from_density(rho)
                    .and_then(|s| QubitState::from_bloch(s.bloch()))
                    .map(|s| (s.rho() - rho).norm())
                    .unwrap_or(f64::INFINITY);
                back.max(forth) - 1e-12
            })
        }
        Suite::Subadditivity => {
            let rho = ginibre4(rng);
            Box::new(move || {
                let sa = rho.partial_trace(Subsystem::B).entropy();
                let sb = rho.partial_trace(Subsystem::A).entropy();
                let sab = rho.entropy();
                (sab - sa - sb).max((sa - sb).abs() - sab) - 1e-9
            })
        }
        Suite::Monotonicity => {
            let rho = ginibre4(rng);
            let ch = covariant_channel(rng);
            Box::new(move || {
                let out = match TwoQubitState::new(ch.apply_local(rho.rho(), Subsystem::A)) {
                    Ok(s) => s,
                    Err(_) => return f64::INFINITY,
                };
                (negativity(&out) - negativity(&rho)).max(mutual_information(&out) - mutual_information(&rho)) - 1e-9
            })
        }
        Suite::Discord => {
            let x = mixed_marginal_xstate(rng);
            Box::new(move || {
                let fast = xstate_discord(&x).map(|d| d.value);
                let slow = x.state().and_then(|s| brute_force_discord(&s, 60)).map(|d| d.value);
                match (fast, slow) {
                    (Ok(f), Ok(s)) => (f - s).abs() - 1e-5,
                    _ => f64::INFINITY,
                }
            })
        }
        Suite::Saturation => {
            let a = rng.random_range(0.05..3.0);
            let x = a * rng.random_range(-1.0..1.0);
            let t = rng.random_range(0.0..5.0);
            Box::new(move || {
                let rates = CovariantRates::optimal_constant(a, x);
                let eig = rates.choi_closed_form(t).map(|c| c.min_eigenvalue().abs());
                let slack = rates.cptp_conditions(t).map(|c| c.slack_b.abs());
                match (eig, slack) {
                    (Ok(e), Ok(s)) => (e - 1e-7).max(s - 1e-8),
                    _ => f64::INFINITY,
                }
            })
        }
        Suite::All => unreachable!("expanded by run_suites"),
    }
}

pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> SuiteReport {
    let mut rng = rng_for(seed, suite);
    // Draw inputs sequentially so results do not depend on scheduling.
    let checks: Vec<_> = (0..cases).map(|_| check_case(suite, &mut rng)).collect();
    let violations: Vec<f64> = checks.par_iter().map(|check| check()).collect();
    let failures = violations.iter().filter(|v| !(**v <= 0.0)).count();
    let worst = violations.iter().copied().fold(
        f64::NEG_INFINITY,
        |m, v| if v.is_nan() { f64::INFINITY } else { m.max(v) },
    );
    SuiteReport {
        suite,
        cases,
        failures,
        worst,
    }
}

pub fn run_suites(suite: Suite, seed: u64, cases: usize) -> Vec<SuiteReport> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    suites.into_iter().map(|s| run_suite(s, seed, cases)).collect()
}
