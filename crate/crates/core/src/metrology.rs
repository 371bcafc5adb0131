//! Phase estimation with a qubit probe under phase-covariant noise.

#[allow(unused_imports)]
use num_traits::Float;

use crate::covariant::CovariantRates;
use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::qstate::QubitState;

/// Quantum Fisher information of a qubit with Bloch vector `r` and
/// parameter derivative `dr`: `|dr|^2 + (r . dr)^2 / (1 - |r|^2)`.
pub fn qfi_bloch(r: &Vec3, dr: &Vec3) -> Result<f64> {
    let norm = r.norm();
    if norm > 1.0 + 1e-9 {
        return Err(Error::BlochOutOfBall { norm });
    }
    let overlap = r.dot(dr);
    let purity_gap = 1.0 - norm * norm;
    let second = if purity_gap <= 1e-12 {
        if overlap.abs() > 1e-9 {
            return Err(Error::SingularPureState { overlap });
        }
        0.0
    } else {
        overlap * overlap / purity_gap
    };
    Ok(dr.norm_squared() + second)
}

/// Probe state evolving under `H = (omega/2) sigma_z` and covariant noise.
#[derive(Debug, Clone)]
pub struct PhaseEstimationSetup {
    pub omega: f64,
    pub rates: CovariantRates,
    pub initial: QubitState,
}

impl PhaseEstimationSetup {
    /// Probe `|+>`.
    pub fn new(omega: f64, rates: CovariantRates) -> Self {
        Self {
            omega,
            rates,
            initial: QubitState::plus(),
        }
    }

    pub fn with_initial(mut self, initial: QubitState) -> Self {
        self.initial = initial;
        self
    }

    /// Bloch vector at `t` and its derivative with respect to `omega`.
    ///
    /// The noise commutes with the rotation, so `r(t) = R_z(omega t) Lambda_t(r0)`
    /// and `dr/domega = t J r` with `J` the generator of `R_z`.
    pub fn bloch_and_derivative(&self, t: f64) -> Result<(Vec3, Vec3)> {
        let noisy = self.rates.closed_form_bloch(&self.initial.bloch(), t)?;
        let (s, c) = (self.omega * t).sin_cos();
        let r = Vec3::new(c * noisy[0] - s * noisy[1], s * noisy[0] + c * noisy[1], noisy[2]);
        let dr = Vec3::new(-r[1], r[0], 0.0) * t;
        Ok((r, dr))
    }
}

/// QFI of the probe at time `t`; equals `t^2 C_l1(t)^2`.
pub fn qfi_covariant(setup: &PhaseEstimationSetup, t: f64) -> Result<f64> {
    let (r, dr) = setup.bloch_and_derivative(t)?;
    qfi_bloch(&r, &dr)
}

/// Cramer-Rao bound `1 / F` on the variance of an unbiased estimator.
pub fn cramer_rao(fisher: f64) -> Result<f64> {
    if !(fisher > 1e-300) {
        return Err(Error::ZeroInformation { fisher });
    }
    Ok(1.0 / fisher)
}
