use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bloch vector has norm {norm}, outside the unit ball")]
    BlochOutOfBall { norm: f64 },
    #[error("matrix is not a density matrix: {reason}")]
    NotAState { reason: &'static str },
    #[error("decoherence matrix is not Hermitian at t = {t}")]
    NonHermitianGamma { t: f64 },
    #[error("decoherence matrix has a non-finite entry at t = {t}")]
    NonFiniteGamma { t: f64 },
    #[error("integrator step size underflowed at t = {t}")]
    IntegratorDiverged { t: f64 },
    #[error("quadrature did not reach the requested accuracy on [{lo}, {hi}]")]
    QuadratureFailed { lo: f64, hi: f64 },
    #[error("optimizer did not converge after {iterations} iterations")]
    OptimizerFailed { iterations: usize },
    #[error("intermediate map is singular (condition number {condition:e})")]
    SingularIntermediateMap { condition: f64 },
    #[error("time {t} is not a point of the propagation grid")]
    NotOnGrid { t: f64 },
    #[error("invalid time grid: {reason}")]
    InvalidGrid { reason: &'static str },
    #[error("rates are infeasible at t = {t}: {reason}")]
    InfeasibleRates { t: f64, reason: &'static str },
    #[error("state is not an X-state (max off-pattern entry {max_entry:e})")]
    NotXState { max_entry: f64 },
    #[error("pure state with non-tangent derivative (r . dr = {overlap:e})")]
    SingularPureState { overlap: f64 },
    #[error("Fisher information {fisher:e} carries no information")]
    ZeroInformation { fisher: f64 },
    #[error("Pauli index {0} is not one of 1, 2, 3")]
    InvalidPauliIndex(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
