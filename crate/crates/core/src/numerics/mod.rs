//! Numerical building blocks: ODE integration, quadrature and simplex search.

pub mod ode;
pub mod quad;
pub mod simplex;
