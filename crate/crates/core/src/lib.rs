//! Qubit open-system dynamics driven by time-dependent decoherence matrices,
//! phase-covariant channels with the correlation-optimal dephasing rate,
//! and the correlation, coherence, metrology and process-matrix quantities
//! evaluated on them.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]
// `!(x <= y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod channel;
pub mod correlations;
pub mod covariant;
pub mod error;
pub mod linalg;
pub mod lindblad;
pub mod metrology;
pub mod numerics;
pub mod qstate;
pub mod tomography;

pub use channel::{AffineBlochMap, ChoiState};
pub use covariant::{CovariantRates, Dephasing, Rate};

pub use error::{Error, Result};
pub use lindblad::{DecoherenceMatrix, PropagatedMap};
pub use qstate::{QubitState, Subsystem, TwoQubitState};
