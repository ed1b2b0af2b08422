//! Superimposed frame synchronization for short packets.
//!
//! A known sync word is added on top of each coded frame instead of being sent
//! as a header. This crate evaluates how the power split `α` between sync word
//! and data trades synchronization failures against finite-blocklength
//! decoding errors:
//!
//! * [`specfun`]: log-domain `ln Γ`, `ln I_ν` and the normal tail `Q`;
//! * [`sequences`]: Zadoff-Chu words, circular shifts and the correlation metric;
//! * [`channel`]: the AWGN buffer model, the argmax synchronizer and
//!   reproducible Monte-Carlo estimators;
//! * [`analysis`]: received-signal densities, the Gaussian approximation and
//!   its KL divergence, union and frame-error bounds, and the `α` optimizer.
//!
//! All energies are linear and relative to unit noise power per complex symbol.

pub mod analysis;
pub mod channel;
pub mod error;
mod parallel;
pub mod rng;
pub mod sequences;
pub mod specfun;

pub use analysis::{
    frame_error_upper, optimize_alpha, union_bound, AlphaOptimum, BoundReport, GaussianApprox, KlEstimate, SyncModel,
};
pub use channel::{
    mc_sync_error, synchronize, FrameConfig, McEstimate, McOptions, OffsetMode, ReceiveBuffer, Synchronizer,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use sequences::{zadoff_chu, SyncWord};
pub use specfun::{LogValue, Sign};
