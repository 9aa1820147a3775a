//! Secrecy rate regions for two-way wiretap channels.
//!
//! Two full-duplex users exchange messages while an eavesdropper listens.
//! This crate evaluates the achievable (inner) and outer secrecy-rate bounds
//! under *individual* secrecy, where each message's leakage must vanish on
//! its own, and compares them with the classic *joint* secrecy requirement.
//!
//! - [`info`]: entropies and mutual informations of finite joint distributions.
//! - [`channel`]: discrete and Gaussian channel models, the binary example
//!   channels, stochastic-degradedness checks and JSON spec files.
//! - [`region`]: bound evaluators, distribution-space sweeps, closed forms and
//!   rate-region geometry (convex closure, containment, area).
//! - [`codes`]: an exact small-blocklength evaluator of the random-binning
//!   wiretap code (leakage and error probability by enumeration).
//! - [`cli`]: the command surface used by the `twsec` binary.

pub mod channel;
pub mod cli;
pub mod codes;
pub mod error;
pub mod info;
pub mod numeric;
pub mod region;

pub use error::{Error, Result};
