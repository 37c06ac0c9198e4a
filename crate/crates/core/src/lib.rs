//! Probability law of wireless sensor network lifetime.
//!
//! Sensors are dropped uniformly over a circle or regular polygon and report
//! to a sink at the centre. Each one spends a distance-dependent amount of
//! energy per packet, so its lifetime is a sum of inter-arrival gaps whose
//! count is fixed by its battery. The network dies once a fraction `β` of
//! its sensors is gone.
//!
//! The crate gives the analytic survival law at sensor, single-hop and
//! multi-hop level, together with a Monte Carlo simulator to check it.

// `!(x > 0.0)` is how NaN gets rejected; quadrature nodes keep all digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod models;
pub mod montecarlo;
pub mod multihop;
pub mod network;
pub mod sensor;
pub mod specfun;

pub use error::{Error, Result};
