//! Cyclical multiple access planning for an aerial base station.
//!
//! A UAV flies back and forth over a line of equally spaced ground
//! terminals at fixed altitude and speed. Each terminal is served while the
//! UAV is over its own contiguous segment of the one-way trajectory
//! (cyclical TDMA). This crate computes:
//!
//! - the position-dependent rate and its closed-form antiderivative ([`model`]),
//! - max-min-fair segment boundaries plus the equal-split and hovering
//!   baselines ([`allocator`]),
//! - per-terminal access delays and their RMS ([`delay`]),
//! - the throughput / delay tradeoff over trajectory length ([`search`]),
//! - independent quadrature and brute-force checks ([`oracle`]).
//!
//! ```
//! use cma_core::{allocator, model::Scenario};
//!
//! let scenario = Scenario::reference().with_traj_length(500.0).unwrap();
//! let alloc = allocator::maxmin_allocate(&scenario).unwrap();
//! assert!((alloc.min_throughput - 0.4663).abs() < 1e-4);
//! ```

// `!(x > 0.0)` is used deliberately so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod allocator;
pub mod delay;
pub mod error;
pub mod model;
pub mod oracle;
mod root;
pub mod search;

pub use error::{Error, Result};
