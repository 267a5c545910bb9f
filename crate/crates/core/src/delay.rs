//! Access delay of cyclical TDMA.
//!
//! During one round trip (period `T = 2D/V`) terminal `k` is silent while the
//! UAV is left of `b_{k-1}` (there and back) and while it is right of `b_k`.
//! The access delay is the longer of those two mute windows.

use serde::{Deserialize, Serialize};

use crate::allocator::Allocation;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayProfile {
    /// Round-trip period T (s).
    pub period: f64,
    /// Mute window spent left of each terminal's segment (s).
    pub left_mute: Vec<f64>,
    /// Mute window spent right of each terminal's segment (s).
    pub right_mute: Vec<f64>,
    /// φ_k = max(left, right) (s).
    pub per_terminal: Vec<f64>,
    /// RMS of `per_terminal` (s).
    pub rms: f64,
}

pub fn access_delays(alloc: &Allocation, speed: f64) -> Result<DelayProfile> {
    if !(speed > 0.0 && speed.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "speed must be positive, got {speed}"
        )));
    }
    let b = &alloc.delimiters;
    let (start, end) = (b[0], b[b.len() - 1]);
    // Distances are measured from the trajectory ends directly, so mirrored
    // delimiters give bitwise mirrored windows.
    let left_mute: Vec<f64> = b[..b.len() - 1]
        .iter()
        .map(|&lo| 2.0 * (lo - start) / speed)
        .collect();
    let right_mute: Vec<f64> = b[1..].iter().map(|&hi| 2.0 * (end - hi) / speed).collect();
    let per_terminal: Vec<f64> = left_mute
        .iter()
        .zip(&right_mute)
        .map(|(l, r)| l.max(*r))
        .collect();
    Ok(DelayProfile {
        period: 2.0 * (end - start) / speed,
        rms: rms_delay(&per_terminal),
        left_mute,
        right_mute,
        per_terminal,
    })
}

/// Root-mean-square of a delay list; 0 for an empty list.
pub fn rms_delay(delays: &[f64]) -> f64 {
    if delays.is_empty() {
        return 0.0;
    }
    (delays.iter().map(|d| d * d).sum::<f64>() / delays.len() as f64).sqrt()
}
