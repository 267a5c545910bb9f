//! Throughput / access-delay tradeoff over the trajectory length.
//!
//! Trajectory length is swept in normalized form `D̄ = D / Δ`. `D̄ = 0` is
//! the hovering UAV: static max-min throughput and zero access delay.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::allocator::{self, SolverConfig};
use crate::delay;
use crate::model::Scenario;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Max-min-fair delimiters.
    Optimal,
    /// Every terminal gets 1/K of the trajectory.
    Equal,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Optimal => "optimal",
            Scheme::Equal => "equal",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimal" => Ok(Scheme::Optimal),
            "equal" => Ok(Scheme::Equal),
            other => Err(Error::InvalidArgument(format!(
                "unknown scheme {other:?} (expected optimal or equal)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    /// D̄ = D / Δ.
    pub traj_length_norm: f64,
    /// D in meters.
    pub traj_length: f64,
    pub max_min_throughput: f64,
    pub rms_delay: f64,
    pub scheme: Scheme,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<TradeoffPoint>,
    pub best: TradeoffPoint,
    /// RMS delay tolerance Φ (s).
    pub tolerance: f64,
}

impl SweepResult {
    pub fn new(points: Vec<TradeoffPoint>, tolerance: f64) -> Result<Self> {
        let best = best_under_tolerance(&points, tolerance)?;
        Ok(SweepResult {
            points,
            best,
            tolerance,
        })
    }
}

/// `{0, step, 2·step, ...}` up to and including `max` (within rounding).
///
/// When `1/step` is an integer the values are formed as `i / n`, so grid
/// points like 1.1 come out as the nearest double rather than `110 · 0.01`.
pub fn uniform_grid(max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "grid step must be positive, got {step}"
        )));
    }
    if !(max >= 0.0 && max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "grid maximum must be non-negative, got {max}"
        )));
    }
    let count = (max / step + 1e-9).floor() as usize;
    let inv = (1.0 / step).round();
    let reciprocal = (inv * step - 1.0).abs() < 1e-12;
    Ok((0..=count)
        .map(|i| {
            if reciprocal {
                i as f64 / inv
            } else {
                i as f64 * step
            }
        })
        .collect())
}

/// D̄ ∈ {0, 0.01, ..., 2.00}.
pub fn default_grid() -> Vec<f64> {
    uniform_grid(2.0, 0.01).expect("constant grid is valid")
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument(
            "empty trajectory-length grid".into(),
        ));
    }
    if grid.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
        return Err(Error::InvalidArgument(
            "grid values must be finite and non-negative".into(),
        ));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "grid must be strictly ascending".into(),
        ));
    }
    Ok(())
}

pub fn sweep(template: &Scenario, scheme: Scheme, grid: &[f64]) -> Result<Vec<TradeoffPoint>> {
    sweep_with(template, scheme, grid, &SolverConfig::default())
}

/// Evaluates every grid point (in parallel on the current rayon pool);
/// results come back in grid order.
pub fn sweep_with(
    template: &Scenario,
    scheme: Scheme,
    grid: &[f64],
    config: &SolverConfig,
) -> Result<Vec<TradeoffPoint>> {
    validate_grid(grid)?;
    grid.par_iter()
        .map(|&d_bar| evaluate_point(template, scheme, d_bar, config))
        .collect()
}

pub fn evaluate_point(
    template: &Scenario,
    scheme: Scheme,
    d_bar: f64,
    config: &SolverConfig,
) -> Result<TradeoffPoint> {
    let traj_length = d_bar * template.span();
    let scenario = template.with_traj_length(traj_length)?;
    let (tau, rms) = if traj_length == 0.0 {
        (allocator::static_maxmin(&scenario), 0.0)
    } else {
        let alloc = match scheme {
            Scheme::Optimal => allocator::maxmin_allocate_with(&scenario, config)?,
            Scheme::Equal => allocator::equal_allocation(&scenario)?,
        };
        let profile = delay::access_delays(&alloc, scenario.speed())?;
        (alloc.min_throughput, profile.rms)
    };
    Ok(TradeoffPoint {
        traj_length_norm: d_bar,
        traj_length,
        max_min_throughput: tau,
        rms_delay: rms,
        scheme,
    })
}

/// The point with the highest τ among those with `rms_delay <= tolerance`;
/// ties go to the smaller D̄.
pub fn best_under_tolerance(points: &[TradeoffPoint], tolerance: f64) -> Result<TradeoffPoint> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("no tradeoff points".into()));
    }
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "delay tolerance must be non-negative, got {tolerance}"
        )));
    }
    points
        .iter()
        .filter(|p| p.rms_delay <= tolerance)
        .copied()
        .reduce(|best, p| {
            let better = p.max_min_throughput > best.max_min_throughput
                || (p.max_min_throughput == best.max_min_throughput
                    && p.traj_length_norm < best.traj_length_norm);
            if better {
                p
            } else {
                best
            }
        })
        .ok_or(Error::Infeasible { tolerance })
}
