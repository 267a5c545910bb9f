//! Max-min-fair segment allocation (cyclical TDMA) and its baselines.
//!
//! The one-way trajectory `[-D/2, D/2]` is cut at delimiters
//! `b_0 = -D/2 <= b_1 <= ... <= b_K = D/2`; terminal `k` is served over
//! `[b_{k-1}, b_k]`. At the max-min optimum all terminals have equal
//! throughput, and moving `b_k` only trades throughput between terminals
//! `k` and `k + 1`. [`maxmin_allocate`] exploits both facts: it repeatedly
//! picks the neighbour pair with the largest throughput gap and moves
//! their shared delimiter until the two throughputs are equal.

use serde::{Deserialize, Serialize};

use crate::model::{self, LinearParams, Scenario, TerminalLayout};
use crate::root::bisect_increasing;
use crate::{Error, Result};

/// Knobs for [`maxmin_allocate_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once every neighbour throughput gap is below this (bps/Hz).
    pub epsilon: f64,
    /// Bracket width (m) at which a delimiter update stops bisecting.
    pub boundary_tol: f64,
    /// Pass cap; exceeding it is reported as [`Error::NoConvergence`].
    pub max_iterations: usize,
    /// After the gap loop converges, solve the equal-throughput condition
    /// exactly inside the bracket `[min θ, max θ]` it produced.
    pub refine: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            epsilon: 1e-5,
            boundary_tol: 1e-9,
            max_iterations: 1_000_000,
            refine: true,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(self.boundary_tol >= 0.0 && self.boundary_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "boundary tolerance must be non-negative, got {}",
                self.boundary_tol
            )));
        }
        Ok(())
    }
}

/// A partition of the one-way trajectory among the terminals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Allocation {
    /// `b_0 .. b_K`, non-decreasing, from `-D/2` to `D/2`.
    pub delimiters: Vec<f64>,
    /// Per-terminal average throughput θ_k (bps/Hz).
    pub throughputs: Vec<f64>,
    /// min_k θ_k.
    pub min_throughput: f64,
    /// Fraction δ_k of the trajectory owned by each terminal.
    pub portions: Vec<f64>,
    /// Gap-equalizing passes performed (0 for fixed allocations).
    pub iterations: usize,
}

impl Allocation {
    /// Evaluates throughputs and portions for a given delimiter sequence.
    pub fn from_delimiters(
        delimiters: Vec<f64>,
        layout: &TerminalLayout,
        params: &LinearParams,
        iterations: usize,
    ) -> Result<Self> {
        let k = layout.len();
        if delimiters.len() != k + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} delimiters for {k} terminals, got {}",
                k + 1,
                delimiters.len()
            )));
        }
        if delimiters.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidArgument("delimiters must be finite".into()));
        }
        if delimiters.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(
                "delimiters must be non-decreasing".into(),
            ));
        }
        let d = delimiters[k] - delimiters[0];
        if !(d > 0.0) {
            return Err(Error::InvalidArgument(
                "trajectory length must be positive".into(),
            ));
        }
        let throughputs = throughputs(&delimiters, layout.positions(), d, params);
        let portions = delimiters.windows(2).map(|w| (w[1] - w[0]) / d).collect();
        Ok(Allocation {
            min_throughput: min_of(&throughputs),
            throughputs,
            delimiters,
            portions,
            iterations,
        })
    }

    pub fn num_terminals(&self) -> usize {
        self.throughputs.len()
    }

    /// One-way trajectory length D = b_K - b_0.
    pub fn traj_length(&self) -> f64 {
        self.delimiters[self.delimiters.len() - 1] - self.delimiters[0]
    }

    /// max_k θ_k - min_k θ_k.
    pub fn spread(&self) -> f64 {
        max_of(&self.throughputs) - self.min_throughput
    }
}

fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn throughputs(delimiters: &[f64], xs: &[f64], d: f64, params: &LinearParams) -> Vec<f64> {
    xs.iter()
        .enumerate()
        .map(|(k, &xk)| {
            model::segment_throughput_unchecked(delimiters[k], delimiters[k + 1], xk, d, params)
        })
        .collect()
}

/// Uniform split `b_k = -D/2 + k·D/K`, mirror-exact about 0.
fn uniform_delimiters(k: usize, d: f64) -> Vec<f64> {
    let half = d / 2.0;
    let mut b = vec![0.0; k + 1];
    for i in 0..=k / 2 {
        let v = -half + i as f64 * (d / k as f64);
        b[i] = v;
        b[k - i] = -v;
    }
    b[0] = -half;
    b[k] = half;
    if k.is_multiple_of(2) {
        b[k / 2] = 0.0;
    }
    b
}

fn require_positive_length(scenario: &Scenario) -> Result<f64> {
    let d = scenario.traj_length();
    if d > 0.0 {
        Ok(d)
    } else {
        Err(Error::InvalidArgument(format!(
            "trajectory length must be positive (got {d}); use static_maxmin for a hovering UAV"
        )))
    }
}

/// Finds delimiter `k` (1-based, between terminals `k` and `k + 1`) in
/// `[b_prev, b_next]` such that both terminals get equal throughput.
///
/// Bisects to a bracket narrower than 1e-9 m.
pub fn solve_boundary(
    k: usize,
    b_prev: f64,
    b_next: f64,
    layout: &TerminalLayout,
    params: &LinearParams,
) -> Result<f64> {
    solve_boundary_tol(
        k,
        b_prev,
        b_next,
        layout,
        params,
        SolverConfig::default().boundary_tol,
    )
}

pub fn solve_boundary_tol(
    k: usize,
    b_prev: f64,
    b_next: f64,
    layout: &TerminalLayout,
    params: &LinearParams,
    tol: f64,
) -> Result<f64> {
    if k == 0 || k >= layout.len() {
        return Err(Error::InvalidArgument(format!(
            "delimiter index {k} outside 1..={}",
            layout.len().saturating_sub(1)
        )));
    }
    if !(b_prev <= b_next) {
        return Err(Error::InvalidArgument(format!(
            "bracket out of order: [{b_prev}, {b_next}]"
        )));
    }
    let xs = layout.positions();
    Ok(equalize(xs[k - 1], xs[k], b_prev, b_next, params, tol))
}

fn equalize(
    x_left: f64,
    x_right: f64,
    b_prev: f64,
    b_next: f64,
    params: &LinearParams,
    tol: f64,
) -> f64 {
    let r_left_lo = model::rate_antiderivative(b_prev, x_left, params);
    let r_right_hi = model::rate_antiderivative(b_next, x_right, params);
    let gap = |b: f64| {
        (model::rate_antiderivative(b, x_left, params) - r_left_lo)
            - (r_right_hi - model::rate_antiderivative(b, x_right, params))
    };
    bisect_increasing(gap, b_prev, b_next, tol)
}

/// Max-min-fair allocation with the default [`SolverConfig`].
pub fn maxmin_allocate(scenario: &Scenario) -> Result<Allocation> {
    maxmin_allocate_with(scenario, &SolverConfig::default())
}

pub fn maxmin_allocate_with(scenario: &Scenario, config: &SolverConfig) -> Result<Allocation> {
    maxmin_allocate_observed(scenario, config, |_, _| {})
}

/// Like [`maxmin_allocate_with`], calling `observe(ζ_max, θ)` at the start
/// of every pass of the gap loop (including the final, converged one).
pub fn maxmin_allocate_observed<F>(
    scenario: &Scenario,
    config: &SolverConfig,
    mut observe: F,
) -> Result<Allocation>
where
    F: FnMut(f64, &[f64]),
{
    config.validate()?;
    let d = require_positive_length(scenario)?;
    let layout = scenario.layout();
    let params = scenario.linear();
    let k = layout.len();
    let xs = layout.positions();

    let mut b = uniform_delimiters(k, d);
    let mut theta = throughputs(&b, xs, d, &params);
    let mut iterations = 0;

    if k >= 2 {
        loop {
            // Largest neighbour gap; ties resolve to the smallest index.
            let (mut k0, mut zeta) = (0, f64::NEG_INFINITY);
            for (i, w) in theta.windows(2).enumerate() {
                let g = (w[1] - w[0]).abs();
                if g > zeta {
                    zeta = g;
                    k0 = i;
                }
            }
            observe(zeta, &theta);
            if zeta < config.epsilon {
                break;
            }
            if iterations >= config.max_iterations {
                return Err(Error::NoConvergence {
                    iterations,
                    gap: zeta,
                });
            }
            let j = k0 + 1;
            b[j] = equalize(
                xs[k0],
                xs[j],
                b[j - 1],
                b[j + 1],
                &params,
                config.boundary_tol,
            );
            // Only the two terminals sharing b[j] change.
            theta[k0] = model::segment_throughput_unchecked(b[k0], b[j], xs[k0], d, &params);
            theta[j] = model::segment_throughput_unchecked(b[j], b[j + 1], xs[j], d, &params);
            iterations += 1;
        }

        if config.refine {
            b = refine_equal_throughput(b, &theta, xs, d, &params);
        }
    }

    Allocation::from_delimiters(b, &layout, &params, iterations)
}

/// Polishes an ε-converged partition to the exact equal-throughput one.
///
/// For a target τ the delimiters are determined left to right by
/// `θ_k(b_{k-1}, b_k) = τ`; τ is feasible iff the last terminal then gets at
/// least τ. The optimum lies in `[min θ, max θ]` of any partition, so τ is
/// bisected inside the bracket left by the gap loop.
fn refine_equal_throughput(
    initial: Vec<f64>,
    theta: &[f64],
    xs: &[f64],
    d: f64,
    params: &LinearParams,
) -> Vec<f64> {
    let k = xs.len();
    let half = d / 2.0;

    let chain = |tau: f64, out: &mut Vec<f64>| -> bool {
        out.clear();
        out.push(-half);
        for (i, &xk) in xs.iter().enumerate().take(k - 1) {
            let lo = out[i];
            let r_lo = model::rate_antiderivative(lo, xk, params);
            let reach = (model::rate_antiderivative(half, xk, params) - r_lo) / d;
            if reach < tau {
                return false;
            }
            let f = |x: f64| (model::rate_antiderivative(x, xk, params) - r_lo) / d - tau;
            out.push(bisect_increasing(f, lo, half, 0.0));
        }
        out.push(half);
        let last = model::segment_throughput_unchecked(out[k - 1], half, xs[k - 1], d, params);
        last >= tau
    };

    let mut lo = min_of(theta);
    let mut hi = max_of(theta);
    let mut best = initial;
    let mut trial = Vec::with_capacity(k + 1);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if chain(mid, &mut trial) {
            lo = mid;
            std::mem::swap(&mut best, &mut trial);
        } else {
            hi = mid;
        }
    }
    best
}

/// Every terminal gets the same trajectory portion 1/K.
pub fn equal_allocation(scenario: &Scenario) -> Result<Allocation> {
    let d = require_positive_length(scenario)?;
    let layout = scenario.layout();
    Allocation::from_delimiters(
        uniform_delimiters(layout.len(), d),
        &layout,
        &scenario.linear(),
        0,
    )
}

/// Max-min throughput of a UAV hovering at `(0, H)` with optimal time
/// sharing: the harmonic combination `1 / Σ_k 1/r_k(0)`.
pub fn static_maxmin(scenario: &Scenario) -> f64 {
    let params = scenario.linear();
    let inv_sum: f64 = scenario
        .layout()
        .positions()
        .iter()
        .map(|&xk| 1.0 / model::rate(0.0, xk, &params))
        .sum();
    1.0 / inv_sum
}
