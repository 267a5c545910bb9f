//! Independent reference computations for testing.
//!
//! Nothing here is used by the allocator or the CLI: the quadrature
//! integrates the rate numerically instead of through its closed-form
//! antiderivative, and the brute-force search enumerates delimiter grids
//! instead of equalizing gaps.

use crate::model::{self, LinearParams, Scenario};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of interval bisections before giving up.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-13,
            max_subdivisions: 1 << 20,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_subdivisions >= 1) {
            return Err(Error::InvalidArgument(format!(
                "invalid quadrature spec {self:?}"
            )));
        }
        Ok(())
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
    width / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson integration of `f` over `[a, b]` with Richardson
/// correction on accepted panels.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if a == b {
        return Ok(0.0);
    }
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    let tol = spec.abs_tol.max(spec.rel_tol * whole.abs());

    struct Panel {
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
    }

    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        tol,
    }];
    let mut total = 0.0;
    let mut subdivisions = 0;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(p.fa, flm, p.fm, m - p.a);
        let right = simpson(p.fm, frm, p.fb, p.b - m);
        let err = left + right - p.whole;
        if err.abs() <= 15.0 * p.tol || lm <= p.a || rm >= p.b {
            total += left + right + err / 15.0;
            continue;
        }
        subdivisions += 1;
        if subdivisions > spec.max_subdivisions {
            return Err(Error::QuadratureBudget {
                subdivisions: spec.max_subdivisions,
            });
        }
        let tol = 0.5 * p.tol;
        stack.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            tol,
        });
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            tol,
        });
    }
    Ok(total)
}

/// Segment throughput by numerically integrating the rate.
pub fn quad_throughput(
    b_lo: f64,
    b_hi: f64,
    xk: f64,
    d: f64,
    params: &LinearParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "trajectory length must be positive, got {d}"
        )));
    }
    if !(b_lo <= b_hi) {
        return Err(Error::InvalidArgument(format!(
            "segment bounds out of order: [{b_lo}, {b_hi}]"
        )));
    }
    let integral = adaptive_simpson(|x| model::rate(x, xk, params), b_lo, b_hi, spec)?;
    Ok(integral / d)
}

/// Exhaustive max-min search over delimiters restricted to the uniform grid
/// `-D/2 + i·D/grid_n`, for two or three terminals.
///
/// Returns the full delimiter list `b_0..b_K` and its min-throughput. Ties
/// keep the lexicographically smallest tuple.
pub fn brute_force_maxmin(scenario: &Scenario, grid_n: usize) -> Result<(Vec<f64>, f64)> {
    let k = scenario.num_terminals();
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "brute force supports 2 or 3 terminals, got {k}"
        )));
    }
    if grid_n < 100 {
        return Err(Error::InvalidArgument(format!(
            "grid_n must be at least 100, got {grid_n}"
        )));
    }
    let d = scenario.traj_length();
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(
            "trajectory length must be positive".into(),
        ));
    }
    let params = scenario.linear();
    let layout = scenario.layout();
    let xs = layout.positions();
    let half = d / 2.0;
    let grid: Vec<f64> = (0..=grid_n)
        .map(|i| {
            if i == grid_n {
                half
            } else {
                -half + i as f64 * d / grid_n as f64
            }
        })
        .collect();
    // anti[k][i] = R_k(grid[i]); segment throughputs become differences.
    let anti: Vec<Vec<f64>> = xs
        .iter()
        .map(|&xk| {
            grid.iter()
                .map(|&g| model::rate_antiderivative(g, xk, &params))
                .collect()
        })
        .collect();
    let theta = |term: usize, i: usize, j: usize| (anti[term][j] - anti[term][i]) / d;

    let mut best_tau = f64::NEG_INFINITY;
    let mut best = Vec::new();
    let n = grid_n;
    if k == 2 {
        for i in 0..=n {
            let tau = theta(0, 0, i).min(theta(1, i, n));
            if tau > best_tau {
                best_tau = tau;
                best = vec![grid[0], grid[i], grid[n]];
            }
        }
    } else {
        for i in 0..=n {
            let t0 = theta(0, 0, i);
            if t0 <= best_tau {
                continue;
            }
            for j in i..=n {
                let tau = t0.min(theta(1, i, j)).min(theta(2, j, n));
                if tau > best_tau {
                    best_tau = tau;
                    best = vec![grid[0], grid[i], grid[j], grid[n]];
                }
            }
        }
    }
    Ok((best, best_tau))
}
