//! Report types for each subcommand and their CSV / JSON encodings.
//!
//! Numbers are written in shortest round-trip form (`Display` for CSV,
//! `serde_json` for JSON), so re-parsing gives back the same `f64`.

use std::fmt::Write as _;

use cma_core::allocator::{self, SolverConfig};
use cma_core::delay;
use cma_core::model::{self, Scenario};
use cma_core::search::{self, Scheme, TradeoffPoint};
use serde::{Deserialize, Serialize};

use crate::scenario_file::ScenarioFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatesReport {
    pub terminal_positions_m: Vec<f64>,
    pub x_m: Vec<f64>,
    /// `rates[i][k]`: rate of terminal k with the UAV at `x_m[i]`.
    pub rates: Vec<Vec<f64>>,
}

pub fn rates(
    scenario: &Scenario,
    x_min: f64,
    x_max: f64,
    samples: usize,
) -> anyhow::Result<RatesReport> {
    anyhow::ensure!(
        x_min.is_finite() && x_max.is_finite() && x_min < x_max,
        "rates range must satisfy x_min < x_max (got {x_min}, {x_max})"
    );
    anyhow::ensure!(samples >= 2, "need at least 2 samples, got {samples}");
    let params = scenario.linear();
    let layout = scenario.layout();
    let step = (x_max - x_min) / (samples - 1) as f64;
    let x_m: Vec<f64> = (0..samples)
        .map(|i| {
            if i == samples - 1 {
                x_max
            } else {
                x_min + i as f64 * step
            }
        })
        .collect();
    let rates = x_m
        .iter()
        .map(|&x| {
            layout
                .positions()
                .iter()
                .map(|&xk| model::rate(x, xk, &params))
                .collect()
        })
        .collect();
    Ok(RatesReport {
        terminal_positions_m: layout.positions().to_vec(),
        x_m,
        rates,
    })
}

impl RatesReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = String::from("x_m");
                for k in 1..=self.terminal_positions_m.len() {
                    write!(out, ",r_{k}").unwrap();
                }
                out.push('\n');
                for (x, row) in self.x_m.iter().zip(&self.rates) {
                    write!(out, "{x}").unwrap();
                    for r in row {
                        write!(out, ",{r}").unwrap();
                    }
                    out.push('\n');
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationReport {
    pub scheme: Scheme,
    pub traj_length_m: f64,
    pub speed_mps: f64,
    pub terminal_positions_m: Vec<f64>,
    pub delimiters: Vec<f64>,
    pub portions: Vec<f64>,
    pub throughputs: Vec<f64>,
    pub min_throughput: f64,
    pub iterations: usize,
    pub delays_s: Vec<f64>,
    pub rms_delay: f64,
    pub period: f64,
}

pub fn allocate(file: &ScenarioFile) -> anyhow::Result<AllocationReport> {
    let d = match file.traj_length {
        Some(d) if d > 0.0 => d,
        Some(d) => anyhow::bail!("allocate needs traj_length_m > 0 in the scenario file, got {d}"),
        None => anyhow::bail!("allocate needs traj_length_m in the scenario file"),
    };
    let scenario = file.scenario.with_traj_length(d)?;
    let alloc = match file.scheme {
        Scheme::Optimal => allocator::maxmin_allocate_with(&scenario, &solver_config(file))?,
        Scheme::Equal => allocator::equal_allocation(&scenario)?,
    };
    let profile = delay::access_delays(&alloc, scenario.speed())?;
    Ok(AllocationReport {
        scheme: file.scheme,
        traj_length_m: d,
        speed_mps: scenario.speed(),
        terminal_positions_m: scenario.layout().positions().to_vec(),
        delimiters: alloc.delimiters,
        portions: alloc.portions,
        throughputs: alloc.throughputs,
        min_throughput: alloc.min_throughput,
        iterations: alloc.iterations,
        delays_s: profile.per_terminal,
        rms_delay: profile.rms,
        period: profile.period,
    })
}

impl AllocationReport {
    /// CSV is the per-terminal table; the scalar summary is JSON-only.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out =
                    String::from("terminal,x_m,b_lo_m,b_hi_m,portion,throughput,delay_s\n");
                for k in 0..self.throughputs.len() {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        k + 1,
                        self.terminal_positions_m[k],
                        self.delimiters[k],
                        self.delimiters[k + 1],
                        self.portions[k],
                        self.throughputs[k],
                        self.delays_s[k]
                    )
                    .unwrap();
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaticReport {
    pub num_terminals: usize,
    pub span_m: f64,
    pub max_min_throughput: f64,
}

pub fn static_baseline(scenario: &Scenario) -> StaticReport {
    StaticReport {
        num_terminals: scenario.num_terminals(),
        span_m: scenario.span(),
        max_min_throughput: allocator::static_maxmin(scenario),
    }
}

impl StaticReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => format!(
                "num_terminals,span_m,max_min_throughput\n{},{},{}\n",
                self.num_terminals, self.span_m, self.max_min_throughput
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub phi_s: f64,
    pub scheme: Scheme,
    pub d_bar_star: f64,
    pub tau_star: f64,
    pub rms_delay_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeoffReport {
    pub points: Vec<TradeoffPoint>,
    pub selections: Vec<Selection>,
}

pub fn solver_config(file: &ScenarioFile) -> SolverConfig {
    SolverConfig {
        epsilon: file.epsilon,
        ..SolverConfig::default()
    }
}

/// Sweeps each scheme over `{0, step, ..., d_bar_max}` and picks the best
/// point for every tolerance. Runs on the caller's rayon pool.
pub fn tradeoff(
    file: &ScenarioFile,
    schemes: &[Scheme],
    d_bar_max: f64,
    d_bar_step: f64,
    tolerances: &[f64],
) -> anyhow::Result<TradeoffReport> {
    anyhow::ensure!(
        d_bar_step > 0.0 && d_bar_step.is_finite(),
        "--dbar-step must be positive, got {d_bar_step}"
    );
    anyhow::ensure!(
        d_bar_max >= 0.0 && d_bar_max.is_finite(),
        "--dbar-max must be non-negative, got {d_bar_max}"
    );
    for &phi in tolerances {
        anyhow::ensure!(
            phi >= 0.0 && phi.is_finite(),
            "--phi values must be non-negative, got {phi}"
        );
    }
    let grid = search::uniform_grid(d_bar_max, d_bar_step)?;
    let config = solver_config(file);
    let mut points = Vec::new();
    let mut selections = Vec::new();
    for &scheme in schemes {
        let sweep = search::sweep_with(&file.scenario, scheme, &grid, &config)?;
        for &phi in tolerances {
            let best = search::best_under_tolerance(&sweep, phi)?;
            selections.push(Selection {
                phi_s: phi,
                scheme,
                d_bar_star: best.traj_length_norm,
                tau_star: best.max_min_throughput,
                rms_delay_s: best.rms_delay,
            });
        }
        points.extend(sweep);
    }
    // Group selections by tolerance, schemes in request order.
    selections.sort_by(|a, b| a.phi_s.total_cmp(&b.phi_s));
    Ok(TradeoffReport { points, selections })
}

impl TradeoffReport {
    /// Two CSV sections separated by a blank line: the full sweep, then the
    /// per-tolerance optimum.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = String::from("scheme,d_bar,tau,rms_delay_s\n");
                for p in &self.points {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        p.scheme, p.traj_length_norm, p.max_min_throughput, p.rms_delay
                    )
                    .unwrap();
                }
                out.push_str("\nphi_s,scheme,d_bar_star,tau_star\n");
                for s in &self.selections {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        s.phi_s, s.scheme, s.d_bar_star, s.tau_star
                    )
                    .unwrap();
                }
                out
            }
        }
    }
}
