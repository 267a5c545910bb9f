//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p cma-core --test acceptance -- --nocapture --test-threads 1`
//! to see them in order.

use std::time::{Duration, Instant};

use cma_core::allocator::{self, Allocation, SolverConfig};
use cma_core::delay::{self, DelayProfile};
use cma_core::model::{self, Scenario};
use cma_core::oracle::{self, QuadratureSpec};
use cma_core::search::{self, Scheme, TradeoffPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPSILON: f64 = 1e-5;

fn report(id: &str, ok: bool, detail: String) {
    println!("{} {id}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{id} failed: {detail}");
}

fn reference(d: f64) -> Scenario {
    Scenario::reference().with_traj_length(d).unwrap()
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

fn peak(points: &[TradeoffPoint]) -> TradeoffPoint {
    search::best_under_tolerance(points, f64::INFINITY).unwrap()
}

#[test]
fn ac1_reference_maxmin_throughput() {
    let start = Instant::now();
    let alloc = allocator::maxmin_allocate(&reference(500.0)).unwrap();
    let elapsed = start.elapsed();
    let tau = alloc.min_throughput;
    report(
        "AC1",
        (tau - 0.4663).abs() <= 1e-4 && elapsed < Duration::from_secs(1),
        format!(
            "tau = {tau:.6} (target 0.4663 ± 1e-4), {} passes, {elapsed:?}",
            alloc.iterations
        ),
    );
}

#[test]
fn ac2_static_baseline_and_gain() {
    let s = reference(500.0);
    let stat = allocator::static_maxmin(&s);
    let ratio = allocator::maxmin_allocate(&s).unwrap().min_throughput / stat;
    report(
        "AC2",
        (stat - 0.3488).abs() <= 1e-4 && (ratio - 1.337).abs() <= 0.005,
        format!(
            "static tau = {stat:.6} (0.3488 ± 1e-4), mobile/static = {ratio:.4} (1.337 ± 0.005)"
        ),
    );
}

#[test]
fn ac3_sweep_peaks() {
    let s = Scenario::reference();
    assert_eq!(s.speed(), 30.0);
    let grid = search::uniform_grid(2.0, 0.01).unwrap();
    let start = Instant::now();
    let (opt, eq) = single_threaded(|| {
        (
            search::sweep(&s, Scheme::Optimal, &grid).unwrap(),
            search::sweep(&s, Scheme::Equal, &grid).unwrap(),
        )
    });
    let elapsed = start.elapsed();
    let (po, pe) = (peak(&opt), peak(&eq));
    let ok = (po.traj_length_norm - 1.10).abs() <= 0.01 + 1e-12
        && (po.max_min_throughput - 0.6524).abs() <= 1e-3
        && (po.rms_delay - 52.37).abs() <= 0.2
        && (pe.traj_length_norm - 1.11).abs() <= 0.01 + 1e-12
        && (pe.max_min_throughput - 0.6523).abs() <= 1e-3
        && (pe.rms_delay - 52.85).abs() <= 0.2
        && elapsed < Duration::from_secs(60);
    report(
        "AC3",
        ok,
        format!(
            "optimal peak D̄={} tau={:.6} rms={:.2}s; equal peak D̄={} tau={:.6} rms={:.2}s; {elapsed:?} single-threaded",
            po.traj_length_norm,
            po.max_min_throughput,
            po.rms_delay,
            pe.traj_length_norm,
            pe.max_min_throughput,
            pe.rms_delay
        ),
    );
}

#[test]
fn ac4_gains_over_static() {
    let grid = search::default_grid();
    let gain = |span: f64| {
        let s = Scenario::builder().span(span).build().unwrap();
        let pts = search::sweep(&s, Scheme::Optimal, &grid).unwrap();
        peak(&pts).max_min_throughput / allocator::static_maxmin(&s) - 1.0
    };
    let (g1000, g2000) = (gain(1000.0), gain(2000.0));
    report(
        "AC4",
        (g2000 * 100.0 - 236.0).abs() <= 10.0 && (g1000 * 100.0 - 87.0).abs() <= 3.0,
        format!(
            "gain Δ=2000: {:.1}% (236 ± 10), Δ=1000: {:.1}% (87 ± 3)",
            g2000 * 100.0,
            g1000 * 100.0
        ),
    );
}

#[test]
fn ac5_closed_form_matches_quadrature() {
    let s = reference(500.0);
    let params = s.linear();
    let layout = s.layout();
    let spec = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let xk = layout.positions()[rng.gen_range(0..layout.len())];
        let a = rng.gen_range(-1000.0..1000.0);
        let b = rng.gen_range(-1000.0..1000.0);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let closed = model::segment_throughput(lo, hi, xk, 500.0, &params).unwrap();
        let quad = oracle::quad_throughput(lo, hi, xk, 500.0, &params, &spec).unwrap();
        worst = worst.max((closed - quad).abs() / quad);
    }
    report(
        "AC5",
        worst < 1e-8,
        format!("worst relative error {worst:.3e} over 1000 segments (< 1e-8)"),
    );
}

#[test]
fn ac6_brute_force_equivalence() {
    let s = Scenario::builder()
        .num_terminals(3)
        .traj_length(500.0)
        .build()
        .unwrap();
    let grid_n = 2000;
    let alg = allocator::maxmin_allocate(&s).unwrap().min_throughput;
    let (_, brute) = oracle::brute_force_maxmin(&s, grid_n).unwrap();
    // Moving one delimiter by one grid step changes a throughput by at most
    // (peak rate) · (D / grid_n) / D.
    let params = s.linear();
    let step_resolution = model::rate(0.0, 0.0, &params) / grid_n as f64;
    report(
        "AC6",
        (alg - brute).abs() <= 1e-4 && brute <= alg + step_resolution,
        format!(
            "algorithm tau {alg:.8}, brute force {brute:.8}, step resolution {step_resolution:.2e}"
        ),
    );
}

struct PropertyTally {
    name: &'static str,
    worst: f64,
    limit: f64,
}

impl PropertyTally {
    fn new(name: &'static str, limit: f64) -> Self {
        PropertyTally {
            name,
            worst: 0.0,
            limit,
        }
    }

    fn observe(&mut self, v: f64) {
        self.worst = self.worst.max(v);
    }

    fn ok(&self) -> bool {
        self.worst <= self.limit
    }
}

fn phi_symmetry(p: &DelayProfile) -> f64 {
    let k = p.per_terminal.len();
    (0..k)
        .map(|i| (p.per_terminal[i] - p.per_terminal[k - 1 - i]).abs())
        .fold(0.0, f64::max)
}

fn delimiter_symmetry(a: &Allocation) -> f64 {
    let b = &a.delimiters;
    let k = b.len() - 1;
    (0..=k).map(|i| (b[i] + b[k - i]).abs()).fold(0.0, f64::max)
}

#[test]
fn ac7_randomized_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let raw = SolverConfig {
        refine: false,
        ..SolverConfig::default()
    };
    let mut fd = PropertyTally::new("antiderivative vs central difference (abs)", 1e-6);
    let mut sym = PropertyTally::new("delimiter symmetry (m)", 1e-6);
    let mut spread = PropertyTally::new("spread / ((K-1)·ε), raw and refined", 1.0);
    let mut portions = PropertyTally::new("|Σδ - 1|", 1e-12);
    let mut phi_sym = PropertyTally::new("φ-profile symmetry (s)", 1e-6);
    let mut scaling = PropertyTally::new("V-scaling mismatches (count)", 0.0);
    let mut phi_mono = PropertyTally::new("Φ-monotonicity violations (count)", 0.0);
    let phi_grid = search::uniform_grid(2.0, 0.1).unwrap();

    for _ in 0..100 {
        let k = rng.gen_range(2..=20);
        let span = rng.gen_range(200.0..=5000.0);
        let altitude = rng.gen_range(50.0..=500.0);
        let d_bar = rng.gen_range(0.05..=2.0);
        let s = Scenario::builder()
            .num_terminals(k)
            .span(span)
            .altitude(altitude)
            .traj_length(d_bar * span)
            .build()
            .unwrap();
        let params = s.linear();
        let layout = s.layout();

        for _ in 0..10 {
            let xk = layout.positions()[rng.gen_range(0..k)];
            let x = rng.gen_range(-2.0 * span..=2.0 * span);
            let h = 1e-4;
            let central = (model::rate_antiderivative(x + h, xk, &params)
                - model::rate_antiderivative(x - h, xk, &params))
                / (2.0 * h);
            fd.observe((central - model::rate(x, xk, &params)).abs());
        }

        let alloc = allocator::maxmin_allocate(&s).unwrap();
        let rough = allocator::maxmin_allocate_with(&s, &raw).unwrap();
        let bound = (k - 1) as f64 * EPSILON;
        spread.observe(rough.spread() / bound);
        spread.observe(alloc.spread() / bound);
        sym.observe(delimiter_symmetry(&alloc));
        portions.observe((alloc.portions.iter().sum::<f64>() - 1.0).abs());

        let profile = delay::access_delays(&alloc, s.speed()).unwrap();
        phi_sym.observe(phi_symmetry(&profile));
        for c in [0.5, 2.0, 4.0] {
            let scaled = delay::access_delays(&alloc, s.speed() * c).unwrap();
            let exact = scaled.period == profile.period / c
                && scaled.rms == profile.rms / c
                && scaled
                    .per_terminal
                    .iter()
                    .zip(&profile.per_terminal)
                    .all(|(a, b)| *a == b / c);
            if !exact {
                scaling.observe(scaling.worst + 1.0);
            }
        }

        let pts = search::sweep(&s, Scheme::Optimal, &phi_grid).unwrap();
        let mut last = f64::NEG_INFINITY;
        let mut tolerances: Vec<f64> = pts.iter().map(|p| p.rms_delay).collect();
        tolerances.push(rng.gen_range(0.0..200.0));
        tolerances.sort_by(f64::total_cmp);
        for phi in tolerances {
            let tau = search::best_under_tolerance(&pts, phi)
                .unwrap()
                .max_min_throughput;
            if tau < last {
                phi_mono.observe(phi_mono.worst + 1.0);
            }
            last = tau;
        }
    }

    let all = [fd, sym, spread, portions, phi_sym, scaling, phi_mono];
    for t in &all {
        println!(
            "  {} {}: worst {:.3e} (limit {:.0e})",
            if t.ok() { "ok  " } else { "FAIL" },
            t.name,
            t.worst,
            t.limit
        );
    }
    let failed: Vec<_> = all.iter().filter(|t| !t.ok()).map(|t| t.name).collect();
    report(
        "AC7",
        failed.is_empty(),
        format!("100 randomized symmetric scenarios, failing properties: {failed:?}"),
    );
}

#[test]
fn ac8_portion_profile() {
    let alloc = allocator::maxmin_allocate(&reference(500.0)).unwrap();
    let d = &alloc.portions;
    let middle_smaller = d[4] < d[0] && d[4] < d[9] && d[5] < d[0] && d[5] < d[9];
    let left_decreasing = (0..4).all(|i| d[i] > d[i + 1]);
    let right_decreasing = (5..9).all(|i| d[i + 1] > d[i]);
    report(
        "AC8",
        middle_smaller && left_decreasing && right_decreasing,
        format!(
            "portions {:?}",
            d.iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>()
        ),
    );
}
