use cma_core::allocator;
use cma_core::model::Scenario;
use cma_core::search::{self, Scheme, SweepResult, TradeoffPoint};

fn sweeps() -> (Vec<TradeoffPoint>, Vec<TradeoffPoint>) {
    let s = Scenario::reference();
    let grid = search::default_grid();
    (
        search::sweep(&s, Scheme::Optimal, &grid).unwrap(),
        search::sweep(&s, Scheme::Equal, &grid).unwrap(),
    )
}

#[test]
fn reference_sweep_invariants() {
    let (opt, eq) = sweeps();
    assert_eq!(opt.len(), 201);
    for pts in [&opt, &eq] {
        // rms delay grows with trajectory length on this scenario
        assert!(pts.windows(2).all(|w| w[1].rms_delay >= w[0].rms_delay));
        for p in pts.iter() {
            assert_eq!(p.traj_length, p.traj_length_norm * 1000.0);
            assert!(p.max_min_throughput >= 0.0 && p.rms_delay >= 0.0);
        }
    }
    for (o, e) in opt.iter().zip(&eq) {
        assert_eq!(o.traj_length_norm, e.traj_length_norm);
        assert!(o.max_min_throughput >= e.max_min_throughput - 1e-9);
    }
}

#[test]
fn tolerance_selection_on_reference() {
    let (opt, eq) = sweeps();
    let relaxed = search::best_under_tolerance(&opt, 60.0).unwrap();
    assert_eq!(relaxed.traj_length_norm, 1.1);
    assert!((relaxed.max_min_throughput - 0.6524).abs() < 1e-3);

    let hover = search::best_under_tolerance(&opt, 0.0).unwrap();
    assert_eq!(hover.traj_length_norm, 0.0);
    assert!((hover.max_min_throughput - 0.3488).abs() < 1e-4);

    let o30 = search::best_under_tolerance(&opt, 30.0).unwrap();
    let e30 = search::best_under_tolerance(&eq, 30.0).unwrap();
    assert!(o30.rms_delay <= 30.0 && e30.rms_delay <= 30.0);
    assert!(o30.max_min_throughput > e30.max_min_throughput);

    let eq_peak = search::best_under_tolerance(&eq, f64::INFINITY).unwrap();
    assert_eq!(eq_peak.traj_length_norm, 1.11);
    assert!((eq_peak.rms_delay - 52.85).abs() < 0.2);
}

#[test]
fn relaxing_tolerance_never_hurts() {
    let (opt, _) = sweeps();
    let mut last = 0.0;
    for i in 0..=80 {
        let r = SweepResult::new(opt.clone(), i as f64).unwrap();
        assert!(r.best.max_min_throughput >= last);
        last = r.best.max_min_throughput;
    }
}

#[test]
fn result_independent_of_thread_count() {
    let s = Scenario::builder().span(1500.0).build().unwrap();
    let grid = search::uniform_grid(1.5, 0.05).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| search::sweep(&s, Scheme::Optimal, &grid).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    // Evaluating points one at a time, in reverse, gives the same values.
    let cfg = allocator::SolverConfig::default();
    for (i, &d) in grid.iter().enumerate().rev() {
        assert_eq!(
            search::evaluate_point(&s, Scheme::Optimal, d, &cfg).unwrap(),
            one[i]
        );
    }
}
