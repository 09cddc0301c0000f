use num_traits::ToPrimitive;
use torus_asep::dynamics::build_numeric;
use torus_asep::mcmc::{
    compare_with_closed_forms, estimate_observables, simulate, total_variation, CrossingLedger, Horizon, SimConfig,
    Simulator,
};
use torus_asep::model::ColoredWord;
use torus_asep::stationary::exact_stationary;
use torus_asep::RatePoint;

const CAP: u64 = 1_000_000;

fn rates(s: &str) -> RatePoint {
    RatePoint::parse(s).unwrap()
}

fn exact_pairs(l: usize, n: usize, r: &RatePoint) -> Vec<(ColoredWord, f64)> {
    let table = exact_stationary(&build_numeric(l, n, r, CAP).unwrap(), r).unwrap();
    let probs = table.probabilities().unwrap();
    table.states.iter().cloned().zip(probs.iter().map(|p| p.to_f64().unwrap())).collect()
}

#[test]
fn same_seed_same_run() {
    let cfg = SimConfig::new(5, 2, rates("1,2;1/2,1"), Horizon::Events(20_000), 7);
    let a = simulate(cfg.clone()).unwrap();
    let b = simulate(cfg).unwrap();
    assert_eq!(a.ledger, b.ledger);
    assert_eq!(a.state.word, b.state.word);
    assert_eq!(a.state.elapsed, b.state.elapsed);
}

#[test]
fn crossings_balance_per_event() {
    let cfg = SimConfig::new(6, 3, rates("1,2,3/2;1/2,1,1/4"), Horizon::Events(5_000), 11);
    let (l, n) = (6, 3);
    let mut sim = Simulator::new(cfg).unwrap();
    let mut prev = CrossingLedger::new(l, n);
    while sim.step().is_some() {
        let now = sim.ledger().clone();
        for b in 0..l {
            let bullets: i64 = (0..n).map(|i| now.bullet(i, b) - prev.bullet(i, b)).sum();
            let boxes = now.box_column[b] - prev.box_column[b];
            assert_eq!(bullets + boxes, 0, "boundary {b}");
        }
        prev = now;
    }
}

#[test]
fn two_one_occupancy_is_half() {
    let cfg = SimConfig::new(2, 1, rates("1;1/2"), Horizon::Events(200_000), 3);
    let out = simulate(cfg).unwrap();
    let est = estimate_observables(&out).unwrap();
    for j in 0..2 {
        assert!((est.density_bullet[0][j].mean - 0.5).abs() < 0.01);
    }
}

#[test]
fn total_variation_shrinks() {
    let r = rates("1,2;1/2,1");
    let exact = exact_pairs(4, 2, &r);
    let tv = |events| {
        let mut cfg = SimConfig::new(4, 2, r.clone(), Horizon::Events(events), 5);
        cfg.track_states = true;
        total_variation(&simulate(cfg).unwrap().empirical_distribution(), &exact)
    };
    let small = tv(10_000);
    let large = tv(1_000_000);
    assert!(large < small, "{large} >= {small}");
    assert!(large < 0.01, "{large}");
}

#[test]
fn symmetric_rates_carry_no_current() {
    let cfg = SimConfig::new(5, 2, rates("1,2;1,2"), Horizon::Events(200_000), 9);
    let out = simulate(cfg).unwrap();
    let est = estimate_observables(&out).unwrap();
    for e in est.bullet_total.iter().chain(&est.box_h_column) {
        assert!(e.mean.abs() < 4.0 * e.se + 1e-12, "{e:?}");
    }
}

#[test]
fn estimates_match_closed_forms() {
    let r = rates("2,1;1/2,1/3");
    let cfg = SimConfig::new(5, 2, r.clone(), Horizon::Events(400_000), 13);
    let out = simulate(cfg).unwrap();
    let est = estimate_observables(&out).unwrap();
    let checks = compare_with_closed_forms(&est, 5, 2, &r).unwrap();
    let worst = checks.iter().map(|c| c.z).fold(0.0, f64::max);
    assert!(worst < 5.0, "worst z = {worst}");
}

#[test]
fn time_horizon_stops_on_time() {
    let cfg = SimConfig::new(4, 2, rates("1,1;1,1"), Horizon::Time(100.0), 1);
    let out = simulate(cfg).unwrap();
    assert_eq!(out.state.elapsed, 100.0);
    let total: f64 = out.batches.iter().map(|b| b.time).sum();
    assert!((total - 100.0).abs() < 1e-9);
}

#[test]
fn ledger_csv_has_header() {
    let cfg = SimConfig::new(3, 1, rates("1;1/2"), Horizon::Events(100), 1);
    let out = simulate(cfg).unwrap();
    let mut buf = Vec::new();
    out.ledger.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("kind,row,boundary,count\n"));
}
