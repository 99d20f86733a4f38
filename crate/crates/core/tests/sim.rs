use rpm_core::formulas::{drift_diamond_formula, drift_global_formula, expected_peaks_formula};
use rpm_core::sim::pool;
use rpm_core::{run_ensemble, simulate, SimConfig};
use num_traits::ToPrimitive;

fn exact(l: usize) -> (f64, f64, f64) {
    (
        drift_diamond_formula(l).to_f64().unwrap(),
        drift_global_formula(l).to_f64().unwrap(),
        expected_peaks_formula(l).to_f64().unwrap(),
    )
}

fn assert_lln(l: usize, t: f64, seed: u64) {
    let s = simulate(&SimConfig::with_time(l, t, seed)).unwrap();
    let (jd, jg, np) = exact(l);
    let dd = s.drift_diamond_hat.unwrap();
    let dg = s.drift_global_hat.unwrap();
    let mp = s.mean_peaks_hat.unwrap();
    assert!(s.counters.is_balanced());
    assert!(dd.within(jd, 3.0), "L={l} J◊ {dd:?} vs {jd}");
    assert!(dg.within(jg, 3.0), "L={l} J⟲ {dg:?} vs {jg}");
    if l == 2 {
        assert!((mp.value - 1.0).abs() < 1e-12);
    } else {
        assert!(mp.within(np, 3.0), "L={l} peaks {mp:?} vs {np}");
    }
}

#[test]
fn lln_small_systems() {
    for l in [2, 4, 6, 8] {
        assert_lln(l, 1e5, 7);
    }
}

#[test]
fn deterministic_given_seed() {
    let cfg = SimConfig::with_time(8, 2e3, 11);
    let a = simulate(&cfg).unwrap();
    let b = simulate(&cfg).unwrap();
    assert_eq!(a, b);
    let one = run_ensemble(&cfg, 1).unwrap();
    assert_eq!(one, vec![a]);
}

#[test]
fn ensemble_seeds_and_pooling() {
    let cfg = SimConfig::with_time(8, 2e4, 100);
    let reps = run_ensemble(&cfg, 16).unwrap();
    assert_eq!(reps.len(), 16);
    for (k, r) in reps.iter().enumerate() {
        assert_eq!(r.seed, 100 + k as u64);
    }
    assert_eq!(run_ensemble(&cfg, 16).unwrap(), reps);
    let ests: Vec<_> = reps.iter().map(|r| r.drift_diamond_hat.unwrap()).collect();
    let pooled = pool(&ests).unwrap();
    let single = ests[0].std_error.unwrap();
    let ratio = single / pooled.std_error.unwrap();
    assert!((2.5..6.0).contains(&ratio), "ratio {ratio}");
    assert!(pooled.within(exact(8).0, 3.0));
}

#[test]
fn counters_monotone_in_log() {
    let mut cfg = SimConfig::with_time(6, 500.0, 3);
    cfg.report_every = Some(10.0);
    let mut last = None;
    rpm_core::simulate_logged(&cfg, |rec| {
        let c = rec.counters;
        assert!(c.is_balanced());
        if let Some(p) = last {
            let p: rpm_core::EventCounters = p;
            assert!(c.n_total >= p.n_total && c.n_diamond >= p.n_diamond);
            assert!(c.n_global >= p.n_global && c.n_peak >= p.n_peak);
        }
        last = Some(c);
    })
    .unwrap();
}
