//! Continuous-time Monte Carlo of the Raise and Peel model.
//!
//! All `L` site clocks have rate 1, so the superposed process waits an
//! `Exp(L)` time and then picks a site uniformly. One ChaCha8 stream seeded
//! from `SimConfig::seed` drives everything; replica `k` of an ensemble uses
//! seed `seed + k` (wrapping).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::moves::{apply_in_place, EventCounters, MoveDeltas};
use crate::profile::{check_length, count_peaks_raw, substrate};

/// Number of batches used for batch-means standard errors.
pub const DEFAULT_BATCHES: usize = 32;
/// Fraction of the run discarded before batching starts.
pub const BURN_IN_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_events: Option<u64>,
    pub seed: u64,
    /// Interval between trajectory log records.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_every: Option<f64>,
}

impl SimConfig {
    pub fn with_time(length: usize, t_max: f64, seed: u64) -> Self {
        Self {
            length,
            t_max: Some(t_max),
            max_events: None,
            seed,
            report_every: None,
        }
    }

    pub fn with_events(length: usize, max_events: u64, seed: u64) -> Self {
        Self {
            length,
            t_max: None,
            max_events: Some(max_events),
            seed,
            report_every: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_length(self.length)?;
        match (self.t_max, self.max_events) {
            (Some(t), None) if !(t.is_finite() && t >= 0.0) => Err(CoreError::InvalidConfig(
                format!("t_max must be finite and nonnegative, got {t}"),
            )),
            (Some(_), None) | (None, Some(_)) => Ok(()),
            _ => Err(CoreError::InvalidConfig(
                "exactly one of t_max and max_events must be set".into(),
            )),
        }?;
        if let Some(r) = self.report_every {
            if !(r.is_finite() && r > 0.0) {
                return Err(CoreError::InvalidConfig(format!(
                    "report_every must be positive, got {r}"
                )));
            }
        }
        Ok(())
    }
}

/// A point estimate with its batch-means standard error.
///
/// `std_error` is `None` when fewer than two batches carried any time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: Option<f64>,
}

impl Estimate {
    /// `|value - target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> Option<f64> {
        self.std_error.map(|se| (self.value - target).abs() / se)
    }

    pub fn within(&self, target: f64, sigmas: f64) -> bool {
        match self.std_error {
            Some(se) => (self.value - target).abs() <= sigmas * se,
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySummary {
    pub length: usize,
    pub seed: u64,
    pub elapsed_time: f64,
    pub counters: EventCounters,
    /// `None` when no time elapsed.
    pub drift_diamond_hat: Option<Estimate>,
    pub drift_global_hat: Option<Estimate>,
    pub mean_peaks_hat: Option<Estimate>,
    pub batches: usize,
}

/// One JSON-lines trajectory record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRecord {
    pub time: f64,
    pub counters: EventCounters,
    pub drift_diamond: f64,
    pub drift_global: f64,
    pub mean_peaks: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Batch {
    duration: f64,
    diamond: u64,
    global: u64,
    peak_area: f64,
}

/// Ratio estimator `Σc/Στ` with its batch-means standard error.
fn ratio_estimate(batches: &[Batch], total: f64, elapsed: f64, num: impl Fn(&Batch) -> f64) -> Estimate {
    let value = total / elapsed;
    let used: Vec<&Batch> = batches.iter().filter(|b| b.duration > 0.0).collect();
    let b = used.len();
    if b < 2 {
        return Estimate {
            value,
            std_error: None,
        };
    }
    let tau: f64 = used.iter().map(|x| x.duration).sum();
    let c: f64 = used.iter().map(|x| num(x)).sum();
    let r = c / tau;
    let mean_tau = tau / b as f64;
    let ss: f64 = used
        .iter()
        .map(|x| {
            let d = num(x) - r * x.duration;
            d * d
        })
        .sum();
    let se = (ss / (b as f64 * (b as f64 - 1.0))).sqrt() / mean_tau;
    Estimate {
        value,
        std_error: Some(se),
    }
}

/// Batch bookkeeping. Time mode slices post-burn-in time into equal windows,
/// event mode slices post-burn-in events into equal blocks.
enum Batching {
    Time { start: f64, width: f64 },
    Events { start: u64, size: u64 },
}

struct Run {
    batches: Vec<Batch>,
    batching: Batching,
    peak_area: f64,
}

impl Run {
    fn new(cfg: &SimConfig, n_batches: usize) -> Self {
        let batching = match (cfg.t_max, cfg.max_events) {
            (Some(t), _) => {
                let start = BURN_IN_FRACTION * t;
                Batching::Time {
                    start,
                    width: (t - start) / n_batches as f64,
                }
            }
            (None, Some(n)) => {
                let start = (BURN_IN_FRACTION * n as f64).ceil() as u64;
                Batching::Events {
                    start,
                    size: ((n - start) / n_batches as u64).max(1),
                }
            }
            (None, None) => unreachable!("validated"),
        };
        Self {
            batches: vec![Batch::default(); n_batches],
            batching,
            peak_area: 0.0,
        }
    }

    fn time_batch(&self, t: f64) -> Option<usize> {
        match self.batching {
            Batching::Time { start, width } if t >= start && width > 0.0 => {
                let k = ((t - start) / width) as usize;
                Some(k.min(self.batches.len() - 1))
            }
            _ => None,
        }
    }

    /// Index of the batch the `event`-th event (1-based) belongs to.
    fn event_batch(&self, event: u64) -> Option<usize> {
        match self.batching {
            Batching::Events { start, size } if event > start => {
                let k = ((event - start - 1) / size) as usize;
                Some(k.min(self.batches.len() - 1))
            }
            _ => None,
        }
    }

    /// Integrates a constant peak count over `[t0, t1)`. In event mode the
    /// interval belongs to the upcoming event `event`.
    fn hold(&mut self, t0: f64, t1: f64, peaks: f64, event: u64) {
        self.peak_area += peaks * (t1 - t0);
        match self.batching {
            Batching::Events { .. } => {
                if let Some(k) = self.event_batch(event) {
                    self.batches[k].duration += t1 - t0;
                    self.batches[k].peak_area += peaks * (t1 - t0);
                }
            }
            Batching::Time { start, width } => {
                let mut a = t0.max(start);
                while a < t1 {
                    let k = self.time_batch(a).expect("a >= start");
                    let edge = if k + 1 == self.batches.len() {
                        t1
                    } else {
                        (start + (k + 1) as f64 * width).min(t1)
                    };
                    // Guard against a boundary that rounding placed at `a`.
                    let edge = if edge <= a { t1.min(a + width) } else { edge };
                    self.batches[k].duration += edge - a;
                    self.batches[k].peak_area += peaks * (edge - a);
                    a = edge;
                }
            }
        }
    }

    fn event(&mut self, t: f64, event: u64, d: &MoveDeltas) {
        let k = match self.batching {
            Batching::Time { .. } => self.time_batch(t),
            Batching::Events { .. } => self.event_batch(event),
        };
        if let Some(k) = k {
            self.batches[k].diamond += d.diamond;
            self.batches[k].global += d.global;
        }
    }
}

/// Runs one trajectory from the substrate.
pub fn simulate(cfg: &SimConfig) -> Result<TrajectorySummary> {
    simulate_logged(cfg, |_| {})
}

/// Like [`simulate`], calling `log` every `cfg.report_every` time units.
pub fn simulate_logged(cfg: &SimConfig, mut log: impl FnMut(&LogRecord)) -> Result<TrajectorySummary> {
    cfg.validate()?;
    let l = cfg.length;
    let rate = l as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut heights = substrate(l)?.into_heights();
    let mut peaks = count_peaks_raw(&heights) as f64;
    let mut counters = EventCounters::default();
    let mut run = Run::new(cfg, DEFAULT_BATCHES);
    let mut next_report = cfg.report_every;
    let mut t = 0.0f64;

    let mut emit = |at: f64, counters: &EventCounters, area: f64| {
        if at > 0.0 {
            log(&LogRecord {
                time: at,
                counters: *counters,
                drift_diamond: counters.n_diamond as f64 / at,
                drift_global: counters.n_global as f64 / at,
                mean_peaks: area / at,
            });
        }
    };

    loop {
        if cfg.max_events.is_some_and(|n| counters.n_total >= n) {
            break;
        }
        let u: f64 = rng.random();
        let dt = -(1.0 - u).ln() / rate;
        let t_next = t + dt;
        let stop = cfg.t_max.filter(|&tm| t_next > tm);
        let until = stop.unwrap_or(t_next);

        while let Some(r) = next_report.filter(|&r| r <= until) {
            run.hold(t, r, peaks, counters.n_total + 1);
            t = r;
            emit(t, &counters, run.peak_area);
            next_report = Some(r + cfg.report_every.expect("reporting"));
        }
        run.hold(t, until, peaks, counters.n_total + 1);
        t = until;
        if stop.is_some() {
            break;
        }

        let site = rng.random_range(0..l);
        let d = apply_in_place(&mut heights, site);
        counters.record(&d);
        debug_assert!(counters.is_balanced());
        run.event(t, counters.n_total, &d);
        if d.peak == 0 {
            peaks = count_peaks_raw(&heights) as f64;
        }
    }

    let elapsed = t;
    let (dd, dg, mp) = if elapsed > 0.0 {
        (
            Some(ratio_estimate(&run.batches, counters.n_diamond as f64, elapsed, |b| {
                b.diamond as f64
            })),
            Some(ratio_estimate(&run.batches, counters.n_global as f64, elapsed, |b| {
                b.global as f64
            })),
            Some(ratio_estimate(&run.batches, run.peak_area, elapsed, |b| b.peak_area)),
        )
    } else {
        (None, None, None)
    };

    Ok(TrajectorySummary {
        length: l,
        seed: cfg.seed,
        elapsed_time: elapsed,
        counters,
        drift_diamond_hat: dd,
        drift_global_hat: dg,
        mean_peaks_hat: mp,
        batches: run.batches.len(),
    })
}

/// Time-weighted mean number of peaks along one trajectory.
pub fn mean_peaks_time_average(cfg: &SimConfig) -> Result<Option<Estimate>> {
    Ok(simulate(cfg)?.mean_peaks_hat)
}

/// Independent replicas with seeds `seed + k`, run in parallel. The output
/// order is the replica order.
pub fn run_ensemble(cfg: &SimConfig, n_replicas: usize) -> Result<Vec<TrajectorySummary>> {
    if n_replicas == 0 {
        return Err(CoreError::InvalidConfig("n_replicas must be at least 1".into()));
    }
    cfg.validate()?;
    (0..n_replicas as u64)
        .into_par_iter()
        .map(|k| {
            let mut c = cfg.clone();
            c.seed = cfg.seed.wrapping_add(k);
            simulate(&c)
        })
        .collect()
}

/// Mean of replica estimates, with standard error `sqrt(Σ se²)/n`.
pub fn pool(estimates: &[Estimate]) -> Option<Estimate> {
    if estimates.is_empty() {
        return None;
    }
    let n = estimates.len() as f64;
    let value = estimates.iter().map(|e| e.value).sum::<f64>() / n;
    let var: Option<f64> = estimates
        .iter()
        .map(|e| e.std_error.map(|s| s * s))
        .sum();
    Some(Estimate {
        value,
        std_error: var.map(|v| v.sqrt() / n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_events_gives_undefined_estimates() {
        let s = simulate(&SimConfig::with_events(4, 0, 1)).unwrap();
        assert_eq!(s.elapsed_time, 0.0);
        assert_eq!(s.counters, EventCounters::default());
        assert!(s.drift_diamond_hat.is_none());
        assert!(s.mean_peaks_hat.is_none());
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::with_time(7, 1.0, 0).validate().is_err());
        let mut c = SimConfig::with_time(4, 1.0, 0);
        c.max_events = Some(3);
        assert!(c.validate().is_err());
        assert!(SimConfig::with_time(4, -1.0, 0).validate().is_err());
    }

    #[test]
    fn l2_peaks_are_exactly_one() {
        let e = mean_peaks_time_average(&SimConfig::with_time(2, 100.0, 3))
            .unwrap()
            .unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
        assert!(e.std_error.unwrap() < 1e-12);
    }

    #[test]
    fn event_mode_stops_at_count() {
        let s = simulate(&SimConfig::with_events(6, 1000, 5)).unwrap();
        assert_eq!(s.counters.n_total, 1000);
        assert!(s.counters.is_balanced());
        assert!(s.elapsed_time > 0.0);
    }

    #[test]
    fn log_records_at_intervals() {
        let mut cfg = SimConfig::with_time(4, 10.0, 9);
        cfg.report_every = Some(2.5);
        let mut times = Vec::new();
        simulate_logged(&cfg, |r| times.push(r.time)).unwrap();
        assert_eq!(times, vec![2.5, 5.0, 7.5, 10.0]);
    }

    #[test]
    fn pool_shrinks_error() {
        let e = Estimate {
            value: 1.0,
            std_error: Some(0.4),
        };
        let p = pool(&[e; 16]).unwrap();
        assert!((p.std_error.unwrap() - 0.1).abs() < 1e-15);
    }
}
