//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rpm_core::formulas::{
    drift_diamond_formula, drift_global_formula, expected_peaks_formula, prob_omega_formula,
};
use rpm_core::{
    check_structure, exact_drifts, observables, scgf, scgf_derivatives, simulate,
    stationary_distribution, DeformedParams, SimConfig, SolverOptions, StateSpace,
};
use rpm_tq::checks;
use rpm_tq::derivatives::{expected_lambda_alpha, expected_lambda_beta, lambda_alpha, lambda_beta};
use rpm_tq::Report;
use rpm_xxz::bridge::BRIDGE_TOLERANCE;
use rpm_xxz::spin::TL_TOLERANCE;
use rpm_xxz::{build_xxz, check_tl, ground_energy, lambda_bridge, LanczosOptions, XXZParams};

type Outcome = Result<Vec<String>, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fail(msg: impl Into<String>) -> Outcome {
    Err(msg.into())
}

fn within(t: Duration, limit: Duration, what: &str, notes: &mut Vec<String>) -> bool {
    notes.push(format!("{what} in {:.1?}", t));
    t <= limit
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let t0 = Instant::now();
    for l in [2, 4, 6, 8, 10, 12] {
        if l == 12 && !within(t0.elapsed(), Duration::from_secs(60), "L ≤ 10", &mut notes) {
            return fail("L ≤ 10 took longer than a minute");
        }
        let t = Instant::now();
        let space = StateSpace::build(l).map_err(|e| e.to_string())?;
        let pi = stationary_distribution(l).map_err(|e| e.to_string())?;
        let o = observables(&space, &pi);
        if o.expected_peaks != expected_peaks_formula(l) || o.prob_omega_global != prob_omega_formula(l) {
            return fail(format!("L={l}: E[peaks] {} P {}", o.expected_peaks, o.prob_omega_global));
        }
        if l == 12 && !within(t.elapsed(), Duration::from_secs(600), "L = 12", &mut notes) {
            return fail("L = 12 took longer than 10 minutes");
        }
    }
    let o2 = observables(&StateSpace::build(2).unwrap(), &stationary_distribution(2).unwrap());
    let o4 = observables(&StateSpace::build(4).unwrap(), &stationary_distribution(4).unwrap());
    let spot = [
        (o2.expected_peaks.to_string(), "1"),
        (o2.prob_omega_global.to_string(), "1/2"),
        (o4.expected_peaks.to_string(), "8/5"),
        (o4.prob_omega_global.to_string(), "1/5"),
    ];
    for (got, want) in spot {
        if got != want {
            return fail(format!("spot value {got} vs {want}"));
        }
    }
    Ok(notes)
}

fn criterion_2() -> Outcome {
    for l in (2..=12).step_by(2) {
        let space = StateSpace::build(l).map_err(|e| e.to_string())?;
        let pi = stationary_distribution(l).map_err(|e| e.to_string())?;
        let (jd, jg) = exact_drifts(&space, &pi);
        if jd != drift_diamond_formula(l) || jg != drift_global_formula(l) {
            return fail(format!("L={l}: drifts {jd}, {jg}"));
        }
        if !observables(&space, &pi).tile_balance_holds(l) {
            return fail(format!("L={l}: tile balance"));
        }
    }
    Ok(vec![])
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    let t0 = Instant::now();
    for n in 1..=20 {
        let a = lambda_alpha(n).map_err(|e| e.to_string())?;
        let b = lambda_beta(n).map_err(|e| e.to_string())?;
        if a != expected_lambda_alpha(n) || b != expected_lambda_beta(n) {
            return fail(format!("N={n}: {a}, {b}"));
        }
    }
    if !within(t0.elapsed(), Duration::from_secs(60), "N ≤ 20", &mut notes) {
        return fail("N ≤ 20 took longer than a minute");
    }
    Ok(notes)
}

fn criterion_4() -> Outcome {
    let opts = SolverOptions::default();
    let mut worst: f64 = 0.0;
    for l in (2..=10).step_by(2) {
        let space = StateSpace::build(l).map_err(|e| e.to_string())?;
        let lam = scgf(&space, DeformedParams::new(0.0, 0.0), &opts).map_err(|e| e.to_string())?.lambda;
        if lam.abs() >= 1e-12 {
            return fail(format!("L={l}: Λ(0,0) = {lam:e}"));
        }
        let (da, db) = scgf_derivatives(&space, 1e-3, &opts).map_err(|e| e.to_string())?;
        let ja = drift_global_formula(l).to_f64().unwrap();
        let jb = drift_diamond_formula(l).to_f64().unwrap();
        let r = ((da - ja) / ja).abs().max(((db - jb) / jb).abs());
        if r >= 1e-6 {
            return fail(format!("L={l}: derivative relative error {r:e}"));
        }
        worst = worst.max(r);
    }
    Ok(vec![format!("worst relative error {worst:.1e}")])
}

fn criterion_5() -> Outcome {
    let mut r = Report::default();
    for n in 1..=20 {
        let run = |f: fn(usize) -> rpm_tq::Result<Report>| f(n).map_err(|e| format!("N={n}: {e}"));
        r.extend(run(checks::verify_tq)?);
        r.extend(run(checks::verify_wronskian)?);
        r.extend(run(checks::boundary_values)?);
        r.extend(run(checks::hypergeometric_check)?);
    }
    r.extend(checks::recurrence_check(30).map_err(|e| e.to_string())?);
    let failures: Vec<String> = r
        .failures()
        .map(|c| match &c.detail {
            Some(d) => format!("{} ({d})", c.name),
            None => c.name.clone(),
        })
        .collect();
    if failures.is_empty() {
        Ok(vec![format!("{} exact checks", r.checks.len())])
    } else {
        Err(format!("{} of {} checks failed: {}", failures.len(), r.checks.len(), failures.join("; ")))
    }
}

fn criterion_6() -> Outcome {
    let opts = LanczosOptions::default();
    for l in (4..=14).step_by(2) {
        let h = build_xxz(&XXZParams::combinatorial(l)).map_err(|e| e.to_string())?;
        let e = ground_energy(&h, &opts).map_err(|e| e.to_string())?;
        if (e + 0.75 * l as f64).abs() >= 1e-10 {
            return fail(format!("L={l}: E₀ = {e}"));
        }
    }
    let q = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
    let grid = [-0.1, 0.0, 0.1];
    let mut worst: f64 = 0.0;
    for l in [4, 6, 8] {
        let tl = check_tl(l, q, XXZParams::combinatorial(l).twist).map_err(|e| e.to_string())?;
        if !tl.passed(TL_TOLERANCE) {
            return fail(format!("L={l}: TL relations {tl:?}"));
        }
        for a in grid {
            for b in grid {
                let d = lambda_bridge(l, a, b).map_err(|e| e.to_string())?.difference;
                if d >= BRIDGE_TOLERANCE {
                    return fail(format!("L={l} (α,β)=({a},{b}): bridge difference {d:e}"));
                }
                worst = worst.max(d);
            }
        }
    }
    Ok(vec![format!("worst bridge difference {worst:.1e}")])
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for l in [4, 8] {
        let t0 = Instant::now();
        let s = simulate(&SimConfig::with_time(l, 1e5, 7)).map_err(|e| e.to_string())?;
        let targets = [
            ("J◊", s.drift_diamond_hat, drift_diamond_formula(l)),
            ("J⟲", s.drift_global_hat, drift_global_formula(l)),
            ("peaks", s.mean_peaks_hat, expected_peaks_formula(l)),
        ];
        for (name, est, exact) in targets {
            let est = est.ok_or_else(|| format!("L={l}: no {name} estimate"))?;
            let x = exact.to_f64().unwrap();
            if !est.within(x, 3.0) {
                return fail(format!("L={l} {name}: {est:?} vs {x}"));
            }
            notes.push(format!("L={l} {name} z={:+.2}", est.z_score(x).unwrap_or(f64::NAN)));
        }
        if !within(t0.elapsed(), Duration::from_secs(120), &format!("L={l} run"), &mut notes) {
            return fail(format!("L={l} run took longer than 2 minutes"));
        }
    }
    Ok(notes)
}

fn criterion_8() -> Outcome {
    for l in (2..=10).step_by(2) {
        let r = check_structure(l).map_err(|e| e.to_string())?;
        if !r.all_pass() {
            return fail(format!("L={l}: {r:?}"));
        }
    }
    Ok(vec![])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("exact peak and global-avalanche probabilities, L ≤ 12", criterion_1),
        ("exact drifts and tile balance, L ≤ 12", criterion_2),
        ("closed-form derivatives from T-Q, N ≤ 20", criterion_3),
        ("SCGF at the stochastic point, L ≤ 10", criterion_4),
        ("T-Q identities, N ≤ 20, recurrences N ≤ 30", criterion_5),
        ("XXZ energy, TL relations, bridge", criterion_6),
        ("Monte Carlo averages within 3σ", criterion_7),
        ("structural checks, L ≤ 10", criterion_8),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        match f() {
            Ok(notes) => {
                let extra = if notes.is_empty() { String::new() } else { format!(" [{}]", notes.join(", ")) };
                println!("PASS criterion {}: {name} ({:.1?}){extra}", i + 1, t0.elapsed());
            }
            Err(msg) => {
                all = false;
                println!("FAIL criterion {}: {name}: {msg}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
