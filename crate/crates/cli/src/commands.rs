use std::fs::File;
use std::io::{BufWriter, Write};

use anyhow::{Context, Result};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use rpm_core::formulas::{
    drift_diamond_formula, drift_global_formula, expected_peaks_formula, htsasm_count,
    prob_omega_formula,
};
use rpm_core::sim::pool;
use rpm_core::{
    fraction_string as frac, observables, run_ensemble, scgf, scgf_derivatives, simulate,
    simulate_logged, stationary_with, DeformedParams, KernelMethod, SimConfig, SolverOptions,
    StateSpace,
};
use rpm_tq::{bethe, checks, derivatives, Report};
use rpm_xxz::bridge::{bridge_params, lambda_bridge, BRIDGE_TOLERANCE};
use rpm_xxz::spin::TL_TOLERANCE;
use rpm_xxz::{build_xxz, check_tl, ground_state, LanczosOptions};

use crate::args::{Method, ScgfArgs, SimulateArgs, StationaryArgs, TqArgs, TqCheck, XxzArgs};
use crate::exit::UsageError;

/// JSON result and overall pass flag.
pub type Outcome = (Value, bool);

fn f64_of(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn targets(length: usize) -> Value {
    json!({
        "drift_diamond": frac(&drift_diamond_formula(length)),
        "drift_global": frac(&drift_global_formula(length)),
        "mean_peaks": frac(&expected_peaks_formula(length)),
    })
}

pub fn simulate_cmd(a: &SimulateArgs) -> Result<Outcome> {
    let mut cfg = match (a.time, a.events) {
        (Some(t), None) => SimConfig::with_time(a.length, t, a.seed),
        (None, Some(n)) => SimConfig::with_events(a.length, n, a.seed),
        _ => return Err(UsageError("give exactly one of --time and --events".into()).into()),
    };
    cfg.report_every = a.report_every;
    cfg.validate()?;
    if a.replicas == 1 {
        let summary = match &a.log {
            Some(path) => {
                let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                let mut w = BufWriter::new(f);
                let mut io_err = None;
                let s = simulate_logged(&cfg, |rec| {
                    if io_err.is_none() {
                        let line = serde_json::to_string(rec).expect("log record serialises");
                        if let Err(e) = writeln!(w, "{line}") {
                            io_err = Some(e);
                        }
                    }
                })?;
                if let Some(e) = io_err {
                    return Err(e).context("writing trajectory log");
                }
                w.flush()?;
                s
            }
            None => simulate(&cfg)?,
        };
        return Ok((json!({ "summary": summary, "exact": targets(a.length) }), true));
    }
    if a.log.is_some() {
        return Err(UsageError("--log needs a single replica".into()).into());
    }
    let runs = run_ensemble(&cfg, a.replicas)?;
    let pooled = |f: fn(&rpm_core::TrajectorySummary) -> Option<rpm_core::Estimate>| {
        pool(&runs.iter().filter_map(f).collect::<Vec<_>>())
    };
    let result = json!({
        "replicas": runs,
        "pooled": {
            "drift_diamond": pooled(|s| s.drift_diamond_hat),
            "drift_global": pooled(|s| s.drift_global_hat),
            "mean_peaks": pooled(|s| s.mean_peaks_hat),
        },
        "exact": targets(a.length),
    });
    Ok((result, true))
}

pub fn stationary_cmd(a: &StationaryArgs) -> Result<Outcome> {
    let space = StateSpace::build(a.length)?;
    let method = match a.method {
        Method::Auto => KernelMethod::Auto,
        Method::Bareiss => KernelMethod::Bareiss,
        Method::Modular => KernelMethod::Modular,
    };
    let pi = stationary_with(&space, method)?;
    let obs = observables(&space, &pi);
    let l = a.length;
    let checks = json!({
        "expected_peaks": obs.expected_peaks == expected_peaks_formula(l),
        "prob_omega_global": obs.prob_omega_global == prob_omega_formula(l),
        "drift_diamond": obs.drift_diamond == drift_diamond_formula(l),
        "drift_global": obs.drift_global == drift_global_formula(l),
        "tile_balance": obs.tile_balance_holds(l),
    });
    let passed = checks.as_object().expect("object").values().all(|v| v == &Value::Bool(true));
    let mut result = json!({
        "length": l,
        "states": pi.states.len(),
        "method": pi.method,
        "integer_sum": pi.integer_sum.to_string(),
        "doubled_integer_sum": pi.doubled_integer_sum().to_string(),
        "min_integer": pi.min_integer().to_string(),
        "htsasm_count": htsasm_count(l).map(|c| c.to_string()),
        "observables": {
            "expected_peaks": frac(&obs.expected_peaks),
            "prob_omega_global": frac(&obs.prob_omega_global),
            "drift_diamond": frac(&obs.drift_diamond),
            "drift_global": frac(&obs.drift_global),
        },
        "formulas": {
            "expected_peaks": frac(&expected_peaks_formula(l)),
            "prob_omega_global": frac(&prob_omega_formula(l)),
            "drift_diamond": frac(&drift_diamond_formula(l)),
            "drift_global": frac(&drift_global_formula(l)),
        },
        "checks": checks,
    });
    if a.integers {
        result["integer_form"] = json!(pi.integer_form.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    if a.states {
        result["state_list"] = json!(pi
            .states
            .iter()
            .zip(&pi.probabilities)
            .map(|(h, p)| json!({ "heights": h.to_string(), "probability": frac(p) }))
            .collect::<Vec<_>>());
    }
    Ok((result, passed))
}

pub const DERIVATIVE_RTOL: f64 = 1e-6;

pub fn scgf_cmd(a: &ScgfArgs) -> Result<Outcome> {
    let space = StateSpace::build(a.length)?;
    let opts = SolverOptions {
        spectral_gap: a.spectral_gap,
        ..SolverOptions::default()
    };
    let r = scgf(&space, DeformedParams::new(a.alpha, a.beta), &opts)?;
    let mut result = json!({ "length": a.length, "alpha": a.alpha, "beta": a.beta, "result": r });
    let mut passed = true;
    if a.derivatives {
        let (da, db) = scgf_derivatives(&space, a.step, &opts)?;
        let ja = drift_global_formula(a.length);
        let jb = drift_diamond_formula(a.length);
        let ra = ((da - f64_of(&ja)) / f64_of(&ja)).abs();
        let rb = ((db - f64_of(&jb)) / f64_of(&jb)).abs();
        passed = ra < DERIVATIVE_RTOL && rb < DERIVATIVE_RTOL;
        result["derivatives"] = json!({
            "step": a.step,
            "d_alpha": da, "d_alpha_exact": frac(&ja), "d_alpha_rel_error": ra,
            "d_beta": db, "d_beta_exact": frac(&jb), "d_beta_rel_error": rb,
            "passed": passed,
        });
    }
    Ok((result, passed))
}

pub fn tq_cmd(a: &TqArgs) -> Result<Outcome> {
    let n = a.n;
    let want = |c: TqCheck| a.check == TqCheck::All || a.check == c;
    let mut report = Report::default();
    let mut result = json!({ "n": n, "check": a.check });
    if a.check == TqCheck::All {
        report.extend(checks::verify_structure(n)?);
    }
    if want(TqCheck::Tq) {
        report.extend(checks::verify_tq(n)?);
    }
    if want(TqCheck::Wronskian) {
        report.extend(checks::verify_wronskian(n)?);
    }
    if want(TqCheck::Boundary) {
        report.extend(checks::boundary_values(n)?);
        result["boundary"] = serde_json::to_value(checks::boundary_table(n)?)?;
    }
    if want(TqCheck::Lambda) {
        report.extend(derivatives::derivative_report(n)?);
        let alpha = derivatives::lambda_alpha(n)?;
        let beta = derivatives::lambda_beta(n)?;
        result["lambda"] = json!({
            "alpha": frac(&alpha),
            "alpha_expected": frac(&derivatives::expected_lambda_alpha(n)),
            "alpha_passed": alpha == derivatives::expected_lambda_alpha(n),
            "beta": frac(&beta),
            "beta_expected": frac(&derivatives::expected_lambda_beta(n)),
            "beta_passed": beta == derivatives::expected_lambda_beta(n),
        });
        result["worksheet"] = serde_json::to_value(derivatives::DerivativeWorksheet::build(n)?)?;
    }
    if want(TqCheck::Hyper) {
        report.extend(checks::hypergeometric_check(n)?);
    }
    if want(TqCheck::Recurrences) {
        report.extend(checks::recurrence_check(a.nmax.unwrap_or(n.max(3)))?);
    }
    if want(TqCheck::Bethe) {
        report.extend(bethe::lambda_from_roots(n)?);
        result["bethe"] = serde_json::to_value(bethe::bethe_roots(n)?)?;
    }
    let passed = report.all_passed();
    result["checks"] = serde_json::to_value(&report.checks)?;
    result["passed"] = json!(passed);
    Ok((result, passed))
}

/// Largest chain for the dense TL check on the full spin space.
const TL_CHECK_MAX: usize = 8;

pub fn xxz_cmd(a: &XxzArgs) -> Result<Outcome> {
    let l = a.length;
    let params = bridge_params(l, a.alpha, a.beta)?;
    let g = ground_state(&build_xxz(&params)?, &LanczosOptions::default())?;
    let bridge = lambda_bridge(l, a.alpha, a.beta)?;
    let mut passed = bridge.difference < BRIDGE_TOLERANCE;
    let at_origin = a.alpha == 0.0 && a.beta == 0.0;
    let expected = -0.75 * l as f64;
    if at_origin {
        passed &= (g.energy - expected).abs() < 1e-10;
    }
    let tl = if l <= TL_CHECK_MAX {
        let q = num_complex::Complex64::from_polar(1.0, (-params.delta_aniso).acos());
        let r = check_tl(l, q, params.twist)?;
        passed &= r.passed(TL_TOLERANCE);
        json!({ "passed": r.passed(TL_TOLERANCE), "report": r })
    } else {
        Value::Null
    };
    let result = json!({
        "length": l,
        "alpha": a.alpha,
        "beta": a.beta,
        "params": params,
        "energy": g.energy,
        "energy_residual": g.residual,
        "expected_energy": at_origin.then_some(expected),
        "lambda_bridge": bridge,
        "tl_checks": tl,
        "passed": passed,
    });
    Ok((result, passed))
}
