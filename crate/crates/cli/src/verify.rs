//! The cross-module verification matrix.

use std::collections::BTreeMap;

use anyhow::Result;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use rpm_core::formulas::{
    drift_diamond_formula, drift_global_formula, expected_peaks_formula, prob_omega_formula,
};
use rpm_core::{
    fraction_string as frac, observables, scgf, scgf_derivatives, stationary_distribution,
    DeformedParams, SolverOptions, StateSpace, StationaryObservables,
};
use rpm_tq::derivatives::{expected_lambda_alpha, expected_lambda_beta, lambda_alpha, lambda_beta};
use rpm_xxz::bridge::{lambda_bridge, BRIDGE_TOLERANCE};
use rpm_xxz::{build_xxz, ground_state, LanczosOptions, XXZParams};

use crate::args::VerifyArgs;
use crate::commands::DERIVATIVE_RTOL;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub key: String,
    pub quantity: String,
    pub value: String,
    pub expected: String,
    pub passed: bool,
}

fn exact_row(key: String, quantity: &str, value: &BigRational, expected: &BigRational) -> Row {
    Row {
        key,
        quantity: quantity.to_string(),
        value: frac(value),
        expected: frac(expected),
        passed: value == expected,
    }
}

fn float_row(key: String, quantity: &str, value: f64, expected: f64, passed: bool) -> Row {
    Row {
        key,
        quantity: quantity.to_string(),
        value: format!("{value:.15e}"),
        expected: format!("{expected:.15e}"),
        passed,
    }
}

const BRIDGE_LENGTHS: [usize; 3] = [4, 6, 8];
const BRIDGE_GRID: [f64; 3] = [-0.1, 0.0, 0.1];
const XXZ_MAX_LENGTH: usize = 14;

pub fn verify_rows(a: &VerifyArgs) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let mut exact: BTreeMap<usize, StationaryObservables> = BTreeMap::new();
    let opts = SolverOptions::default();

    for l in (2..=a.lmax).step_by(2) {
        let space = StateSpace::build(l)?;
        let pi = stationary_distribution(l)?;
        let mut obs = observables(&space, &pi);
        if a.inject_sign_flip && l == 4 {
            obs.expected_peaks = -obs.expected_peaks;
        }
        let k = |s: &str| format!("1-stationary/L{l:02}/{s}");
        rows.push(exact_row(k("a"), &format!("L={l} E[peaks]"), &obs.expected_peaks, &expected_peaks_formula(l)));
        rows.push(exact_row(k("b"), &format!("L={l} P(global)"), &obs.prob_omega_global, &prob_omega_formula(l)));
        rows.push(exact_row(k("c"), &format!("L={l} J_diamond"), &obs.drift_diamond, &drift_diamond_formula(l)));
        rows.push(exact_row(k("d"), &format!("L={l} J_global"), &obs.drift_global, &drift_global_formula(l)));
        let sum = &obs.drift_diamond + &obs.expected_peaks;
        rows.push(exact_row(
            k("e"),
            &format!("L={l} J_diamond + E[peaks]"),
            &sum,
            &BigRational::from_integer(l.into()),
        ));

        let k = |s: &str| format!("2-scgf/L{l:02}/{s}");
        let lam0 = scgf(&space, DeformedParams::new(0.0, 0.0), &opts)?.lambda;
        rows.push(float_row(k("a"), &format!("L={l} Λ(0,0)"), lam0, 0.0, lam0.abs() < 1e-12));
        let (da, db) = scgf_derivatives(&space, 1e-3, &opts)?;
        for (s, name, got, want) in [
            ("b", "∂Λ/∂α", da, drift_global_formula(l)),
            ("c", "∂Λ/∂β", db, drift_diamond_formula(l)),
        ] {
            let w = want.to_f64().unwrap_or(f64::NAN);
            let ok = ((got - w) / w).abs() < DERIVATIVE_RTOL;
            rows.push(float_row(k(s), &format!("L={l} {name}"), got, w, ok));
        }
        exact.insert(l, obs);
    }

    for n in 1..=a.nmax {
        let k = |s: &str| format!("3-tq/N{n:02}/{s}");
        let la = lambda_alpha(n)?;
        let lb = lambda_beta(n)?;
        rows.push(exact_row(k("a"), &format!("N={n} ∂Λ/∂α"), &la, &expected_lambda_alpha(n)));
        rows.push(exact_row(k("b"), &format!("N={n} ∂Λ/∂β"), &lb, &expected_lambda_beta(n)));
        if let Some(obs) = exact.get(&(2 * n)) {
            rows.push(exact_row(k("c"), &format!("N={n} ∂Λ/∂α = stationary J_global"), &la, &obs.drift_global));
            rows.push(exact_row(k("d"), &format!("N={n} ∂Λ/∂β = stationary J_diamond"), &lb, &obs.drift_diamond));
        }
    }

    if !a.no_xxz {
        for l in (4..=a.lmax.min(XXZ_MAX_LENGTH)).step_by(2) {
            let h = build_xxz(&XXZParams::combinatorial(l))?;
            let g = ground_state(&h, &LanczosOptions::default())?;
            let want = -0.75 * l as f64;
            rows.push(float_row(
                format!("4-xxz/L{l:02}/a"),
                &format!("L={l} E₀"),
                g.energy,
                want,
                (g.energy - want).abs() < 1e-10,
            ));
        }
        for l in BRIDGE_LENGTHS.into_iter().filter(|&l| l <= a.lmax) {
            let mut worst: f64 = 0.0;
            for al in BRIDGE_GRID {
                for be in BRIDGE_GRID {
                    worst = worst.max(lambda_bridge(l, al, be)?.difference);
                }
            }
            rows.push(float_row(
                format!("4-xxz/L{l:02}/b"),
                &format!("L={l} max |Λ_XXZ − Λ_SCGF| on 3×3 grid"),
                worst,
                0.0,
                worst < BRIDGE_TOLERANCE,
            ));
        }
    }
    rows.sort_by(|x, y| x.key.cmp(&y.key));
    Ok(rows)
}

pub fn table(rows: &[Row]) -> String {
    let w = rows.iter().map(|r| r.quantity.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|r| {
            let pad = w - r.quantity.chars().count();
            format!(
                "{} {}{}  {:>24}  {:>24}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.quantity,
                " ".repeat(pad),
                r.value,
                r.expected
            )
        })
        .collect()
}
