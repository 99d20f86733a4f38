use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rpm_core::formulas::{
    drift_diamond_formula, drift_global_formula, expected_peaks_formula, htsasm_count,
    prob_omega_formula,
};
use rpm_core::{observables, stationary_with, KernelMethod, StateSpace};

fn check(l: usize) {
    let t0 = Instant::now();
    let space = StateSpace::build(l).unwrap();
    let pi = stationary_with(&space, KernelMethod::Auto).unwrap();
    let o = observables(&space, &pi);
    assert_eq!(o.expected_peaks, expected_peaks_formula(l), "peaks L={l}");
    assert_eq!(o.prob_omega_global, prob_omega_formula(l), "omega L={l}");
    assert_eq!(o.drift_diamond, drift_diamond_formula(l), "J◊ L={l}");
    assert_eq!(o.drift_global, drift_global_formula(l), "J⟲ L={l}");
    assert!(o.tile_balance_holds(l));
    assert!(pi.min_integer().is_one(), "smallest integer entry L={l}");
    assert_eq!(Some(pi.integer_sum.clone()), htsasm_count(l), "integer sum L={l}");
    assert_ne!(Some(pi.doubled_integer_sum()), htsasm_count(l));
    eprintln!("L={l}: dim {} via {:?} in {:?}", space.dim(), pi.method, t0.elapsed());
}

#[test]
fn stationary_values_up_to_10() {
    for l in [2, 4, 6, 8, 10] {
        check(l);
    }
}

#[test]
fn stationary_values_at_12() {
    check(12);
}

#[test]
fn integer_form_l4() {
    let space = StateSpace::build(4).unwrap();
    let pi = stationary_with(&space, KernelMethod::Bareiss).unwrap();
    assert_eq!(pi.integer_sum, BigInt::from(10));
    assert!(pi.integer_form.iter().all(|k| k >= &BigInt::one()));
}
