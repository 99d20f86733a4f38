use rpm_tq::derivatives::*;

#[test]
fn lambda_alpha_up_to_20() {
    for n in 1..=20 {
        assert_eq!(lambda_alpha(n).unwrap(), expected_lambda_alpha(n), "N={n}");
    }
}

#[test]
fn lambda_beta_up_to_20() {
    for n in 1..=20 {
        assert_eq!(lambda_beta(n).unwrap(), expected_lambda_beta(n), "N={n}");
    }
}

#[test]
fn worksheet_up_to_10() {
    for n in 1..=10 {
        let r = derivative_report(n).unwrap();
        let bad: Vec<_> = r.failures().map(|c| format!("{} {:?}", c.name, c.detail)).collect();
        assert!(bad.is_empty(), "N={n}: {bad:?}");
    }
}

#[test]
fn worksheet_serializes_fractions() {
    let w = DerivativeWorksheet::build(2).unwrap();
    let v = serde_json::to_value(&w).unwrap();
    assert!(v["u_b"]["a"].as_str().unwrap().contains('/'));
}
