use rpm_tq::checks::*;
use rpm_tq::{rat, QFieldElement, Report};

fn assert_all(r: &Report, what: &str) {
    let bad: Vec<_> = r.failures().map(|c| format!("{} {:?}", c.name, c.detail)).collect();
    assert!(bad.is_empty(), "{what}: {bad:?}");
}

#[test]
fn structure_up_to_20() {
    for n in 1..=20 {
        assert_all(&verify_structure(n).unwrap(), &format!("N={n}"));
    }
}

#[test]
fn tq_relation_up_to_20() {
    for n in 1..=20 {
        assert_all(&verify_tq(n).unwrap(), &format!("N={n}"));
    }
}

#[test]
fn wronskians_up_to_20() {
    for n in 1..=20 {
        assert_all(&verify_wronskian(n).unwrap(), &format!("N={n}"));
    }
}

#[test]
fn t_of_q_small() {
    // (1−q)²(−q⁻¹) = 1
    let q = QFieldElement::q();
    let lhs = (QFieldElement::int(1) - q.clone()).pow(2) * -q.inv();
    assert_eq!(lhs, QFieldElement::int(1));
    assert!(t_of_q_identity(1));
}

#[test]
fn boundary_values_up_to_20() {
    for n in 1..=20 {
        assert_all(&boundary_values(n).unwrap(), &format!("N={n}"));
    }
}

#[test]
fn boundary_values_from_2_to_20() {
    for n in 2..=20 {
        assert_all(&boundary_values(n).unwrap(), &format!("N={n}"));
    }
}

#[test]
fn boundary_examples_n1() {
    let t = boundary_table(1).unwrap();
    let get = |name: &str| t.iter().find(|e| e.name == name).unwrap().clone();
    assert_eq!(get("Q(−1)").direct, QFieldElement::rational(rat(-3, 2)));
    let e = get("Q(q⁻¹)");
    assert_eq!(e.direct, QFieldElement::new(rat(1, 2), rat(-1, 1)));
    assert!(e.passed);
    // −(1+q)/(2(1−q)) is the same element.
    let q = QFieldElement::q();
    let alt = -(QFieldElement::int(1) + q.clone()) / (QFieldElement::int(2) * (QFieldElement::int(1) - q));
    assert_eq!(e.direct, alt);
    assert_eq!(get("P(−1)").direct, QFieldElement::int(-3));
    assert_eq!(get("P'(−1)").direct, QFieldElement::int(1));
}

#[test]
fn hypergeometric_up_to_20() {
    for n in 1..=20 {
        assert_all(&hypergeometric_check(n).unwrap(), &format!("N={n}"));
    }
}

#[test]
fn recurrences_up_to_30() {
    assert_all(&recurrence_check(30).unwrap(), "N_max=30");
}

#[test]
fn recurrence_needs_three() {
    assert!(recurrence_check(2).is_err());
}

#[test]
fn chu_vandermonde_small() {
    // ₂F₁(−1, b; c; 1) = 1 − b/c
    assert_eq!(chu_vandermonde(1, &rat(1, 3), &rat(2, 3)), rat(1, 2));
}
