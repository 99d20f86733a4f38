use rpm_tq::bethe::*;
use rpm_tq::QFieldElement;

#[test]
fn roots_up_to_12() {
    for n in 1..=12 {
        let b = bethe_roots(n).unwrap();
        assert_eq!(b.roots.len(), n);
        assert!(b.bae_residual < 1e-8, "N={n}: {}", b.bae_residual);
        assert!((b.z_product - 1.0).norm() < 1e-10, "N={n}: {}", b.z_product);
    }
}

#[test]
fn lambda_exactly_zero_up_to_20() {
    for n in 1..=20 {
        assert_eq!(lambda_exact(n).unwrap(), QFieldElement::int(0), "N={n}");
    }
}

#[test]
fn energy_up_to_12() {
    for n in 1..=12 {
        let e = e_xxz(&bethe_roots(n).unwrap());
        assert!((e + 1.5 * n as f64).abs() < 1e-10, "N={n}: {e}");
    }
}

#[test]
fn reports_pass_up_to_12() {
    for n in 1..=12 {
        let r = lambda_from_roots(n).unwrap();
        assert!(r.all_passed(), "N={n}: {:?}", r.failures().collect::<Vec<_>>());
    }
}
