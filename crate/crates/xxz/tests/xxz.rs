use num_complex::Complex64;
use rpm_xxz::bridge::*;
use rpm_xxz::hamiltonian::conserves_magnetization;
use rpm_xxz::spin::TL_TOLERANCE;
use rpm_xxz::*;

#[test]
fn tl_relations_stochastic_point() {
    for l in [4, 6, 8] {
        let q = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let u = XXZParams::combinatorial(l).twist;
        let r = check_tl(l, q, u).unwrap();
        assert!((r.two_q - 1.0).norm() < 1e-15 && (r.kappa - 1.0).norm() < 1e-12);
        assert!(r.passed(TL_TOLERANCE), "{r:?}");
    }
}

#[test]
fn tl_relations_generic_parameters() {
    for l in [4, 6, 8] {
        let r = check_tl(l, Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, 0.31)).unwrap();
        assert!(r.passed(TL_TOLERANCE), "{r:?}");
    }
}

#[test]
fn ground_energy_4_to_14() {
    for l in (4..=14).step_by(2) {
        let h = build_xxz(&XXZParams::combinatorial(l)).unwrap();
        let g = ground_state(&h, &LanczosOptions::default()).unwrap();
        assert!(g.residual < 1e-10);
        assert!((g.energy + 0.75 * l as f64).abs() < 1e-10, "L={l}: {}", g.energy);
    }
}

#[test]
fn lanczos_is_the_dense_minimum_l4() {
    assert!(dense_ground_error(&XXZParams::combinatorial(4)).unwrap() < 1e-10);
}

#[test]
fn twist_conventions_share_spectrum_l4() {
    assert!(twist_equivalence_error(&XXZParams::combinatorial(4)).unwrap() < 1e-12);
    let p = XXZParams::new(4, -0.3, Complex64::from_polar(1.0, 0.4));
    assert!(twist_equivalence_error(&p).unwrap() < 1e-12);
}

#[test]
fn generator_equals_minus_h_shifted() {
    for l in [4, 6, 8] {
        assert!(rho_l_star_error(l).unwrap() < 1e-12, "L={l}");
    }
}

#[test]
fn sector_structure_and_hermiticity() {
    for l in [4, 6, 8] {
        let p = XXZParams::combinatorial(l);
        assert!(conserves_magnetization(&p).unwrap());
        assert!(build_xxz(&p).unwrap().hermiticity_error() < 1e-13);
    }
}

#[test]
fn bridge_at_stochastic_point() {
    let r = lambda_bridge(4, 0.0, 0.0).unwrap();
    assert!(r.lambda_xxz.abs() < 1e-9 && r.difference < 1e-9, "{r:?}");
}

#[test]
fn bridge_examples_l6() {
    for (a, b) in [(0.1, 0.0), (0.0, 0.1)] {
        let r = lambda_bridge(6, a, b).unwrap();
        assert!(r.difference < BRIDGE_TOLERANCE, "{r:?}");
    }
}

#[test]
fn bridge_grid() {
    for l in [4, 6, 8] {
        for a in [-0.1, 0.0, 0.1] {
            for b in [-0.1, 0.0, 0.1] {
                let r = lambda_bridge(l, a, b).unwrap();
                assert!(r.difference < BRIDGE_TOLERANCE, "{r:?}");
            }
        }
    }
}
