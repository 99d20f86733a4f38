use proptest::prelude::*;
use rpm_tq::checks::{tq_residual, FszData};
use rpm_tq::{rat, QFieldElement, QPoly};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutated_q_breaks_tq(n in 1usize..6, k in 0usize..6, num in -20i64..20, den in 1i64..9) {
        prop_assume!(num != 0);
        let d = FszData::new(n).unwrap();
        let k = k % n;
        let mut c = d.q.coeffs().to_vec();
        c[k] = &c[k] + &QFieldElement::rational(rat(num, den));
        let bad = QPoly::new(c);
        prop_assert!(!tq_residual(&bad, &d.t, &d.phi, &QFieldElement::q()).is_zero());
    }

    #[test]
    fn mutated_t_breaks_tq(n in 1usize..6, k in 0usize..13, num in -20i64..20) {
        prop_assume!(num != 0);
        let d = FszData::new(n).unwrap();
        let k = k % (2 * n + 1);
        let mut c = d.t.coeffs().to_vec();
        c[k] = &c[k] + &QFieldElement::int(num);
        let bad_t = QPoly::new(c);
        prop_assert!(!tq_residual(&d.q, &bad_t, &d.phi, &QFieldElement::q()).is_zero());
    }

    #[test]
    fn wrong_twist_breaks_tq(n in 1usize..6) {
        let d = FszData::new(n).unwrap();
        prop_assert!(!tq_residual(&d.q, &d.t, &d.phi, &QFieldElement::q_inv()).is_zero());
    }
}
