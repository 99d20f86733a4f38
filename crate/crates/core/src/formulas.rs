//! Closed-form stationary values and the half-turn symmetric ASM count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

fn frac(num: i128, den: i128) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `E n^△ = 3L³ / (8(L² − 1))`.
pub fn expected_peaks_formula(length: usize) -> BigRational {
    let l = length as i128;
    frac(3 * l * l * l, 8 * (l * l - 1))
}

/// `P(Ω_⟲) = 3L / (4(L² − 1))`.
pub fn prob_omega_formula(length: usize) -> BigRational {
    let l = length as i128;
    frac(3 * l, 4 * (l * l - 1))
}

/// `J^◊ = L(5L² − 8) / (8(L² − 1))`.
pub fn drift_diamond_formula(length: usize) -> BigRational {
    let l = length as i128;
    frac(l * (5 * l * l - 8), 8 * (l * l - 1))
}

/// `J^⟲ = 3L / (4(L² − 1))`.
pub fn drift_global_formula(length: usize) -> BigRational {
    prob_omega_formula(length)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Half-turn symmetric ASMs of even order `2n`: `A(n) · CSPP(n)`, with
/// `A(n) = Π_{k<n} (3k+1)!/(n+k)!` and `CSPP(n) = Π_{i<n} (3i+2)(3i)!/(n+i)!`.
pub fn htsasm_count(order: usize) -> Option<BigInt> {
    if !order.is_multiple_of(2) {
        return None;
    }
    let n = (order / 2) as u64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..n {
        num *= factorial(3 * k + 1);
        den *= factorial(n + k);
        num *= factorial(3 * k) * (3 * k + 2);
        den *= factorial(n + k);
    }
    Some(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(expected_peaks_formula(2), frac(1, 1));
        assert_eq!(expected_peaks_formula(4), frac(8, 5));
        assert_eq!(expected_peaks_formula(6), frac(81, 35));
        assert_eq!(prob_omega_formula(6), frac(9, 70));
        assert_eq!(drift_diamond_formula(8), frac(104, 21));
        assert_eq!(drift_global_formula(8), frac(2, 21));
    }

    #[test]
    fn htsasm_sequence() {
        let got: Vec<BigInt> = (1..=6).map(|n| htsasm_count(2 * n).unwrap()).collect();
        let want: Vec<BigInt> = [2u64, 10, 140, 5544, 622908, 198846076]
            .iter()
            .map(|&v| v.into())
            .collect();
        assert_eq!(got, want);
    }
}
