//! The FSZ solution of the T-Q equation at the combinatorial point.
//!
//! `f_Q(x) = (1+x)^{2N} Q(x)` and `f_P(x) = (1+x)^{2N} P(x)` have explicit
//! coefficients in terms of Pochhammer symbols of thirds. `T(x) = (1+x)^{2N}`
//! and `φ(x) = (1−x)^{2N}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_n, Result, TqError};
use crate::poly::RatPoly;
use crate::qfield::rat;

/// Rising factorial `(a)_n = a(a+1)…(a+n−1)`.
pub fn pochhammer(a: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, i| {
        acc * (a + BigRational::from_integer(i.into()))
    })
}

/// `Π_{k=1}^{n} (a − k)`, which equals `Γ(a)/Γ(a−n)`.
pub fn falling_product(a: &BigRational, n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| {
        acc * (a - BigRational::from_integer(k.into()))
    })
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn fact_r(n: usize) -> BigRational {
    BigRational::from_integer(factorial(n))
}

fn third(num: i64) -> BigRational {
    rat(num, 3)
}

fn monic(mut c: Vec<BigRational>) -> RatPoly {
    let lc = c.last().cloned().expect("nonempty");
    for x in &mut c {
        *x = &*x / &lc;
    }
    RatPoly::new(c)
}

/// Coefficients of `f_Q` before normalisation to a monic polynomial.
pub(crate) fn f_q_raw(n: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); 3 * n + 1];
    for k in 0..=n {
        let kk = BigRational::from_integer(k.into());
        let d = pochhammer(&(third(2) - &kk), n) * fact_r(n - k) * fact_r(k);
        c[3 * k] = d.recip();
    }
    for k in 0..n {
        let kk = BigRational::from_integer(k.into());
        let d = pochhammer(&(-kk - third(2)), n + 1) * fact_r(n - k - 1) * fact_r(k);
        c[3 * k + 2] = d.recip();
    }
    c
}

pub fn f_q_poly(n: usize) -> Result<RatPoly> {
    check_n(n, 1)?;
    Ok(monic(f_q_raw(n)))
}

pub fn f_p_poly(n: usize) -> Result<RatPoly> {
    check_n(n, 1)?;
    let mut c = vec![BigRational::zero(); 3 * n + 1];
    let nn = BigRational::from_integer(n.into());
    for k in 0..=n {
        let kk = BigRational::from_integer(k.into());
        let d = pochhammer(&(&kk - &nn + third(2)), n) * fact_r(k) * fact_r(n - k);
        c[3 * k] = d.recip();
    }
    for k in 0..n {
        let kk = BigRational::from_integer(k.into());
        let d = pochhammer(&(&kk - &nn + third(1)), n + 1) * fact_r(k) * fact_r(n - k - 1);
        c[3 * k + 1] = d.recip();
    }
    Ok(monic(c))
}

/// `Q = f_Q / (1+x)^{2N}`; fails if the division is inexact.
pub fn q_poly(n: usize) -> Result<RatPoly> {
    f_q_poly(n)?.div_one_plus_x_pow(2 * n)
}

pub fn p_poly(n: usize) -> Result<RatPoly> {
    f_p_poly(n)?.div_one_plus_x_pow(2 * n)
}

fn binomial_poly(n: usize, sign: i64) -> RatPoly {
    RatPoly::new(vec![rat(1, 1), rat(sign, 1)]).pow(2 * n as u32)
}

/// `T(x) = (1+x)^{2N}`.
pub fn t_poly(n: usize) -> RatPoly {
    binomial_poly(n, 1)
}

/// `φ(x) = (1−x)^{2N}`.
pub fn phi_poly(n: usize) -> RatPoly {
    binomial_poly(n, -1)
}

/// `x^N Q(1/x) / Q(0)`, the dual of a degree-`N` polynomial.
pub fn dual(q: &RatPoly) -> Result<RatPoly> {
    let q0 = q.coeff(0);
    if q0.is_zero() {
        return Err(TqError::DivisionByZero);
    }
    let mut c = q.coeffs().to_vec();
    c.reverse();
    Ok(RatPoly::new(c).scale(&q0.recip()))
}
