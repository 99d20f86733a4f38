//! The quadratic field `Q(q)` with `q² = q − 1`.
//!
//! `q` is a primitive sixth root of unity: `q³ = −1`, `q⁻¹ = 1 − q`. The
//! complex embedding sends `q` to `1/2 + i√3/2`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Result, TqError};

/// `a + b·q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFieldElement {
    pub a: BigRational,
    pub b: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl QFieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn q() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn q_inv() -> Self {
        Self::new(BigRational::one(), -BigRational::one())
    }

    /// `q^n` for any integer `n`, using `q⁶ = 1`.
    pub fn q_pow(n: i64) -> Self {
        let mut r = Self::one();
        for _ in 0..n.rem_euclid(6) {
            r = r * Self::q();
        }
        r
    }

    /// Galois conjugate `q ↦ q⁻¹`.
    pub fn conj(&self) -> Self {
        Self::new(&self.a + &self.b, -self.b.clone())
    }

    /// `x · conj(x) = a² + ab + b²`, a rational.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn try_inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(TqError::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::new(c.a / &n, c.b / n))
    }

    /// Panics on zero; use [`try_inv`](Self::try_inv) for fallible code.
    pub fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero in Q(q)")
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut r = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                r *= &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c)
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a + 0.5 * b, b * 3f64.sqrt() / 2.0)
    }
}

impl Zero for QFieldElement {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QFieldElement {
    fn one() -> Self {
        Self::int(1)
    }
}

impl From<BigRational> for QFieldElement {
    fn from(a: BigRational) -> Self {
        Self::rational(a)
    }
}

impl From<i64> for QFieldElement {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<BigInt> for QFieldElement {
    fn from(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }
}

impl fmt::Debug for QFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}q", self.b)
        } else {
            write!(f, "{} + {}q", self.a, self.b)
        }
    }
}

impl<'a> Add<&'a QFieldElement> for &'a QFieldElement {
    type Output = QFieldElement;
    fn add(self, o: &QFieldElement) -> QFieldElement {
        QFieldElement::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a QFieldElement> for &'a QFieldElement {
    type Output = QFieldElement;
    fn sub(self, o: &QFieldElement) -> QFieldElement {
        QFieldElement::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a QFieldElement> for &'a QFieldElement {
    type Output = QFieldElement;
    fn mul(self, o: &QFieldElement) -> QFieldElement {
        // (a + bq)(c + dq) = ac − bd + (ad + bc + bd) q
        let bd = &self.b * &o.b;
        QFieldElement::new(
            &self.a * &o.a - &bd,
            &self.a * &o.b + &self.b * &o.a + bd,
        )
    }
}

impl Neg for QFieldElement {
    type Output = QFieldElement;
    fn neg(self) -> QFieldElement {
        QFieldElement::new(-self.a, -self.b)
    }
}

impl Neg for &QFieldElement {
    type Output = QFieldElement;
    fn neg(self) -> QFieldElement {
        QFieldElement::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QFieldElement> for QFieldElement {
            type Output = QFieldElement;
            fn $m(self, o: QFieldElement) -> QFieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QFieldElement> for QFieldElement {
            type Output = QFieldElement;
            fn $m(self, o: &QFieldElement) -> QFieldElement {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QFieldElement> for &'a QFieldElement {
            type Output = QFieldElement;
            fn $m(self, o: QFieldElement) -> QFieldElement {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Div<QFieldElement> for QFieldElement {
    type Output = QFieldElement;
    fn div(self, o: QFieldElement) -> QFieldElement {
        self * o.inv()
    }
}

impl Div<&QFieldElement> for QFieldElement {
    type Output = QFieldElement;
    fn div(self, o: &QFieldElement) -> QFieldElement {
        self * o.inv()
    }
}

impl<'a> Div<&'a QFieldElement> for &'a QFieldElement {
    type Output = QFieldElement;
    fn div(self, o: &QFieldElement) -> QFieldElement {
        self * o.inv()
    }
}

impl AddAssign<&QFieldElement> for QFieldElement {
    fn add_assign(&mut self, o: &QFieldElement) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&QFieldElement> for QFieldElement {
    fn sub_assign(&mut self, o: &QFieldElement) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&QFieldElement> for QFieldElement {
    fn mul_assign(&mut self, o: &QFieldElement) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(a: i64, b: i64) -> QFieldElement {
        QFieldElement::new(rat(a, 1), rat(b, 1))
    }

    #[test]
    fn root_of_unity_relations() {
        let q = QFieldElement::q();
        assert_eq!(&q * &q, &q - &QFieldElement::one());
        assert_eq!(q.inv(), QFieldElement::q_inv());
        assert_eq!(q.pow(3), QFieldElement::int(-1));
        assert_eq!(q.pow(6), QFieldElement::one());
        assert_eq!(q.pow(-2), QFieldElement::q_pow(4));
        // 2q − 1 = q − q⁻¹ squares to −3.
        let s = &q - &q.inv();
        assert_eq!(s, el(-1, 2));
        assert_eq!(&s * &s, QFieldElement::int(-3));
        // q + q⁻¹ = 1 at the stochastic point.
        assert_eq!(&q + &q.inv(), QFieldElement::one());
    }

    #[test]
    fn embedding() {
        let z = QFieldElement::q().to_complex();
        assert!((z - Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn field_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let x = el(a, b);
            let y = el(c, d);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert!((&x * &x.conj()).is_rational());
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv(), QFieldElement::one());
                prop_assert_eq!(&(&x * &y) / &x, y.clone());
            }
            let emb = (&x * &y).to_complex() - x.to_complex() * y.to_complex();
            prop_assert!(emb.norm() < 1e-9);
        }
    }
}
