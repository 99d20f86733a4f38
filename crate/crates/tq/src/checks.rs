//! Exact identity checks for the FSZ polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{check_n, Result};
use crate::fsz::{
    dual, f_p_poly, f_q_poly, f_q_raw, factorial, falling_product, p_poly, phi_poly, pochhammer,
    q_poly, t_poly,
};
use crate::poly::{QPoly, RatPoly};
use crate::qfield::{rat, QFieldElement as K};
use crate::report::Report;

/// The polynomials for one `N`, rational and lifted to `Q(q)`.
#[derive(Debug, Clone)]
pub struct FszData {
    pub n: usize,
    pub f_q: RatPoly,
    pub f_p: RatPoly,
    pub q: QPoly,
    pub p: QPoly,
    pub t: QPoly,
    pub phi: QPoly,
}

impl FszData {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n, 1)?;
        Ok(Self {
            n,
            f_q: f_q_poly(n)?,
            f_p: f_p_poly(n)?,
            q: q_poly(n)?.lift(),
            p: p_poly(n)?.lift(),
            t: t_poly(n).lift(),
            phi: phi_poly(n).lift(),
        })
    }
}

pub(crate) fn q() -> K {
    K::q()
}

pub(crate) fn qp(n: i64) -> K {
    K::q_pow(n)
}

/// `q − q⁻¹`.
pub(crate) fn s() -> K {
    q() - K::q_inv()
}

fn nonzero_exponents(p: &QPoly) -> Option<String> {
    let sup = p.support();
    (!sup.is_empty()).then(|| format!("nonzero coefficients at exponents {sup:?}"))
}

/// Degree, support and duality of the FSZ polynomials.
pub fn verify_structure(n: usize) -> Result<Report> {
    let d = FszData::new(n)?;
    let q_rat = q_poly(n)?;
    let p_rat = p_poly(n)?;
    let mut r = Report::default();
    let f_ok = |f: &RatPoly, allowed: [usize; 2]| {
        f.degree() == Some(3 * n)
            && f.leading().is_some_and(One::is_one)
            && f.support().iter().all(|e| allowed.contains(&(e % 3)))
    };
    r.pass("f_Q degree 3N, monic, exponents 0 or 2 mod 3", f_ok(&d.f_q, [0, 2]));
    r.pass("f_P degree 3N, monic, exponents 0 or 1 mod 3", f_ok(&d.f_p, [0, 1]));
    r.pass(
        "deg Q = deg P = N, Q monic",
        q_rat.degree() == Some(n) && p_rat.degree() == Some(n) && q_rat.leading().is_some_and(One::is_one),
    );
    r.pass("Q(0) ≠ 0", !q_rat.coeff(0).is_zero());
    r.pass("P(x) = x^N Q(1/x) / Q(0)", dual(&q_rat).ok().as_ref() == Some(&p_rat));
    Ok(r)
}

/// `−T(x)Y(x) + u^N φ(x/q) Y(q²x) + u^{−N} φ(qx) Y(q⁻²x)`.
pub fn tq_residual(y: &QPoly, t: &QPoly, phi: &QPoly, u_n: &K) -> QPoly {
    let a = &phi.compose_scale(&K::q_inv()) * &y.compose_scale(&qp(2));
    let b = &phi.compose_scale(&q()) * &y.compose_scale(&qp(-2));
    let rhs = &a.scale(u_n) + &b.scale(&u_n.inv());
    &rhs - &(t * y)
}

/// T-Q relation for `Q` (`u^N = q`) and its dual for `P` (`u^N = q⁻¹`).
pub fn verify_tq(n: usize) -> Result<Report> {
    let d = FszData::new(n)?;
    let mut r = Report::default();
    let rq = tq_residual(&d.q, &d.t, &d.phi, &q());
    r.push("T-Q relation", rq.is_zero(), nonzero_exponents(&rq));
    let rp = tq_residual(&d.p, &d.t, &d.phi, &K::q_inv());
    r.push("T-P relation", rp.is_zero(), nonzero_exponents(&rp));
    Ok(r)
}

/// `[a^k Q(a x) P(x/a) − a^{−k} Q(x/a) P(a x)] / (q − q⁻¹)` with `a = q^k`.
fn wronskian(q_: &QPoly, p: &QPoly, k: i64) -> QPoly {
    let a = qp(k);
    let ai = qp(-k);
    let w = &(&q_.compose_scale(&a) * &p.compose_scale(&ai)).scale(&a)
        - &(&q_.compose_scale(&ai) * &p.compose_scale(&a)).scale(&ai);
    w.scale(&s().inv())
}

pub fn verify_wronskian(n: usize) -> Result<Report> {
    let d = FszData::new(n)?;
    let mut r = Report::default();
    let w1 = &wronskian(&d.q, &d.p, 1) - &d.phi;
    r.push("Wronskian (1−x)^{2N}", w1.is_zero(), nonzero_exponents(&w1));
    let w2 = &wronskian(&d.q, &d.p, 2) - &d.t;
    r.push("Wronskian (1+x)^{2N}", w2.is_zero(), nonzero_exponents(&w2));
    r.pass("T(q) identity", t_of_q_identity(n));
    Ok(r)
}

/// `(1−q²)^{2N} (−1/q)^N = (1+q)^{2N}`.
pub fn t_of_q_identity(n: usize) -> bool {
    let n = n as i64;
    let lhs = (K::one() - qp(2)).pow(2 * n) * (-K::q_inv()).pow(n);
    lhs == (K::one() + q()).pow(2 * n)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryEntry {
    pub name: &'static str,
    #[serde(serialize_with = "ser_k")]
    pub direct: K,
    #[serde(serialize_with = "ser_k")]
    pub closed_form: K,
    pub passed: bool,
}

pub(crate) fn ser_k<S: serde::Serializer>(x: &K, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("QFieldElement", 2)?;
    st.serialize_field("a", &format!("{}/{}", x.a.numer(), x.a.denom()))?;
    st.serialize_field("b", &format!("{}/{}", x.b.numer(), x.b.denom()))?;
    st.end()
}

fn k_rat(r: BigRational) -> K {
    K::rational(r)
}

fn k_int(n: i64) -> K {
    K::int(n)
}

/// Values of `Q, Q', Q'', P, P', P''` at `q⁻¹` and `−1` against the closed forms.
pub fn boundary_table(n: usize) -> Result<Vec<BoundaryEntry>> {
    let d = FszData::new(n)?;
    let ni = n as i64;
    let nk = k_int(ni);
    let qi = K::q_inv();
    let one = K::one();
    let m1 = k_int(-1);
    let two_n_m1 = k_int(2 * ni - 1);
    let lead = BigRational::new(factorial(2 * n - 1), factorial(n - 1));
    let g13 = falling_product(&rat(1, 3), n).recip();
    let g23 = falling_product(&rat(2, 3), n).recip();

    let q_qi = k_rat(&lead * &g13) * (&one - &qp(-2)) / (&qi + &one).pow(2 * ni);
    let q1_qi = &nk * &(q() - &one) * (&nk * &(k_int(3) * q() - &one) - q() + &one)
        / (&two_n_m1 * &s())
        * &q_qi;
    let q2_qi = -(&nk
        * &(&nk * &(k_int(8 * (ni - 1)) * q() - k_int(5 * ni) + k_int(7)) + k_int(4) * (q() - &one)))
        / (k_int(2) * &two_n_m1 * (&one + &qi) * s())
        * &q_qi;
    let p_qi = k_rat(&lead * &g23) / (&qi + &one).pow(2 * ni - 1);
    let p1_qi = &nk * &(k_int(3 * ni - 2) * (&one - &qp(-2)) - k_int(2 * (2 * ni - 1)))
        / (&two_n_m1 * &(&qi + &one))
        * &p_qi;
    let one_m3q = &one - &(k_int(3) * q());
    let p2_qi = &nk
        * &(k_int(ni * ni) * (&one_m3q * &one_m3q) - &nk * &(q() + &one) * (k_int(9) * q() - k_int(7))
            + k_int(2) * (q() * (q() + k_int(2)) - &one))
        / (k_int(2) * &two_n_m1 * (&qi + &one).pow(2))
        * &p_qi;

    let base = BigRational::from_integer(BigInt::from(3).pow(2 * n as u32) * factorial(n))
        / BigRational::from_integer(factorial(2 * n));
    let q_m1 = &base / &g23;
    let p_m1 = &base / &g13;
    let two_n_p1 = BigRational::from_integer((2 * ni + 1).into());
    let big = |v: i64| BigRational::from_integer(v.into());
    let q1_m1 = -big(ni * (ni + 1)) / &two_n_p1 * &q_m1;
    let q2_m1 = big(ni * (ni - 1) * (3 * ni + 4)) / (big(6) * &two_n_p1) * &q_m1;
    let p1_m1 = -big(ni * ni) / &two_n_p1 * &p_m1;
    let p2_m1 = big(ni * (ni - 1) * (3 * ni - 2)) / (big(6) * &two_n_p1) * &p_m1;

    let (q0, q1, q2) = (&d.q, d.q.derivative(), d.q.nth_derivative(2));
    let (p0, p1, p2) = (&d.p, d.p.derivative(), d.p.nth_derivative(2));
    let rows: Vec<(&'static str, K, K)> = vec![
        ("Q(q⁻¹)", q0.eval(&qi), q_qi),
        ("Q'(q⁻¹)", q1.eval(&qi), q1_qi),
        ("Q''(q⁻¹)", q2.eval(&qi), q2_qi),
        ("P(q⁻¹)", p0.eval(&qi), p_qi),
        ("P'(q⁻¹)", p1.eval(&qi), p1_qi),
        ("P''(q⁻¹)", p2.eval(&qi), p2_qi),
        ("Q(−1)", q0.eval(&m1), k_rat(q_m1)),
        ("Q'(−1)", q1.eval(&m1), k_rat(q1_m1)),
        ("Q''(−1)", q2.eval(&m1), k_rat(q2_m1)),
        ("P(−1)", p0.eval(&m1), k_rat(p_m1)),
        ("P'(−1)", p1.eval(&m1), k_rat(p1_m1)),
        ("P''(−1)", p2.eval(&m1), k_rat(p2_m1)),
    ];
    Ok(rows
        .into_iter()
        .map(|(name, direct, closed_form)| BoundaryEntry {
            name,
            passed: direct == closed_form,
            direct,
            closed_form,
        })
        .collect())
}

/// Boundary table, Leibniz relation at `x = −1` and the product condition.
pub fn boundary_values(n: usize) -> Result<Report> {
    let d = FszData::new(n)?;
    let mut r = Report::default();
    for e in boundary_table(n)? {
        let detail = (!e.passed).then(|| format!("direct {} vs closed form {}", e.direct, e.closed_form));
        r.push(format!("boundary {}", e.name), e.passed, detail);
    }

    let m1 = rat(-1, 1);
    let q_rat = q_poly(n)?;
    let p_rat = p_poly(n)?;
    for (label, y, f) in [("Q", &q_rat, &d.f_q), ("P", &p_rat, &d.f_p)] {
        let ok = (0..=2).all(|k| {
            let lhs = y.nth_derivative(k).eval(&m1);
            let rhs = BigRational::new(factorial(k), factorial(2 * n + k))
                * f.nth_derivative(2 * n + k).eval(&m1);
            lhs == rhs
        });
        r.pass(format!("Leibniz relation for {label}, k = 0,1,2"), ok);
    }

    // Π z_i = 1 with z = u(x−q)/(1−qx) and u^N = q.
    let qq = d.q.eval(&q());
    let lhs = d.q.eval(&K::q_inv()) / qq;
    let sign = if n.is_multiple_of(2) { K::one() } else { k_int(-1) };
    let rhs = sign * qp(1 - n as i64);
    let detail = (lhs != rhs).then(|| format!("Q(q⁻¹)/Q(q) = {lhs}, expected {rhs}"));
    r.push("product condition Q(q⁻¹)/Q(q) = (−1)^N q^{1−N}", lhs == rhs, detail);
    Ok(r)
}

/// Terminating `₂F₁(−m, b; c; z)` summed term by term.
fn hyp2f1_terminating(m: usize, b: &BigRational, c: &BigRational, z: &K) -> K {
    let mut sum = K::zero();
    let mut term = K::one();
    let a = -BigRational::from_integer(m.into());
    for j in 0..=m {
        sum += &term;
        let jj = BigRational::from_integer(j.into());
        let ratio = (&a + &jj) * (b + &jj) / ((c + &jj) * (&jj + BigRational::one()));
        term = term.scale(&ratio) * z;
    }
    sum
}

/// Chu–Vandermonde: `₂F₁(−m, b; c; 1) = (c−b)_m / (c)_m`.
pub fn chu_vandermonde(m: usize, b: &BigRational, c: &BigRational) -> BigRational {
    pochhammer(&(c - b), m) / pochhammer(c, m)
}

/// `f_Q(q⁻¹)` and `f_P(q⁻¹)` directly, as hypergeometric sums, and by
/// Chu–Vandermonde.
pub fn hypergeometric_check(n: usize) -> Result<Report> {
    let d = FszData::new(n)?;
    let mut r = Report::default();
    let x = K::q_inv();
    let z = -x.pow(3);
    r.pass("argument −q⁻³ = 1", z == K::one());

    let nr = BigRational::from_integer(n.into());
    let t = |num: i64| rat(num, 3);
    let (fq, fp) = (d.f_q.lift(), d.f_p.lift());
    let direct_q = fq.eval(&x);
    let direct_p = fp.eval(&x);

    let pre_q = falling_product(&t(2), n);
    let c1 = pochhammer(&t(2), n).recip();
    let c2 = &nr / pochhammer(&t(-2), n + 1);
    let x2 = x.pow(2);
    let series_q = (K::rational(c1.clone()) * hyp2f1_terminating(n, &(t(1) - &nr), &t(1), &z)
        + x2.scale(&c2) * hyp2f1_terminating(n - 1, &(t(2) - &nr), &t(5), &z))
        .scale(&pre_q);
    let cv_q = (K::rational(&c1 * chu_vandermonde(n, &(t(1) - &nr), &t(1)))
        + x2.scale(&(&c2 * chu_vandermonde(n - 1, &(t(2) - &nr), &t(5)))))
        .scale(&pre_q);

    let pre_p = pochhammer(&t(2), n);
    let d1 = falling_product(&t(2), n).recip();
    let d2 = BigRational::from_integer((3 * n).into()) / falling_product(&t(1), n);
    let series_p = (K::rational(d1.clone()) * hyp2f1_terminating(n, &(t(2) - &nr), &t(2), &z)
        + x.scale(&d2) * hyp2f1_terminating(n - 1, &(t(1) - &nr), &t(4), &z))
        .scale(&pre_p);
    let cv_p = (K::rational(&d1 * chu_vandermonde(n, &(t(2) - &nr), &t(2)))
        + x.scale(&(&d2 * chu_vandermonde(n - 1, &(t(1) - &nr), &t(4)))))
        .scale(&pre_p);

    r.pass("f_Q(q⁻¹): direct = ₂F₁ series", direct_q == series_q);
    r.pass("f_Q(q⁻¹): direct = Chu–Vandermonde", direct_q == cv_q);
    r.pass("f_P(q⁻¹): direct = ₂F₁ series", direct_p == series_p);
    r.pass("f_P(q⁻¹): direct = Chu–Vandermonde", direct_p == cv_p);
    let t_qi = (K::one() + &x).pow(2 * n as i64);
    r.pass("f_Q(q⁻¹) = (1+q⁻¹)^{2N} Q(q⁻¹)", direct_q == &t_qi * &d.q.eval(&x));
    Ok(r)
}

fn signed(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `3^{−2N}` times the `x^{3k}` part of `f_raw^{(2N+j)}(−1)`.
pub fn s1(n: usize, j: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 0..=n {
        let e = 3 * k as i64 - 2 * n as i64 - j as i64;
        if e < 0 {
            continue;
        }
        let num = BigRational::from_integer(factorial(3 * k)) * signed(e);
        let kk = BigRational::from_integer(k.into());
        let den = pochhammer(&(rat(2, 3) - &kk), n)
            * BigRational::from_integer(factorial(n - k) * factorial(k) * factorial(e as usize));
        acc += num / den;
    }
    acc / BigRational::from_integer(BigInt::from(3).pow(2 * n as u32))
}

/// `3^{−2N}` times the `x^{3k+2}` part of `f_raw^{(2N+j)}(−1)`.
pub fn s2(n: usize, j: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 0..n {
        let e = 3 * k as i64 + 2 - 2 * n as i64 - j as i64;
        if e < 0 {
            continue;
        }
        let num = BigRational::from_integer(factorial(3 * k + 2)) * signed(e);
        let kk = BigRational::from_integer(k.into());
        let den = pochhammer(&(-kk - rat(2, 3)), n + 1)
            * BigRational::from_integer(factorial(n - k - 1) * factorial(k) * factorial(e as usize));
        acc += num / den;
    }
    acc / BigRational::from_integer(BigInt::from(3).pow(2 * n as u32))
}

/// The six sequences at one `N`. The `c` pair is `None` at `N = 1`, where
/// its normaliser `N(N²−1)(3N+4)/6` vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTerms {
    pub a: (BigRational, BigRational),
    pub b: (BigRational, BigRational),
    pub c: Option<(BigRational, BigRational)>,
}

pub fn recurrence_terms(n: usize) -> RecurrenceTerms {
    let nn = BigRational::from_integer((n * (n + 1)).into());
    let c = (n >= 2).then(|| {
        let den = BigRational::from_integer((n * (n * n - 1) * (3 * n + 4)).into()) / rat(6, 1);
        (s1(n, 2) / &den, -s2(n, 2) / &den)
    });
    RecurrenceTerms {
        a: (s1(n, 0), -s2(n, 0)),
        b: (-s1(n, 1) / &nn, s2(n, 1) / &nn),
        c,
    }
}

/// `c_N = 3^{2N} N! Π_{k=1}^{N} (2/3 − k)`.
pub fn c_n(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(3).pow(2 * n as u32) * factorial(n))
        * falling_product(&rat(2, 3), n)
}

pub fn recurrence_check(n_max: usize) -> Result<Report> {
    check_n(n_max, 3)?;
    let mut r = Report::default();
    let terms: Vec<RecurrenceTerms> = (0..=n_max + 2)
        .map(|n| if n == 0 { recurrence_terms(1) } else { recurrence_terms(n) })
        .collect();
    let big = |v: i64| BigRational::from_integer(v.into());

    let init = [
        ("a₁(1) = 2", &terms[1].a.0, rat(2, 1)),
        ("a₁(2) = 5", &terms[2].a.0, rat(5, 1)),
        ("a₂(1) = 1", &terms[1].a.1, rat(1, 1)),
        ("a₂(2) = 4", &terms[2].a.1, rat(4, 1)),
        ("a₁⁽¹⁾(1) = 1", &terms[1].b.0, rat(1, 1)),
        ("a₁⁽¹⁾(2) = 5/3", &terms[2].b.0, rat(5, 3)),
        ("a₂⁽¹⁾(1) = 0", &terms[1].b.1, rat(0, 1)),
        ("a₂⁽¹⁾(2) = 2/3", &terms[2].b.1, rat(2, 3)),
    ];
    for (name, got, want) in init {
        r.push(name, *got == want, (*got != want).then(|| format!("got {got}")));
    }
    let (c2, c3) = (terms[2].c.clone().expect("N=2"), terms[3].c.clone().expect("N=3"));
    let init_c = [
        ("a₁⁽²⁾ first term (N=2) = 1", c2.0, rat(1, 1)),
        ("a₁⁽²⁾ second term (N=3) = 20/13", c3.0, rat(20, 13)),
        ("a₂⁽²⁾ first term (N=2) = 0", c2.1, rat(0, 1)),
        ("a₂⁽²⁾ second term (N=3) = 7/13", c3.1, rat(7, 13)),
    ];
    for (name, got, want) in init_c {
        let ok = got == want;
        r.push(name, ok, (!ok).then(|| format!("got {got}")));
    }

    let mut bad: Vec<String> = Vec::new();
    for n in 1..=n_max.saturating_sub(2) {
        let (t0, t1, t2) = (&terms[n], &terms[n + 1], &terms[n + 2]);
        let ni = n as i64;
        let ra = |f: fn(&RecurrenceTerms) -> &BigRational| {
            big(6 + 4 * ni) * f(t0) + big(-5 * ni - 8) * f(t1) + big(ni + 2) * f(t2)
        };
        let rb = |f: fn(&RecurrenceTerms) -> &BigRational| {
            big(6 + 4 * ni) * f(t0) + big(-5 * ni - 9) * f(t1) + big(ni + 3) * f(t2)
        };
        if !ra(|t| &t.a.0).is_zero() {
            bad.push(format!("a₁ at n={n}"));
        }
        if !ra(|t| &t.a.1).is_zero() {
            bad.push(format!("a₂ at n={n}"));
        }
        if !rb(|t| &t.b.0).is_zero() {
            bad.push(format!("a₁⁽¹⁾ at n={n}"));
        }
        if !rb(|t| &t.b.1).is_zero() {
            bad.push(format!("a₂⁽¹⁾ at n={n}"));
        }
        if n >= 2 {
            let (c0, c1, c2) = (
                t0.c.as_ref().expect("n ≥ 2"),
                t1.c.as_ref().expect("n ≥ 2"),
                t2.c.as_ref().expect("n ≥ 2"),
            );
            let rc = |x0: &BigRational, x1: &BigRational, x2: &BigRational| {
                big(2 * (2 * ni + 5) * (3 * ni + 4)) * x0 - big(5 * (3 * ni + 7) * (ni + 2)) * x1
                    + big((3 * ni + 10) * (ni + 3)) * x2
            };
            if !rc(&c0.0, &c1.0, &c2.0).is_zero() {
                bad.push(format!("a₁⁽²⁾ at n={n}"));
            }
            if !rc(&c0.1, &c1.1, &c2.1).is_zero() {
                bad.push(format!("a₂⁽²⁾ at n={n}"));
            }
        }
    }
    r.push(
        format!("recurrences for the six sequences, n ≤ {n_max}"),
        bad.is_empty(),
        (!bad.is_empty()).then(|| bad.join(", ")),
    );

    let mut diff_bad = Vec::new();
    let mut id_bad = Vec::new();
    let m1 = rat(-1, 1);
    for n in 1..=n_max {
        let t = &terms[n];
        let one = BigRational::one();
        if &t.a.0 - &t.a.1 != one || &t.b.0 - &t.b.1 != one {
            diff_bad.push(n);
        }
        if let Some(c) = &t.c {
            if &c.0 - &c.1 != one {
                diff_bad.push(n);
            }
        }
        let f = f_q_poly(n)?;
        let cn = c_n(n);
        let ni = n as i64;
        let ok = f.nth_derivative(2 * n).eval(&m1) == cn
            && f.nth_derivative(2 * n + 1).eval(&m1) == -(&cn * big(ni * (ni + 1)))
            && f.nth_derivative(2 * n + 2).eval(&m1)
                == &cn * big(ni * (ni * ni - 1) * (3 * ni + 4)) / big(6);
        if !ok {
            id_bad.push(n);
        }
    }
    r.push(
        format!("differences a₁ − a₂ = 1 for all three pairs, N ≤ {n_max}"),
        diff_bad.is_empty(),
        (!diff_bad.is_empty()).then(|| format!("fails at N = {diff_bad:?}")),
    );
    r.push(
        format!("identities a, b, c against f_Q derivatives, N ≤ {n_max}"),
        id_bad.is_empty(),
        (!id_bad.is_empty()).then(|| format!("fails at N = {id_bad:?}")),
    );
    // The raw coefficients scale to the monic ones by c_N / 3^{2N}.
    let raw = RatPoly::new(f_q_raw(2));
    let scaled = raw.scale(&(c_n(2) / BigRational::from_integer(BigInt::from(81))));
    r.pass("raw f_Q scales to monic f_Q by c_N 3^{−2N}", scaled == f_q_poly(2)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_boundary_entries() {
        let t = boundary_table(1).unwrap();
        let get = |name: &str| t.iter().find(|e| e.name == name).unwrap().direct.clone();
        assert_eq!(get("Q(−1)"), K::rational(rat(-3, 2)));
        assert_eq!(get("Q(q⁻¹)"), K::new(rat(1, 2), rat(-1, 1)));
        assert_eq!(get("P(−1)"), K::int(-3));
        assert_eq!(get("P'(−1)"), K::int(1));
        assert!(t.iter().filter(|e| e.name.ends_with("(−1)")).all(|e| e.passed));
    }

    #[test]
    fn n1_wronskian_expansion() {
        let d = FszData::new(1).unwrap();
        assert_eq!(wronskian(&d.q, &d.p, 1), d.phi);
    }

    #[test]
    fn mutated_q_fails_tq() {
        let d = FszData::new(3).unwrap();
        let mut c = d.q.coeffs().to_vec();
        c[1] = &c[1] + &K::rational(rat(1, 7));
        let bad = QPoly::new(c);
        assert!(!tq_residual(&bad, &d.t, &d.phi, &q()).is_zero());
    }

    #[test]
    fn c_initial_index_matches_recurrence() {
        let t2 = recurrence_terms(2).c.unwrap();
        assert_eq!(t2, (rat(1, 1), rat(0, 1)));
        assert!(recurrence_terms(1).c.is_none());
    }
}
