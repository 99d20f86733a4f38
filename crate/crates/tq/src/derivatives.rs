//! Derivatives of the generating function at the stochastic point.
//!
//! `Λ₀ = [q(1−q²)T'(q)/T(q) − L]/(1+q²)`, where `T` depends on `q` and on the
//! twist `u`. Both first derivatives are assembled from boundary values of
//! `Q` and `P`. The q- and u-derivatives of `Q`, `P` and `T` are also
//! obtained independently by solving the linearised T-Q and T-P relations
//! over `Q(q)`; the worksheet compares the two.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::checks::{q, qp, s, ser_k, FszData};
use crate::error::{check_n, Result, TqError};
use crate::poly::QPoly;
use crate::qfield::{rat, QFieldElement as K};
use crate::report::Report;

/// Gaussian elimination over `Q(q)` for a system with at least as many rows
/// as columns. Surplus rows must reduce to `0 = 0`.
pub fn solve_exact(mut a: Vec<Vec<K>>, mut b: Vec<K>) -> Result<Vec<K>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows < cols {
        return Err(TqError::Singular(rows));
    }
    for c in 0..cols {
        let p = (c..rows).find(|&i| !a[i][c].is_zero()).ok_or(TqError::Singular(c))?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = a[c][c].try_inv()?;
        for i in c + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            a[i][c] = K::zero();
            for j in c + 1..cols {
                if !a[c][j].is_zero() {
                    let d = &f * &a[c][j];
                    a[i][j] -= &d;
                }
            }
            let d = &f * &b[c];
            b[i] -= &d;
        }
    }
    if let Some(i) = (cols..rows).find(|&i| !b[i].is_zero()) {
        return Err(TqError::Inconsistent(i));
    }
    let mut x = vec![K::zero(); cols];
    for c in (0..cols).rev() {
        let mut acc = b[c].clone();
        for j in c + 1..cols {
            if !a[c][j].is_zero() {
                acc -= &(&a[c][j] * &x[j]);
            }
        }
        x[c] = acc / &a[c][c];
    }
    Ok(x)
}

fn monomial(j: usize) -> QPoly {
    let mut c = vec![K::zero(); j + 1];
    c[j] = K::one();
    QPoly::new(c)
}

/// Solves `Ṫ·Y + T·Ẏ − w φ(x/q) Ẏ(q²x) − w⁻¹ φ(qx) Ẏ(q⁻²x) = rhs` for
/// `Ṫ` (degree ≤ 2N) and `Ẏ` (degree < N, since `Y` stays monic).
fn linearized(d: &FszData, y: &QPoly, w: &K, rhs: &QPoly) -> Result<(QPoly, QPoly)> {
    let n = d.n;
    let phim = d.phi.compose_scale(&K::q_inv());
    let phip = d.phi.compose_scale(&q());
    let wi = w.inv();
    let mut cols: Vec<QPoly> = (0..=2 * n).map(|j| &monomial(j) * y).collect();
    for j in 0..n {
        let e = monomial(j);
        let c = &(&(&d.t * &e) - &(&phim * &e.compose_scale(&qp(2))).scale(w))
            - &(&phip * &e.compose_scale(&qp(-2))).scale(&wi);
        cols.push(c);
    }
    let rows = 3 * n + 1;
    let a: Vec<Vec<K>> = (0..rows)
        .map(|i| cols.iter().map(|c| c.coeff(i)).collect())
        .collect();
    let b: Vec<K> = (0..rows).map(|i| rhs.coeff(i)).collect();
    let x = solve_exact(a, b)?;
    let t_dot = QPoly::new(x[..=2 * n].to_vec());
    let y_dot = QPoly::new(x[2 * n + 1..].to_vec());
    Ok((t_dot, y_dot))
}

/// Explicit q-dependence of `w φ(x/q) Y(q²x) + w⁻¹ φ(qx) Y(q⁻²x)`.
fn rhs_q(d: &FszData, y: &QPoly, w: &K) -> QPoly {
    let phi = d.phi.coeffs();
    let dphim = QPoly::new(
        (0..phi.len())
            .map(|i| &phi[i] * &(K::int(-(i as i64)) * qp(-(i as i64) - 1)))
            .collect(),
    );
    let dphip = QPoly::new(
        (0..phi.len())
            .map(|i| &phi[i] * &(K::int(i as i64) * qp(i as i64 - 1)))
            .collect(),
    );
    let x = QPoly::x();
    let dy = y.derivative();
    let t1 = &(&dphim * &y.compose_scale(&qp(2)))
        + &(&d.phi.compose_scale(&K::q_inv()) * &(&x * &dy.compose_scale(&qp(2))).scale(&(K::int(2) * q())));
    let t2 = &(&dphip * &y.compose_scale(&qp(-2)))
        + &(&d.phi.compose_scale(&q()) * &(&x * &dy.compose_scale(&qp(-2))).scale(&(K::int(-2) * qp(-3))));
    &t1.scale(w) + &t2.scale(&w.inv())
}

/// `u∂u` of the same expression, through `w = u^{±N}`.
fn rhs_u(d: &FszData, y: &QPoly, w: &K) -> QPoly {
    let nk = K::int(d.n as i64);
    let a = (&d.phi.compose_scale(&K::q_inv()) * &y.compose_scale(&qp(2))).scale(&(&nk * w));
    let b = (&d.phi.compose_scale(&q()) * &y.compose_scale(&qp(-2))).scale(&(&nk * &w.inv()));
    &a - &b
}

/// q-derivatives (at fixed `u`) and `u∂u`-derivatives (at fixed `q`) of
/// `T`, `Q` and `P`, each obtained twice for `T`.
#[derive(Debug, Clone)]
pub struct Linearized {
    pub t_q: QPoly,
    pub t_q_from_p: QPoly,
    pub q_q: QPoly,
    pub p_q: QPoly,
    pub t_u: QPoly,
    pub t_u_from_p: QPoly,
    pub q_u: QPoly,
    pub p_u: QPoly,
}

pub fn linearize(d: &FszData) -> Result<Linearized> {
    let w = q();
    let wi = K::q_inv();
    let (t_q, q_q) = linearized(d, &d.q, &w, &rhs_q(d, &d.q, &w))?;
    let (t_q_from_p, p_q) = linearized(d, &d.p, &wi, &rhs_q(d, &d.p, &wi))?;
    let (t_u, q_u) = linearized(d, &d.q, &w, &rhs_u(d, &d.q, &w))?;
    // P carries u⁻¹ in place of u, so its u-derivative flips sign.
    let rp = rhs_u(d, &d.p, &wi);
    let (t_u_from_p, p_u) = linearized(d, &d.p, &wi, &(&QPoly::zero() - &rp))?;
    Ok(Linearized {
        t_q,
        t_q_from_p,
        q_q,
        p_q,
        t_u,
        t_u_from_p,
        q_u,
        p_u,
    })
}

/// `∂q∂x [Q(a x) P(b x)]` at `x0` from the explicit `q`-dependence of `a`, `b`.
fn explicit_mixed(qy: &QPoly, py: &QPoly, a: &K, da: &K, b: &K, db: &K, x0: &K) -> K {
    let (ax, bx) = (a * x0, b * x0);
    let (q0, q1, q2) = (qy.eval(&ax), qy.derivative().eval(&ax), qy.nth_derivative(2).eval(&ax));
    let (p0, p1, p2) = (py.eval(&bx), py.derivative().eval(&bx), py.nth_derivative(2).eval(&bx));
    da * &q1 * &p0
        + a * da * x0 * &q2 * &p0
        + a * db * x0 * &q1 * &p1
        + db * &q0 * &p1
        + b * da * x0 * &q1 * &p1
        + b * db * x0 * &q0 * &p2
}

/// `∂x [Ẏ_Q(a x) P(b x) + Q(a x) Ẏ_P(b x)]` at `x0`.
fn implicit_mixed(qy: &QPoly, py: &QPoly, qd: &QPoly, pd: &QPoly, a: &K, b: &K, x0: &K) -> K {
    let (ax, bx) = (a * x0, b * x0);
    a * &(qd.derivative().eval(&ax) * py.eval(&bx) + qy.derivative().eval(&ax) * pd.eval(&bx))
        + b * &(qd.eval(&ax) * py.derivative().eval(&bx) + qy.eval(&ax) * pd.derivative().eval(&bx))
}

/// `∂x [Q(a x) P(b x)]` at `x0`.
fn d_prod(qy: &QPoly, py: &QPoly, a: &K, b: &K, x0: &K) -> K {
    let (ax, bx) = (a * x0, b * x0);
    a * &qy.derivative().eval(&ax) * py.eval(&bx) + b * &qy.eval(&ax) * py.derivative().eval(&bx)
}

fn ev(p: &QPoly, k: usize, x: &K) -> K {
    p.nth_derivative(k).eval(x)
}

/// `B_T` from boundary values of `Q`, `P` and their first two derivatives.
fn b_t_boundary(qy: &QPoly, py: &QPoly) -> K {
    let qi = K::q_inv();
    let m1 = K::int(-1);
    K::int(2)
        * (q() * ev(qy, 1, &m1) * ev(py, 0, &qi)
            + qp(-2) * ev(qy, 2, &m1) * ev(py, 0, &qi)
            + ev(qy, 0, &m1) * ev(py, 1, &qi)
            + &qi * ev(qy, 0, &m1) * ev(py, 2, &qi))
}

/// `u·B`: the boundary-value combination entering the u-derivative.
fn u_b(d: &FszData) -> K {
    let (qy, py) = (&d.q, &d.p);
    let qi = K::q_inv();
    let m1 = K::int(-1);
    K::int(2 * d.n as i64)
        * (ev(qy, 1, &m1) * ev(py, 0, &qi) * qp(-2)
            + ev(qy, 0, &m1) * ev(py, 1, &qi)
            + qp(2) * ev(qy, 1, &qi) * ev(py, 0, &m1)
            + ev(qy, 0, &qi) * ev(py, 1, &m1))
        / s()
}

/// `T'_q(q) = (3/2)(q² B_T − q⁻² (B_T)_{Q↔P}) / (q − q⁻¹)`.
fn t_q_prime_assembled(d: &FszData) -> K {
    let bt = b_t_boundary(&d.q, &d.p);
    let bts = b_t_boundary(&d.p, &d.q);
    (qp(2) * bt - qp(-2) * bts).scale(&rat(3, 2)) / s()
}

/// `u T'_u(q)` with the unknown part `A` eliminated between the T and φ
/// Wronskians.
fn u_t_u_assembled(d: &FszData) -> K {
    let nk = K::int(d.n as i64);
    let c = q() + K::q_inv();
    let t1 = d.t.derivative().eval(&q());
    let phi1 = d.phi.derivative().eval(&qp(-2));
    -(nk * c / s()) * (t1 + phi1) + u_b(d).scale(&rat(3, 2))
}

/// Derivative of `T(q) = (1−q²)^{2N}(−1/q)^N` along `q`.
fn t_total_q(d: &FszData) -> K {
    let n = d.n as i64;
    let f = (K::one() - qp(2)).pow(2 * n) * (-K::q_inv()).pow(n);
    &f * &(K::int(2 * n) * (K::int(-2) * q()) / (K::one() - qp(2)) - K::int(n) / q())
}

fn to_rational(x: K) -> Result<BigRational> {
    x.as_rational().cloned().ok_or_else(|| TqError::NotRational(x.to_string()))
}

/// `∂Λ₀/∂α` at the stochastic point.
pub fn lambda_alpha(n: usize) -> Result<BigRational> {
    let d = FszData::new(n)?;
    lambda_alpha_from(&d)
}

fn lambda_alpha_from(d: &FszData) -> Result<BigRational> {
    let g = q() * (K::one() - qp(2)) / (K::one() + qp(2));
    let t0 = d.t.eval(&q());
    let v = g * u_t_u_assembled(d) / t0 / (K::int(2 * d.n as i64) * s());
    to_rational(v)
}

/// `∂Λ₀/∂β` at the stochastic point.
pub fn lambda_beta(n: usize) -> Result<BigRational> {
    let d = FszData::new(n)?;
    lambda_beta_from(&d, &t_q_prime_assembled(&d))
}

fn lambda_beta_from(d: &FszData, t_q_prime: &K) -> Result<BigRational> {
    let l = K::int(2 * d.n as i64);
    let one = K::one();
    let q2 = qp(2);
    let t0 = d.t.eval(&q());
    let t1 = d.t.derivative().eval(&q());
    let t2 = d.t.nth_derivative(2).eval(&q());
    let fp = t_total_q(d);
    let g = q() * (&one - &q2) / (&one + &q2);
    let gp = ((&one - &(K::int(3) * &q2)) * (&one + &q2) - (q() - qp(3)) * K::int(2) * q())
        / (&one + &q2).pow(2);
    let dldq = &gp * &t1 / &t0
        + &g * &((&t2 + t_q_prime) / &t0 - &t1 * &fp / (&t0 * &t0))
        + K::int(2) * q() * l / (&one + &q2).pow(2);
    let dqdb = -(q() + K::q_inv()) / (&one - &qp(-2));
    to_rational(dldq * dqdb)
}

pub fn expected_lambda_alpha(n: usize) -> BigRational {
    let n = n as i64;
    rat(3 * n, 2 * (4 * n * n - 1))
}

pub fn expected_lambda_beta(n: usize) -> BigRational {
    let n = n as i64;
    rat(n * (5 * n * n - 2), 4 * n * n - 1)
}

/// Intermediate quantities of the derivative assembly.
///
/// `A_*` collect the implicit dependence through `Q_q`, `P_q`; `B_*` the
/// explicit dependence through the scaled arguments. `u_a` and `u_b` are the
/// corresponding pieces of the u-derivative, already multiplied by `u`.
#[derive(Debug, Clone, Serialize)]
pub struct DerivativeWorksheet {
    pub n: usize,
    #[serde(serialize_with = "ser_k")]
    pub u_a: K,
    #[serde(serialize_with = "ser_k")]
    pub u_b: K,
    #[serde(serialize_with = "ser_k")]
    pub a_t: K,
    #[serde(serialize_with = "ser_k")]
    pub b_t: K,
    #[serde(serialize_with = "ser_k")]
    pub a_phi: K,
    #[serde(serialize_with = "ser_k")]
    pub b_phi: K,
    #[serde(serialize_with = "ser_k")]
    pub a_t_swap: K,
    #[serde(serialize_with = "ser_k")]
    pub b_t_swap: K,
    #[serde(serialize_with = "ser_k")]
    pub b_t_boundary: K,
    #[serde(serialize_with = "ser_k")]
    pub a_u_phi: K,
    #[serde(serialize_with = "ser_k")]
    pub k1: K,
    #[serde(serialize_with = "ser_k")]
    pub k2: K,
    #[serde(serialize_with = "ser_k")]
    pub t_q_prime_solved: K,
    #[serde(serialize_with = "ser_k")]
    pub t_q_prime_full: K,
    #[serde(serialize_with = "ser_k")]
    pub t_q_prime_assembled: K,
    #[serde(serialize_with = "ser_k")]
    pub t_q_solved: K,
    #[serde(serialize_with = "ser_k")]
    pub t_q_from_identity: K,
    #[serde(serialize_with = "ser_k")]
    pub u_t_u_solved: K,
    #[serde(serialize_with = "ser_k")]
    pub u_t_u_assembled: K,
    pub t_q_consistent: bool,
    pub t_u_consistent: bool,
}

impl DerivativeWorksheet {
    pub fn build(n: usize) -> Result<Self> {
        let d = FszData::new(n)?;
        Self::from_data(&d)
    }

    fn from_data(d: &FszData) -> Result<Self> {
        let lin = linearize(d)?;
        let (qy, py) = (&d.q, &d.p);
        let (q1, qi) = (q(), K::q_inv());
        let (q2, qm2) = (qp(2), qp(-2));
        let a_t = implicit_mixed(qy, py, &lin.q_q, &lin.p_q, &q2, &qm2, &q1);
        let a_t_swap = implicit_mixed(py, qy, &lin.p_q, &lin.q_q, &q2, &qm2, &q1);
        let a_phi = implicit_mixed(qy, py, &lin.q_q, &lin.p_q, &q1, &qi, &qm2);
        let (dq2, dqm2) = (K::int(2) * &q1, K::int(-2) * qp(-3));
        let b_t = explicit_mixed(qy, py, &q2, &dq2, &qm2, &dqm2, &q1);
        let b_t_swap = explicit_mixed(py, qy, &q2, &dq2, &qm2, &dqm2, &q1);
        let b_phi = explicit_mixed(qy, py, &q1, &K::one(), &qi, &-&qm2, &qm2);

        let a_u_t = &q2 * &implicit_mixed(qy, py, &lin.q_u, &lin.p_u, &q2, &qm2, &q1)
            - &qm2 * &implicit_mixed(py, qy, &lin.p_u, &lin.q_u, &q2, &qm2, &q1);
        let a_u_phi = &q1 * &implicit_mixed(qy, py, &lin.q_u, &lin.p_u, &q1, &qi, &qm2)
            - &qi * &implicit_mixed(py, qy, &lin.p_u, &lin.q_u, &q1, &qi, &qm2);
        let nn = d.n as i64;
        let k2 = K::int(2 * nn)
            * (&q2 * &d_prod(qy, py, &q2, &qm2, &q1) + &qm2 * &d_prod(qy, py, &qm2, &q2, &q1));
        let k1 = K::int(nn)
            * (&q1 * &d_prod(qy, py, &q1, &qi, &qm2) + &qi * &d_prod(qy, py, &qi, &q1, &qm2));

        let t_q_prime_full = (&q2 * &(&a_t + &b_t) - &qm2 * &(&a_t_swap + &b_t_swap)) / s();
        let t1 = d.t.derivative().eval(&q1);
        Ok(Self {
            n: d.n,
            u_a: &a_u_t / &s(),
            u_b: u_b(d),
            b_t_boundary: b_t_boundary(qy, py),
            a_u_phi,
            k1,
            k2,
            t_q_prime_solved: lin.t_q.derivative().eval(&q1),
            t_q_prime_assembled: t_q_prime_assembled(d),
            t_q_solved: lin.t_q.eval(&q1),
            t_q_from_identity: t_total_q(d) - &t1,
            u_t_u_solved: lin.t_u.derivative().eval(&q1),
            u_t_u_assembled: u_t_u_assembled(d),
            t_q_consistent: lin.t_q == lin.t_q_from_p,
            t_u_consistent: lin.t_u == lin.t_u_from_p,
            t_q_prime_full,
            a_t,
            b_t,
            a_phi,
            b_phi,
            a_t_swap,
            b_t_swap,
        })
    }

    /// The relations among the worksheet entries, each checked exactly.
    pub fn relations(&self, d: &FszData) -> Report {
        let mut r = Report::default();
        let nk = K::int(self.n as i64);
        let c = q() + K::q_inv();
        let t1 = d.t.derivative().eval(&q());
        let phi1 = d.phi.derivative().eval(&qp(-2));
        let eq = |r: &mut Report, name: &str, lhs: &K, rhs: &K| {
            let ok = lhs == rhs;
            r.push(name, ok, (!ok).then(|| format!("{lhs} vs {rhs}")));
        };
        eq(&mut r, "A_φ = −(A_T)_{Q↔P}", &self.a_phi, &-&self.a_t_swap);
        eq(&mut r, "2B_φ = (B_T)_{Q↔P}", &(K::int(2) * &self.b_phi), &self.b_t_swap);
        eq(&mut r, "B_T from boundary values", &self.b_t_boundary, &self.b_t);
        r.pass("T_q agrees between the Q and P systems", self.t_q_consistent);
        r.pass("T_u agrees between the Q and P systems", self.t_u_consistent);
        eq(&mut r, "T_q(q) from the T(q) identity", &self.t_q_solved, &self.t_q_from_identity);
        eq(&mut r, "T'_q(q): solved = full chain rule", &self.t_q_prime_solved, &self.t_q_prime_full);
        eq(&mut r, "T'_q(q): solved = B_T assembly", &self.t_q_prime_solved, &self.t_q_prime_assembled);
        let tuq = -(&nk * &c / s()) * &t1 + &self.u_a + &self.u_b;
        eq(&mut r, "u T'_u(q) = −N(u^N+u^{−N})T'(q)/(u^N−u^{−N}) + uA + uB", &self.u_t_u_solved, &tuq);
        let phiuq = -(&nk * &c / s()) * &phi1 - &self.u_a + self.u_b.scale(&rat(1, 2));
        eq(&mut r, "0 = −N(u^N+u^{−N})φ'(q⁻²)/(u^N−u^{−N}) − uA + uB/2", &phiuq, &K::zero());
        eq(&mut r, "A_u for φ = −A_u for T", &self.a_u_phi, &-(&self.u_a * &s()));
        eq(&mut r, "K₁ = K₂/2", &self.k1, &self.k2.scale(&rat(1, 2)));
        eq(&mut r, "u T'_u(q): solved = eliminated form", &self.u_t_u_solved, &self.u_t_u_assembled);
        r
    }
}

/// Both drifts against the closed forms, plus the worksheet relations.
pub fn derivative_report(n: usize) -> Result<Report> {
    check_n(n, 1)?;
    let d = FszData::new(n)?;
    let mut r = Report::default();
    for (name, got, want) in [
        ("∂Λ/∂α = (3/2)N/(4N²−1)", lambda_alpha_from(&d), expected_lambda_alpha(n)),
        (
            "∂Λ/∂β = N(5N²−2)/(4N²−1)",
            lambda_beta_from(&d, &t_q_prime_assembled(&d)),
            expected_lambda_beta(n),
        ),
    ] {
        match got {
            Ok(v) => {
                let ok = v == want;
                r.push(name, ok, (!ok).then(|| format!("got {v}, expected {want}")));
            }
            Err(e) => r.push(name, false, Some(e.to_string())),
        }
    }
    let w = DerivativeWorksheet::from_data(&d)?;
    // The β-derivative once more, with T'_q from the linear solve.
    match lambda_beta_from(&d, &w.t_q_prime_solved) {
        Ok(v) => r.pass("∂Λ/∂β with solved T'_q", v == expected_lambda_beta(n)),
        Err(e) => r.push("∂Λ/∂β with solved T'_q", false, Some(e.to_string())),
    }
    r.extend(w.relations(&d));
    Ok(r)
}
