//! Bethe roots of `Q` and the ground-state checks built on them.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::checks::{q, qp, FszData};
use crate::error::{check_n, Result};
use crate::fsz::q_poly;
use crate::poly::RatPoly;
use crate::qfield::QFieldElement as K;
use crate::report::Report;

/// Spectral parameters at the stochastic point for `L = 2N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralParams {
    pub n: usize,
    /// `q + q⁻¹`.
    pub two_q: f64,
    /// `(u^N + u^{−N})²`.
    pub kappa: f64,
    /// Phase of `q`.
    pub gamma: f64,
    /// `−cos γ`.
    pub delta_aniso: f64,
}

impl SpectralParams {
    pub fn stochastic(n: usize) -> Self {
        let gamma = std::f64::consts::FRAC_PI_3;
        let u_n = Complex64::from_polar(1.0, gamma);
        Self {
            n,
            two_q: 2.0 * gamma.cos(),
            kappa: (u_n + u_n.inv()).norm_sqr(),
            gamma,
            delta_aniso: -gamma.cos(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BetheRoots {
    pub n: usize,
    pub roots: Vec<Complex64>,
    /// `z_i = u(x_i − q)/(1 − q x_i)`.
    pub z: Vec<Complex64>,
    pub z_product: Complex64,
    /// Max over roots of `|lhs/rhs − 1|` in the x-form equations.
    pub bae_residual: f64,
    /// Largest relative condition number of a root.
    pub condition: f64,
}

fn q_c() -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3)
}

/// `u = e^{iπ/(3N)}`, so that `u^N = q`.
pub fn twist(n: usize) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::PI / (3.0 * n as f64))
}

fn horner(c: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Diagonal similarity scaling by powers of two.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c >= g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Roots of a monic real polynomial from its balanced companion matrix,
/// polished by Newton steps.
pub fn polynomial_roots(p: &RatPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    balance(&mut m);
    m.complex_eigenvalues()
        .iter()
        .map(|&x0| {
            let mut x = x0;
            for _ in 0..8 {
                let (v, dv) = horner(&c, x);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = v / dv;
                x -= step;
                if step.norm() <= 1e-17 * x.norm().max(1.0) {
                    break;
                }
            }
            x
        })
        .collect()
}

pub fn bethe_roots(n: usize) -> Result<BetheRoots> {
    check_n(n, 1)?;
    let qp_ = q_poly(n)?;
    let roots = polynomial_roots(&qp_);
    let c: Vec<f64> = qp_.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let (qc, u) = (q_c(), twist(n));
    let l = 2 * n as i32;
    let q2 = qc * qc;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };

    let mut bae_residual: f64 = 0.0;
    for (i, &xi) in roots.iter().enumerate() {
        let lhs = u.powi(l) * ((xi - qc) / (1.0 - qc * xi)).powi(l);
        let mut rhs = Complex64::new(sign, 0.0);
        for (j, &xj) in roots.iter().enumerate() {
            if j != i {
                rhs *= (q2 * xj - xi) / (q2 * xi - xj);
            }
        }
        bae_residual = bae_residual.max((lhs / rhs - 1.0).norm());
    }
    let condition = roots
        .iter()
        .map(|&x| {
            let s: f64 = c.iter().enumerate().map(|(k, a)| a.abs() * x.norm().powi(k as i32)).sum();
            s / (x.norm() * horner(&c, x).1.norm())
        })
        .fold(0.0, f64::max);
    let z: Vec<Complex64> = roots.iter().map(|&x| u * (x - qc) / (1.0 - qc * x)).collect();
    let z_product = z.iter().product();
    Ok(BetheRoots {
        n,
        roots,
        z,
        z_product,
        bae_residual,
        condition,
    })
}

/// `E = Δ(2N − L/2) − Σ (u/z_i + z_i/u)` with `Δ = −1/2`.
pub fn e_xxz(b: &BetheRoots) -> f64 {
    let u = twist(b.n);
    let delta = SpectralParams::stochastic(b.n).delta_aniso;
    let l = 2.0 * b.n as f64;
    let s: Complex64 = b.z.iter().map(|&z| u / z + z / u).sum();
    delta * (2.0 * b.n as f64 - l / 2.0) - s.re
}

/// `(1−q²)/(1+q²)(q⁻¹Q'(q⁻¹)/Q(q⁻¹) − qQ'(q)/Q(q)) − L`, exactly.
pub fn lambda_exact(n: usize) -> Result<K> {
    let d = FszData::new(n)?;
    let (qi, q1) = (K::q_inv(), q());
    let dq = d.q.derivative();
    let log_d = |x: &K| x * &dq.eval(x) / d.q.eval(x);
    Ok((K::int(1) - qp(2)) / (K::int(1) + qp(2)) * (log_d(&qi) - log_d(&q1)) - K::int(2 * n as i64))
}

/// The same quantity through the roots: `Σ 1/(1 − q x_i) − q/(q − x_i)`.
pub fn lambda_from_root_sum(b: &BetheRoots) -> Complex64 {
    let qc = q_c();
    let pre = (1.0 - qc * qc) / (1.0 + qc * qc);
    let s: Complex64 = b.roots.iter().map(|&x| 1.0 / (1.0 - qc * x) - qc / (qc - x)).sum();
    pre * s - 2.0 * b.n as f64
}

pub const BAE_TOLERANCE: f64 = 1e-8;
pub const PRODUCT_TOLERANCE: f64 = 1e-10;
pub const ENERGY_TOLERANCE: f64 = 1e-10;

/// Root residuals, `Π z = 1`, `Λ₀ = 0` exactly and `E = −3L/4`.
pub fn lambda_from_roots(n: usize) -> Result<Report> {
    let b = bethe_roots(n)?;
    let mut r = Report::default();
    r.push(
        "Bethe equations",
        b.bae_residual < BAE_TOLERANCE,
        Some(format!("max residual {:.3e}, condition {:.3e}", b.bae_residual, b.condition)),
    );
    let dz = (b.z_product - 1.0).norm();
    r.push("Π z_i = 1", dz < PRODUCT_TOLERANCE, Some(format!("|Π z − 1| = {dz:.3e}")));
    let lam = lambda_exact(n)?;
    r.push("Λ₀ = 0 exactly", lam.is_zero(), (!lam.is_zero()).then(|| lam.to_string()));
    let lr = lambda_from_root_sum(&b).norm();
    r.push("Λ₀ from the roots", lr < 1e-8, Some(format!("|Λ₀| = {lr:.3e}")));
    let e = e_xxz(&b);
    let want = -3.0 * (2 * n) as f64 / 4.0;
    r.push(
        "E_XXZ = −3L/4",
        (e - want).abs() < ENERGY_TOLERANCE,
        Some(format!("E = {e:.12}")),
    );
    Ok(r)
}
