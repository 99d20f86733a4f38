//! Tilted generator and its Perron root.
//!
//! `M(α, β) = Σ_i (W_i − I)`, where `W_i` moves each state by the site-`i`
//! rule and weights the move by `exp(α δN^⟲ + β δN^◊)`. The largest eigenvalue
//! `Λ(α, β)` is the joint scaled cumulant generating function of the two
//! avalanche currents.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::stationary::StateSpace;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DeformedParams {
    /// Conjugate to the global avalanche count.
    pub alpha: f64,
    /// Conjugate to the number of tiles removed by avalanches.
    pub beta: f64,
}

impl DeformedParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }
}

/// Column-oriented sparse matrix: `cols[j]` holds `(row, value)` off-diagonal
/// entries of column `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedMatrix {
    pub length: usize,
    pub diag: Vec<f64>,
    pub cols: Vec<Vec<(usize, f64)>>,
}

impl DeformedMatrix {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `y = (M + shift·I) x`, summed in a fixed order.
    pub fn mul_shifted(&self, x: &[f64], shift: f64, y: &mut [f64]) {
        for (yi, (d, xi)) in y.iter_mut().zip(self.diag.iter().zip(x)) {
            *yi = (d + shift) * xi;
        }
        for (j, col) in self.cols.iter().enumerate() {
            let xj = x[j];
            for &(r, w) in col {
                y[r] += w * xj;
            }
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = self.diag[j];
            for &(r, w) in &self.cols[j] {
                m[(r, j)] += w;
            }
        }
        m
    }
}

pub fn build_deformed(space: &StateSpace, p: DeformedParams) -> DeformedMatrix {
    let n = space.dim();
    let mut diag = vec![0.0; n];
    let mut cols = Vec::with_capacity(n);
    for (j, out) in space.moves.iter().enumerate() {
        let mut col: Vec<(usize, f64)> = Vec::new();
        for t in out {
            if t.target == j {
                // Reflection: weight 1 on the diagonal of W_i cancels the identity.
                continue;
            }
            diag[j] -= 1.0;
            let w = (p.alpha * t.global as f64 + p.beta * t.diamond as f64).exp();
            match col.iter_mut().find(|(r, _)| *r == t.target) {
                Some(e) => e.1 += w,
                None => col.push((t.target, w)),
            }
        }
        col.sort_by_key(|e| e.0);
        cols.push(col);
    }
    DeformedMatrix {
        length: space.length,
        diag,
        cols,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Bound on both the increment of the estimate and the Collatz–Wielandt
    /// bracket width, relative to `max(1, Λ + L)`.
    pub tol: f64,
    pub max_iterations: usize,
    /// Dense eigenvalues are used as a fallback, and for the spectral gap,
    /// below this dimension.
    pub dense_below: usize,
    pub spectral_gap: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_iterations: 1_000_000,
            dense_below: 512,
            spectral_gap: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SCGFResult {
    pub lambda: f64,
    /// Half-width of the Collatz–Wielandt bracket around `lambda`.
    pub residual: f64,
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral_gap: Option<f64>,
    pub dense_fallback: bool,
}

fn dense_spectrum(m: &DeformedMatrix) -> Vec<f64> {
    let mut re: Vec<f64> = m
        .to_dense()
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .collect();
    re.sort_by(|a, b| b.total_cmp(a));
    re
}

/// Perron root of `M` by power iteration on `M + L·I`.
pub fn largest_eigenvalue(m: &DeformedMatrix, opts: &SolverOptions) -> Result<SCGFResult> {
    let n = m.dim();
    let shift = m.length as f64;
    let mut v = vec![1.0 / n as f64; n];
    let mut w = vec![0.0; n];
    let mut prev = f64::NAN;
    let mut increment = f64::INFINITY;
    for it in 1..=opts.max_iterations {
        m.mul_shifted(&v, shift, &mut w);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut norm = 0.0;
        for (wi, vi) in w.iter().zip(&v) {
            let r = wi / vi;
            lo = lo.min(r);
            hi = hi.max(r);
            norm += wi;
        }
        // `v` has unit l1 norm, so `norm` is the l1 ratio.
        let est = norm;
        increment = (est - prev).abs();
        prev = est;
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
        let scale = est.abs().max(1.0);
        if increment < opts.tol * scale && hi - lo < opts.tol * scale {
            let spectral_gap = if opts.spectral_gap && n < opts.dense_below {
                let s = dense_spectrum(m);
                Some(if s.len() > 1 { s[0] - s[1] } else { f64::INFINITY })
            } else {
                None
            };
            return Ok(SCGFResult {
                lambda: est - shift,
                residual: (hi - lo) / 2.0,
                iterations: it,
                spectral_gap,
                dense_fallback: false,
            });
        }
    }
    if n < opts.dense_below {
        let s = dense_spectrum(m);
        return Ok(SCGFResult {
            lambda: s[0],
            residual: increment,
            iterations: opts.max_iterations,
            spectral_gap: Some(if s.len() > 1 { s[0] - s[1] } else { f64::INFINITY }),
            dense_fallback: true,
        });
    }
    Err(CoreError::NoConvergence {
        iterations: opts.max_iterations,
        increment,
    })
}

pub fn scgf(space: &StateSpace, p: DeformedParams, opts: &SolverOptions) -> Result<SCGFResult> {
    largest_eigenvalue(&build_deformed(space, p), opts)
}

/// Central differences of `Λ` at the origin, Richardson-extrapolated from
/// steps `h` and `h/2`. Returns `(∂Λ/∂α, ∂Λ/∂β)`.
pub fn scgf_derivatives(space: &StateSpace, h: f64, opts: &SolverOptions) -> Result<(f64, f64)> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(CoreError::InvalidConfig(format!(
            "finite-difference step must lie in (0, 1e-3], got {h}"
        )));
    }
    let lam = |a: f64, b: f64| scgf(space, DeformedParams::new(a, b), opts).map(|r| r.lambda);
    let central = |step: f64, along_alpha: bool| -> Result<f64> {
        let (plus, minus) = if along_alpha {
            (lam(step, 0.0)?, lam(-step, 0.0)?)
        } else {
            (lam(0.0, step)?, lam(0.0, -step)?)
        };
        Ok((plus - minus) / (2.0 * step))
    };
    let richardson = |along_alpha: bool| -> Result<f64> {
        let d1 = central(h, along_alpha)?;
        let d2 = central(h / 2.0, along_alpha)?;
        Ok((4.0 * d2 - d1) / 3.0)
    };
    Ok((richardson(true)?, richardson(false)?))
}

/// `Λ(α, β)` for `L = 2`, where the tilted chain is `[[−1, e^{α+2β}], [1, −1]]`.
pub fn lambda_l2(p: DeformedParams) -> f64 {
    -1.0 + ((p.alpha + 2.0 * p.beta) / 2.0).exp()
}
