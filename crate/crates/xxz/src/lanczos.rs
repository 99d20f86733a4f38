//! Restarted Lanczos for the lowest eigenvalue of a Hermitian operator.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, XxzError};
use crate::spin::SpinOperator;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LanczosOptions {
    /// Bound on `‖H y − θ y‖` for the normalised Ritz vector `y`.
    pub tol: f64,
    pub krylov_dim: usize,
    pub max_restarts: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            krylov_dim: 120,
            max_restarts: 60,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroundState {
    pub energy: f64,
    pub residual: f64,
    pub matvecs: usize,
    pub restarts: usize,
    #[serde(skip)]
    pub vector: Vec<Complex64>,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn scale(a: &mut [Complex64], s: f64) {
    a.iter_mut().for_each(|z| *z *= s);
}

/// Deterministic start vector with no special symmetry.
fn start_vector(n: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|k| {
            let k = k as f64;
            Complex64::new(1.0 + 0.5 * (0.7 * k + 0.3).cos(), 0.25 * (1.3 * k).sin())
        })
        .collect();
    let s = norm(&v);
    scale(&mut v, 1.0 / s);
    v
}

/// Lowest eigenpair, restarting from the current Ritz vector.
pub fn ground_state(h: &SpinOperator, opts: &LanczosOptions) -> Result<GroundState> {
    let n = h.dim();
    let m = opts.krylov_dim.min(n).max(1);
    let mut v0 = start_vector(n);
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let mut matvecs = 0;
    let mut residual = f64::INFINITY;

    for restart in 0..=opts.max_restarts {
        let mut basis: Vec<Vec<Complex64>> = vec![v0.clone()];
        let mut alpha: Vec<f64> = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        for k in 0..m {
            h.apply(&basis[k], &mut w);
            matvecs += 1;
            let a = dot(&basis[k], &w).re;
            alpha.push(a);
            // Full reorthogonalisation, twice.
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
            }
            let bnorm = norm(&w);
            if k + 1 == m || bnorm < 1e-13 {
                break;
            }
            beta.push(bnorm);
            let mut next = w.clone();
            scale(&mut next, 1.0 / bnorm);
            basis.push(next);
        }

        let k = alpha.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let imin = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("nonempty Krylov space");
        let s = eig.eigenvectors.column(imin);
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for (j, b) in basis.iter().take(k).enumerate() {
            y.iter_mut().zip(b).for_each(|(x, v)| *x += s[j] * v);
        }
        let ny = norm(&y);
        scale(&mut y, 1.0 / ny);
        h.apply(&y, &mut w);
        matvecs += 1;
        let energy = dot(&y, &w).re;
        residual = w
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b * energy).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual < opts.tol {
            return Ok(GroundState {
                energy,
                residual,
                matvecs,
                restarts: restart,
                vector: y,
            });
        }
        v0 = y;
    }
    Err(XxzError::NoConvergence {
        iterations: matvecs,
        residual,
    })
}

pub fn ground_energy(h: &SpinOperator, opts: &LanczosOptions) -> Result<f64> {
    ground_state(h, opts).map(|g| g.energy)
}

/// All eigenvalues of a Hermitian operator, ascending, by dense
/// diagonalisation.
pub fn dense_spectrum(h: &SpinOperator) -> Vec<f64> {
    let mut ev: Vec<f64> = h.to_dense().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
