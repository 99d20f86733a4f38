//! Sparse operators on spin-1/2 chains and the Temperley–Lieb generators.
//!
//! Basis states are `L`-bit integers with bit `L−1−i` holding site `i`
//! (site 0 is the most significant bit); a set bit is spin up.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_length, Result, XxzError};

/// Largest chain for operators on the full `2^L` space.
pub const FULL_SPACE_CAP: usize = 12;
/// Largest chain for the `S_z = 0` sector.
pub const SECTOR_CAP: usize = 16;

pub fn full_basis(length: usize) -> Vec<u64> {
    (0..1u64 << length).collect()
}

/// States with `L/2` up spins in increasing order.
pub fn sector_basis(length: usize) -> Vec<u64> {
    (0..1u64 << length)
        .filter(|b| b.count_ones() as usize == length / 2)
        .collect()
}

pub(crate) fn spin_up(state: u64, length: usize, site: usize) -> bool {
    state >> (length - 1 - site) & 1 == 1
}

pub(crate) fn flip(state: u64, length: usize, site: usize) -> u64 {
    state ^ (1 << (length - 1 - site))
}

/// Column-sparse complex operator on a list of basis states.
#[derive(Debug, Clone)]
pub struct SpinOperator {
    pub length: usize,
    pub basis: Vec<u64>,
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl SpinOperator {
    /// Builds the operator whose action on basis state `s` is `action(s)`.
    /// Fails if the action leaves the span of `basis`.
    pub fn from_action(
        length: usize,
        basis: Vec<u64>,
        action: impl Fn(u64) -> Vec<(u64, Complex64)>,
    ) -> Result<Self> {
        let mut cols = Vec::with_capacity(basis.len());
        for &s in &basis {
            let mut col: Vec<(usize, Complex64)> = Vec::new();
            for (t, c) in action(s) {
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let i = basis.binary_search(&t).map_err(|_| {
                    XxzError::Domain(format!("state {t:b} is outside the basis"))
                })?;
                match col.iter_mut().find(|(k, _)| *k == i) {
                    Some(e) => e.1 += c,
                    None => col.push((i, c)),
                }
            }
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
        Ok(Self { length, basis, cols })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for (j, col) in self.cols.iter().enumerate() {
            let xj = x[j];
            if xj == Complex64::new(0.0, 0.0) {
                continue;
            }
            for &(i, c) in col {
                y[i] += c * xj;
            }
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, c) in col {
                m[(i, j)] += c;
            }
        }
        m
    }

    /// Largest entry of `A − A†`.
    pub fn hermiticity_error(&self) -> f64 {
        let m = self.to_dense();
        (&m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }
}

/// Action of `e_i` on one basis state, for general `q` and twist `u`.
///
/// On sites `(i, i+1)` the generator is
/// `u σ⁺σ⁻ + u⁻¹ σ⁻σ⁺ − (cos γ/2)(σᶻσᶻ − 1) + (i sin γ/2)(σᶻ_i − σᶻ_{i+1})`,
/// which on `|↑↓⟩, |↓↑⟩` is `[[q, u], [u⁻¹, q⁻¹]]` and zero on aligned pairs.
pub(crate) fn tl_action(
    length: usize,
    q: Complex64,
    u: Complex64,
    i: usize,
    s: u64,
) -> Vec<(u64, Complex64)> {
    let j = (i + 1) % length;
    let (a, b) = (spin_up(s, length, i), spin_up(s, length, j));
    if a == b {
        return Vec::new();
    }
    let swapped = flip(flip(s, length, i), length, j);
    if a {
        vec![(s, q), (swapped, u.inv())]
    } else {
        vec![(s, q.inv()), (swapped, u)]
    }
}

/// `ρ(e_i)` on the full `2^L` space.
pub fn tl_generator_matrix(length: usize, q: Complex64, u: Complex64, i: usize) -> Result<SpinOperator> {
    check_length(length, FULL_SPACE_CAP)?;
    if i >= length {
        return Err(XxzError::SiteOutOfRange { site: i, length });
    }
    SpinOperator::from_action(length, full_basis(length), |s| tl_action(length, q, u, i, s))
}

/// `ρ(e_i)` restricted to the `S_z = 0` sector.
pub fn tl_generator_sector(length: usize, q: Complex64, u: Complex64, i: usize) -> Result<SpinOperator> {
    check_length(length, SECTOR_CAP)?;
    if i >= length {
        return Err(XxzError::SiteOutOfRange { site: i, length });
    }
    SpinOperator::from_action(length, sector_basis(length), |s| tl_action(length, q, u, i, s))
}

/// Maximal entrywise errors of the periodic Temperley–Lieb relations.
#[derive(Debug, Clone, Serialize)]
pub struct TlReport {
    pub length: usize,
    pub q: Complex64,
    pub u: Complex64,
    /// `q + q⁻¹`.
    pub two_q: Complex64,
    /// `(u^N + u^{−N})²`.
    pub kappa: Complex64,
    /// `e_i² = 2_q e_i`.
    pub tl1_error: f64,
    /// `e_i e_{i±1} e_i = e_i`.
    pub tl2_error: f64,
    /// `e_i e_j = e_j e_i` for non-adjacent `i, j`.
    pub tl3_error: f64,
    /// `J I J = κ J`.
    pub jij_error: f64,
}

pub const TL_TOLERANCE: f64 = 1e-12;

impl TlReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.tl1_error < tol && self.tl2_error < tol && self.tl3_error < tol && self.jij_error < tol
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn check_tl(length: usize, q: Complex64, u: Complex64) -> Result<TlReport> {
    check_length(length, FULL_SPACE_CAP)?;
    let e: Vec<DMatrix<Complex64>> = (0..length)
        .map(|i| tl_generator_matrix(length, q, u, i).map(|o| o.to_dense()))
        .collect::<Result<_>>()?;
    let n = length / 2;
    let two_q = q + q.inv();
    let u_n = u.powu(n as u32);
    let kappa = (u_n + u_n.inv()).powu(2);

    let mut tl1: f64 = 0.0;
    let mut tl2: f64 = 0.0;
    let mut tl3: f64 = 0.0;
    for i in 0..length {
        tl1 = tl1.max(max_abs(&(&e[i] * &e[i] - &e[i] * two_q)));
        for j in [(i + 1) % length, (i + length - 1) % length] {
            if j != i {
                tl2 = tl2.max(max_abs(&(&e[i] * &e[j] * &e[i] - &e[i])));
            }
        }
        for j in 0..length {
            let d = (i + length - j) % length;
            if d > 1 && d < length - 1 {
                tl3 = tl3.max(max_abs(&(&e[i] * &e[j] - &e[j] * &e[i])));
            }
        }
    }
    let dim = 1usize << length;
    let mut jm = DMatrix::<Complex64>::identity(dim, dim);
    let mut im = DMatrix::<Complex64>::identity(dim, dim);
    for (i, ei) in e.iter().enumerate() {
        if i % 2 == 0 {
            jm *= ei;
        } else {
            im *= ei;
        }
    }
    let jij = max_abs(&(&jm * &im * &jm - &jm * kappa));
    Ok(TlReport {
        length,
        q,
        u,
        two_q,
        kappa,
        tl1_error: tl1,
        tl2_error: tl2,
        tl3_error: tl3,
        jij_error: jij,
    })
}
