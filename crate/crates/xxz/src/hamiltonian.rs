//! The twisted XXZ Hamiltonian in the `S_z = 0` sector.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_length, Result};
use crate::spin::{flip, full_basis, sector_basis, spin_up, SpinOperator, FULL_SPACE_CAP, SECTOR_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XXZParams {
    pub length: usize,
    /// Anisotropy `Δ`.
    pub delta_aniso: f64,
    /// Twist `u`, applied on every bond.
    pub twist: Complex64,
}

impl XXZParams {
    pub fn new(length: usize, delta_aniso: f64, twist: Complex64) -> Self {
        Self {
            length,
            delta_aniso,
            twist,
        }
    }

    /// `Δ = −1/2`, `u = e^{2πi/(3L)}`.
    pub fn combinatorial(length: usize) -> Self {
        let u = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / (3.0 * length as f64));
        Self::new(length, -0.5, u)
    }
}

/// `H = −Σ_i [u σ⁺_iσ⁻_{i+1} + u⁻¹ σ⁻_iσ⁺_{i+1} + (Δ/2) σᶻ_iσᶻ_{i+1}]` on one state,
/// with the hopping amplitude of each bond supplied by `hop(i)`.
fn xxz_action(length: usize, delta: f64, hop: &impl Fn(usize) -> Complex64, s: u64) -> Vec<(u64, Complex64)> {
    let mut out = Vec::new();
    let mut diag = 0.0;
    for i in 0..length {
        let j = (i + 1) % length;
        let (a, b) = (spin_up(s, length, i), spin_up(s, length, j));
        diag -= if a == b { delta / 2.0 } else { -delta / 2.0 };
        if a != b {
            let t = flip(flip(s, length, i), length, j);
            // σ⁺_iσ⁻_j raises site i.
            let amp = if a { hop(i).inv() } else { hop(i) };
            out.push((t, -amp));
        }
    }
    out.push((s, Complex64::new(diag, 0.0)));
    out
}

/// Hamiltonian restricted to the `S_z = 0` sector.
pub fn build_xxz(p: &XXZParams) -> Result<SpinOperator> {
    check_length(p.length, SECTOR_CAP)?;
    let u = p.twist;
    SpinOperator::from_action(p.length, sector_basis(p.length), |s| {
        xxz_action(p.length, p.delta_aniso, &|_| u, s)
    })
}

/// The same Hamiltonian on the full `2^L` space.
pub fn build_xxz_full(p: &XXZParams) -> Result<SpinOperator> {
    check_length(p.length, FULL_SPACE_CAP)?;
    let u = p.twist;
    SpinOperator::from_action(p.length, full_basis(p.length), |s| {
        xxz_action(p.length, p.delta_aniso, &|_| u, s)
    })
}

/// Gauge-equivalent form with untwisted bulk bonds and `u^L` on the bond
/// between the last and first sites.
pub fn build_xxz_boundary_twist(p: &XXZParams) -> Result<SpinOperator> {
    check_length(p.length, SECTOR_CAP)?;
    let l = p.length;
    let wrap = p.twist.powu(l as u32);
    let hop = move |i: usize| if i == l - 1 { wrap } else { Complex64::new(1.0, 0.0) };
    SpinOperator::from_action(l, sector_basis(l), |s| xxz_action(l, p.delta_aniso, &hop, s))
}

/// Every nonzero entry of the full-space Hamiltonian connects states of equal
/// magnetisation.
pub fn conserves_magnetization(p: &XXZParams) -> Result<bool> {
    let h = build_xxz_full(p)?.to_dense();
    let n = h.nrows();
    Ok((0..n).all(|i| {
        (0..n).all(|j| h[(i, j)].norm() == 0.0 || (i as u64).count_ones() == (j as u64).count_ones())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l2_sector() {
        // Basis |↓↑⟩, |↑↓⟩ on a two-site ring: two bonds between the same sites.
        let p = XXZParams::new(2, -0.5, Complex64::new(1.0, 0.0));
        let h = build_xxz(&p).unwrap().to_dense();
        assert!((h[(0, 0)].re + 0.5).abs() < 1e-15);
        assert!((h[(0, 1)].re + 2.0).abs() < 1e-15);
    }

    #[test]
    fn hermitian_at_combinatorial_point() {
        for l in [4, 6, 8] {
            let h = build_xxz(&XXZParams::combinatorial(l)).unwrap();
            assert!(h.hermiticity_error() < 1e-13);
        }
    }

    #[test]
    fn magnetization_blocks() {
        assert!(conserves_magnetization(&XXZParams::combinatorial(6)).unwrap());
    }

    #[test]
    fn odd_length_rejected() {
        assert!(build_xxz(&XXZParams::combinatorial(5)).is_err());
    }
}
