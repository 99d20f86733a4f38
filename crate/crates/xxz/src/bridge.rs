//! The XXZ ground energy as a second route to the generating function.
//!
//! `Λ₀(α, β) = −e^β E₀(Δ, u) − 3L/4`, with `e^{−β} = 2 cos γ`, `Δ = −cos γ`
//! and `e^α = (u^N + u^{−N})²`.

use num_complex::Complex64;
use serde::Serialize;

use rpm_core::{scgf, DeformedParams, SolverOptions, StateSpace};

use crate::error::{check_length, Result, XxzError};
use crate::hamiltonian::{build_xxz, build_xxz_boundary_twist, XXZParams};
use crate::lanczos::{dense_spectrum, ground_state, LanczosOptions};
use crate::spin::{tl_generator_sector, SECTOR_CAP};

/// `(Δ, u)` for a point `(α, β)` of the Hermitian regime
/// `e^α ≤ 4`, `e^{−β} ≤ 2`.
pub fn bridge_params(length: usize, alpha: f64, beta: f64) -> Result<XXZParams> {
    check_length(length, SECTOR_CAP)?;
    if !(alpha.is_finite() && beta.is_finite()) {
        return Err(XxzError::Domain(format!("non-finite (α, β) = ({alpha}, {beta})")));
    }
    let c = alpha.exp().sqrt() / 2.0;
    if c > 1.0 {
        return Err(XxzError::Domain(format!("e^α = {} exceeds 4", alpha.exp())));
    }
    let two_q = (-beta).exp();
    if two_q > 2.0 {
        return Err(XxzError::Domain(format!("e^(−β) = {two_q} exceeds 2")));
    }
    let n = (length / 2) as f64;
    let theta = c.acos();
    Ok(XXZParams::new(length, -two_q / 2.0, Complex64::from_polar(1.0, theta / n)))
}

#[derive(Debug, Clone, Serialize)]
pub struct BridgeResult {
    pub length: usize,
    pub alpha: f64,
    pub beta: f64,
    pub params: XXZParams,
    pub energy: f64,
    pub energy_residual: f64,
    pub lambda_xxz: f64,
    pub lambda_scgf: f64,
    pub difference: f64,
}

pub const BRIDGE_TOLERANCE: f64 = 1e-8;

pub fn lambda_bridge(length: usize, alpha: f64, beta: f64) -> Result<BridgeResult> {
    let params = bridge_params(length, alpha, beta)?;
    let h = build_xxz(&params)?;
    let g = ground_state(&h, &LanczosOptions::default())?;
    let lambda_xxz = -beta.exp() * g.energy - 0.75 * length as f64;
    let space = StateSpace::build(length)?;
    let lambda_scgf = scgf(&space, DeformedParams::new(alpha, beta), &SolverOptions::default())?.lambda;
    Ok(BridgeResult {
        length,
        alpha,
        beta,
        params,
        energy: g.energy,
        energy_residual: g.residual,
        lambda_xxz,
        lambda_scgf,
        difference: (lambda_xxz - lambda_scgf).abs(),
    })
}

/// Largest entry of `ρ(Σ_i (e_i − 1)) − (−H − 3L/4)` on the sector, at the
/// combinatorial point.
pub fn rho_l_star_error(length: usize) -> Result<f64> {
    let p = XXZParams::combinatorial(length);
    let q = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
    let h = build_xxz(&p)?.to_dense();
    let n = h.nrows();
    let mut lhs = nalgebra::DMatrix::<Complex64>::identity(n, n) * Complex64::new(-(length as f64), 0.0);
    for i in 0..length {
        lhs += tl_generator_sector(length, q, p.twist, i)?.to_dense();
    }
    let rhs = -h - nalgebra::DMatrix::<Complex64>::identity(n, n) * Complex64::new(0.75 * length as f64, 0.0);
    Ok((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Largest eigenvalue difference between the bond-twisted and the
/// boundary-twisted Hamiltonians.
pub fn twist_equivalence_error(p: &XXZParams) -> Result<f64> {
    let a = dense_spectrum(&build_xxz(p)?);
    let b = dense_spectrum(&build_xxz_boundary_twist(p)?);
    Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// `|E_Lanczos − min eig(H)|` from dense diagonalisation.
pub fn dense_ground_error(p: &XXZParams) -> Result<f64> {
    let h = build_xxz(p)?;
    let g = ground_state(&h, &LanczosOptions::default())?;
    Ok((g.energy - dense_spectrum(&h)[0]).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stochastic_point_maps_to_combinatorial() {
        let p = bridge_params(6, 0.0, 0.0).unwrap();
        let c = XXZParams::combinatorial(6);
        assert!((p.delta_aniso - c.delta_aniso).abs() < 1e-15);
        assert!((p.twist - c.twist).norm() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(bridge_params(4, 2.0, 0.0).is_err());
        assert!(bridge_params(4, 0.0, -1.0).is_err());
        assert!(bridge_params(4, f64::NAN, 0.0).is_err());
    }
}
