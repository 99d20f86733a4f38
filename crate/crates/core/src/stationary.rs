//! Exact stationary distribution of the forward generator and the stationary
//! observables built from it.
//!
//! States are indexed in the lexicographic order of [`enumerate_states`]. The
//! kernel vector is obtained from the bordered system `A v = e_0`, where `A`
//! is the generator with row 0 replaced by ones. `A` is nonsingular exactly
//! when the kernel is one-dimensional.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::moves::apply_in_place;
use crate::profile::{
    count_peaks_raw, enumerate_states, in_omega_global, HeightProfile,
};

/// Largest dimension solved by dense Bareiss elimination under
/// [`KernelMethod::Auto`].
pub const BAREISS_MAX_DIM: usize = 300;

/// One site's move out of a source state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub site: usize,
    pub target: usize,
    pub diamond: u64,
    pub global: u64,
    pub peak: u64,
}

/// Enumerated configurations together with all `L` moves out of each.
#[derive(Debug, Clone)]
pub struct StateSpace {
    pub length: usize,
    pub states: Vec<HeightProfile>,
    /// `moves[j]` lists the transitions out of state `j`, one per site.
    pub moves: Vec<Vec<Transition>>,
}

impl StateSpace {
    pub fn build(length: usize) -> Result<Self> {
        let states = enumerate_states(length)?;
        let index: HashMap<&[u32], usize> = states
            .iter()
            .enumerate()
            .map(|(k, s)| (s.heights(), k))
            .collect();
        let mut moves = Vec::with_capacity(states.len());
        let mut buf = vec![0u32; length];
        for s in &states {
            let mut out = Vec::with_capacity(length);
            for site in 0..length {
                buf.copy_from_slice(s.heights());
                let d = apply_in_place(&mut buf, site);
                let target = *index.get(buf.as_slice()).ok_or_else(|| {
                    CoreError::Consistency(format!(
                        "move at site {site} of {s} produced {buf:?}, outside the state space"
                    ))
                })?;
                out.push(Transition {
                    site,
                    target,
                    diamond: d.diamond,
                    global: d.global,
                    peak: d.peak,
                });
            }
            moves.push(out);
        }
        Ok(Self {
            length,
            states,
            moves,
        })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, h: &HeightProfile) -> Option<usize> {
        self.states.binary_search(h).ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseRationalMatrix {
    pub dimension: usize,
    /// `(row, col) -> value`, zero entries omitted.
    pub entries: BTreeMap<(usize, usize), BigRational>,
}

impl SparseRationalMatrix {
    pub fn get(&self, row: usize, col: usize) -> BigRational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn column_sums(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dimension];
        for ((_, c), v) in &self.entries {
            out[*c] += v;
        }
        out
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dimension];
        for ((r, _), v) in &self.entries {
            out[*r] += v;
        }
        out
    }
}

/// Integer generator in dense row-major form; entry `(target, source)`.
fn integer_generator(space: &StateSpace) -> Vec<Vec<i64>> {
    let n = space.dim();
    let mut g = vec![vec![0i64; n]; n];
    for (j, out) in space.moves.iter().enumerate() {
        for t in out {
            // Reflections leave the state unchanged; gain and loss cancel.
            if t.target != j {
                g[t.target][j] += 1;
                g[j][j] -= 1;
            }
        }
    }
    g
}

/// Forward generator `L*` with `(C, C')` the number of sites moving `C'` to `C`.
pub fn build_generator(length: usize) -> Result<SparseRationalMatrix> {
    Ok(generator_of(&StateSpace::build(length)?))
}

pub fn generator_of(space: &StateSpace) -> SparseRationalMatrix {
    let g = integer_generator(space);
    let mut entries = BTreeMap::new();
    for (r, row) in g.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v != 0 {
                entries.insert((r, c), BigRational::from_integer(v.into()));
            }
        }
    }
    SparseRationalMatrix {
        dimension: space.dim(),
        entries,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum KernelMethod {
    /// Bareiss up to [`BAREISS_MAX_DIM`], modular beyond.
    #[default]
    Auto,
    Bareiss,
    Modular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryVector {
    pub length: usize,
    pub states: Vec<HeightProfile>,
    pub probabilities: Vec<BigRational>,
    /// Coprime positive integers proportional to `probabilities`.
    pub integer_form: Vec<BigInt>,
    pub integer_sum: BigInt,
    pub method: KernelMethod,
}

impl StationaryVector {
    pub fn probability(&self, h: &HeightProfile) -> Option<&BigRational> {
        self.states
            .binary_search(h)
            .ok()
            .map(|k| &self.probabilities[k])
    }

    pub fn min_integer(&self) -> BigInt {
        self.integer_form
            .iter()
            .min()
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Sum over the basis doubled by the non-contractible loop parity bit.
    pub fn doubled_integer_sum(&self) -> BigInt {
        &self.integer_sum * 2
    }
}

pub fn stationary_distribution(length: usize) -> Result<StationaryVector> {
    stationary_with(&StateSpace::build(length)?, KernelMethod::Auto)
}

pub fn stationary_with(space: &StateSpace, method: KernelMethod) -> Result<StationaryVector> {
    let g = integer_generator(space);
    let n = g.len();
    let method = match method {
        KernelMethod::Auto if n <= BAREISS_MAX_DIM => KernelMethod::Bareiss,
        KernelMethod::Auto => KernelMethod::Modular,
        m => m,
    };
    let probabilities = match method {
        KernelMethod::Bareiss => bareiss_kernel(&g)?,
        KernelMethod::Modular => modular_kernel(&g)?,
        KernelMethod::Auto => unreachable!(),
    };
    certify(&g, &probabilities)?;

    let den = probabilities
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let scaled: Vec<BigInt> = probabilities
        .iter()
        .map(|p| p.numer() * (&den / p.denom()))
        .collect();
    let g_all = scaled.iter().fold(BigInt::zero(), |acc, k| acc.gcd(k));
    let integer_form: Vec<BigInt> = scaled.iter().map(|k| k / &g_all).collect();
    let integer_sum = integer_form.iter().sum();
    Ok(StationaryVector {
        length: space.length,
        states: space.states.clone(),
        probabilities,
        integer_form,
        integer_sum,
        method,
    })
}

/// Exact check that `G π = 0`, `Σ π = 1` and `π > 0`.
fn certify(g: &[Vec<i64>], pi: &[BigRational]) -> Result<()> {
    let total: BigRational = pi.iter().sum();
    if !total.is_one() {
        return Err(CoreError::Consistency(format!("stationary mass is {total}, not 1")));
    }
    if let Some(k) = pi.iter().position(|p| !p.is_positive()) {
        return Err(CoreError::Consistency(format!("π[{k}] = {} is not positive", pi[k])));
    }
    for (r, row) in g.iter().enumerate() {
        let mut acc = BigRational::zero();
        for (c, &v) in row.iter().enumerate() {
            if v != 0 {
                acc += &pi[c] * BigRational::from_integer(v.into());
            }
        }
        if !acc.is_zero() {
            return Err(CoreError::Consistency(format!("(G π)[{r}] = {acc} ≠ 0")));
        }
    }
    Ok(())
}

fn bordered(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a = g.to_vec();
    a[0].iter_mut().for_each(|v| *v = 1);
    a
}

fn singular() -> CoreError {
    CoreError::Consistency("generator kernel is not one-dimensional".into())
}

/// Fraction-free Gaussian elimination on `[A | e_0]`, then rational back
/// substitution.
fn bareiss_kernel(g: &[Vec<i64>]) -> Result<Vec<BigRational>> {
    let n = g.len();
    let mut m: Vec<Vec<BigInt>> = bordered(g)
        .into_iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row: Vec<BigInt> = row.into_iter().map(BigInt::from).collect();
            row.push(if r == 0 { BigInt::one() } else { BigInt::zero() });
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero()).ok_or_else(singular)?;
        m.swap(k, p);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[k]);
            for j in k + 1..=n {
                let mut v = pivot * &row[j];
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v -= &f * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                acc -= &x[j] * BigRational::from_integer(m[i][j].clone());
            }
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Descending primes below 2^31, so products of residues fit in a `u64`.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 30..1u64 << 31).rev().filter(|&p| is_prime(p))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Solves `A x = e_0` over `F_p`; `None` if `A` is singular mod `p`.
fn solve_mod(a: &[Vec<i64>], p: u64) -> Option<Vec<u64>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v: Vec<u64> = row.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
            v.push(u64::from(r == 0));
            v
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&r| m[r][k] != 0)?;
        m.swap(k, piv);
        let inv = pow_mod(m[k][k], p - 2, p);
        for j in k..=n {
            m[k][j] = m[k][j] * inv % p;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pr = &top[k];
        for row in rest.iter_mut() {
            let f = row[k];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for j in k..=n {
                if pr[j] != 0 {
                    row[j] = (row[j] + nf * pr[j]) % p;
                }
            }
        }
    }
    let mut x = vec![0u64; n];
    for i in (0..n).rev() {
        let mut acc = m[i][n];
        for j in i + 1..n {
            if m[i][j] != 0 {
                acc = (acc + p - m[i][j] * x[j] % p) % p;
            }
        }
        x[i] = acc;
    }
    Some(x)
}

/// Smallest-denominator `n/d ≡ a (mod m)` with `|n|, d ≤ sqrt(m/2)`.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Multi-modular solve: CRT over 31-bit primes until rational reconstruction
/// yields a vector that passes the exact certificate.
fn modular_kernel(g: &[Vec<i64>]) -> Result<Vec<BigRational>> {
    const MAX_PRIMES: usize = 64;
    const MAX_SINGULAR: usize = 4;
    let a = bordered(g);
    let n = a.len();
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); n];
    let mut used = 0usize;
    let mut singular_hits = 0usize;
    for p in primes() {
        let Some(x) = solve_mod(&a, p) else {
            singular_hits += 1;
            if singular_hits >= MAX_SINGULAR {
                return Err(singular());
            }
            continue;
        };
        // CRT: r ≡ residues (mod modulus), r ≡ x (mod p).
        let pb = BigInt::from(p);
        let m_mod_p = (&modulus % &pb).to_u64().expect("fits");
        let inv = pow_mod(m_mod_p, p - 2, p);
        for (r, xi) in residues.iter_mut().zip(&x) {
            let r_mod_p = (&*r % &pb).to_u64().expect("fits");
            let t = (xi + p - r_mod_p) % p * inv % p;
            *r += &modulus * t;
        }
        modulus *= pb;
        used += 1;

        let candidate: Option<Vec<BigRational>> = residues
            .iter()
            .map(|r| rational_reconstruction(r, &modulus))
            .collect();
        if let Some(c) = candidate {
            if certify(g, &c).is_ok() {
                return Ok(c);
            }
        }
        if used >= MAX_PRIMES {
            break;
        }
    }
    Err(CoreError::Consistency(format!(
        "modular kernel did not certify after {used} primes"
    )))
}

/// Stationary observables of one system size.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryObservables {
    pub expected_peaks: BigRational,
    pub prob_omega_global: BigRational,
    pub drift_diamond: BigRational,
    pub drift_global: BigRational,
}

impl StationaryObservables {
    /// `J^◊ + E n^△ = L`.
    pub fn tile_balance_holds(&self, length: usize) -> bool {
        &self.drift_diamond + &self.expected_peaks == BigRational::from_integer(length.into())
    }
}

pub fn expected_peaks(pi: &StationaryVector) -> BigRational {
    pi.states
        .iter()
        .zip(&pi.probabilities)
        .map(|(s, p)| p * BigRational::from_integer(count_peaks_raw(s.heights()).into()))
        .sum()
}

pub fn prob_omega_global(pi: &StationaryVector) -> BigRational {
    pi.states
        .iter()
        .zip(&pi.probabilities)
        .filter(|(s, _)| in_omega_global(s))
        .map(|(_, p)| p.clone())
        .sum()
}

/// `(J^◊, J^⟲)` summed over every site's move out of each state.
pub fn exact_drifts(space: &StateSpace, pi: &StationaryVector) -> (BigRational, BigRational) {
    let mut jd = BigRational::zero();
    let mut jg = BigRational::zero();
    for (out, p) in space.moves.iter().zip(&pi.probabilities) {
        let d: u64 = out.iter().map(|t| t.diamond).sum();
        let g: u64 = out.iter().map(|t| t.global).sum();
        jd += p * BigRational::from_integer(d.into());
        jg += p * BigRational::from_integer(g.into());
    }
    (jd, jg)
}

pub fn observables(space: &StateSpace, pi: &StationaryVector) -> StationaryObservables {
    let (drift_diamond, drift_global) = exact_drifts(space, pi);
    StationaryObservables {
        expected_peaks: expected_peaks(pi),
        prob_omega_global: prob_omega_global(pi),
        drift_diamond,
        drift_global,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn l2_generator() {
        let g = build_generator(2).unwrap();
        assert_eq!(g.get(0, 0), r(-1, 1));
        assert_eq!(g.get(1, 0), r(1, 1));
        assert_eq!(g.get(0, 1), r(1, 1));
        assert_eq!(g.get(1, 1), r(-1, 1));
    }

    #[test]
    fn column_sums_vanish_rows_do_not() {
        for l in [2, 4, 6, 8, 10] {
            let g = build_generator(l).unwrap();
            assert!(g.column_sums().iter().all(Zero::is_zero), "L={l}");
        }
        let g4 = build_generator(4).unwrap();
        assert!(g4.row_sums().iter().any(|s| !s.is_zero()));
    }

    #[test]
    fn l2_stationary() {
        let pi = stationary_distribution(2).unwrap();
        assert_eq!(pi.probabilities, vec![r(1, 2), r(1, 2)]);
        assert_eq!(pi.integer_sum, 2.into());
    }

    #[test]
    fn l4_reflection_symmetry() {
        let pi = stationary_distribution(4).unwrap();
        let a = HeightProfile::new(vec![2, 3, 2, 1]).unwrap();
        let b = HeightProfile::new(vec![2, 1, 2, 3]).unwrap();
        assert_eq!(pi.probability(&a), pi.probability(&b));
    }

    #[test]
    fn bareiss_and_modular_agree() {
        for l in [2, 4, 6, 8] {
            let space = StateSpace::build(l).unwrap();
            let a = stationary_with(&space, KernelMethod::Bareiss).unwrap();
            let b = stationary_with(&space, KernelMethod::Modular).unwrap();
            assert_eq!(a.probabilities, b.probabilities, "L={l}");
        }
    }

    #[test]
    fn l4_observables() {
        let space = StateSpace::build(4).unwrap();
        let pi = stationary_with(&space, KernelMethod::Auto).unwrap();
        let o = observables(&space, &pi);
        assert_eq!(o.expected_peaks, r(8, 5));
        assert_eq!(o.prob_omega_global, r(1, 5));
        assert_eq!(o.drift_diamond, r(12, 5));
        assert_eq!(o.drift_global, r(1, 5));
        assert!(o.tile_balance_holds(4));
    }

    #[test]
    fn reconstruction_recovers_small_fraction() {
        let m = BigInt::from(1_000_000_007u64);
        // 3/7 mod m
        let inv7 = BigInt::from(pow_mod(7, 1_000_000_005, 1_000_000_007));
        let a = (BigInt::from(3) * inv7) % &m;
        assert_eq!(rational_reconstruction(&a, &m), Some(r(3, 7)));
    }
}
