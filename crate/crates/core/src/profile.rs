//! Periodic Dyck path configurations.
//!
//! Heights live on `L` integer positions with cyclic indexing. The substrate
//! fixes the parity class `h[i] ≡ i (mod 2)`; an adsorbed tile raises a single
//! site by two. Every stable configuration touches level 0 or 1 somewhere.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Default upper bound on `L` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// A stable interface configuration (periodic Dyck path).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct HeightProfile {
    heights: Vec<u32>,
}

pub(crate) fn check_length(length: usize) -> Result<()> {
    if length < 2 || !length.is_multiple_of(2) {
        return Err(CoreError::InvalidLength(length));
    }
    Ok(())
}

impl HeightProfile {
    /// Validates and wraps a height vector.
    pub fn new(heights: Vec<u32>) -> Result<Self> {
        let length = heights.len();
        check_length(length)?;
        for i in 0..length {
            let here = heights[i];
            let next = heights[(i + 1) % length];
            if here.abs_diff(next) != 1 {
                return Err(CoreError::InvalidProfile(format!(
                    "step {i}->{} is {here}->{next}, not ±1",
                    (i + 1) % length
                )));
            }
            if here as usize % 2 != i % 2 {
                return Err(CoreError::InvalidProfile(format!(
                    "height {here} at site {i} breaks the substrate parity"
                )));
            }
        }
        let min = heights.iter().copied().min().unwrap_or(0);
        if min > 1 {
            return Err(CoreError::InvalidProfile(format!(
                "minimum height {min} > 1: complete double layer present"
            )));
        }
        Ok(Self { heights })
    }

    /// Skips validation. Callers must uphold the profile invariants.
    pub(crate) fn from_raw(heights: Vec<u32>) -> Self {
        debug_assert!(Self::new(heights.clone()).is_ok(), "invalid profile {heights:?}");
        Self { heights }
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn into_heights(self) -> Vec<u32> {
        self.heights
    }

    pub fn height(&self, site: usize) -> u32 {
        self.heights[site]
    }

    /// Left and right neighbours of `site` under cyclic indexing.
    #[inline]
    pub fn neighbors(&self, site: usize) -> (u32, u32) {
        let l = self.heights.len();
        (self.heights[(site + l - 1) % l], self.heights[(site + 1) % l])
    }

    pub fn is_peak(&self, site: usize) -> bool {
        let (left, right) = self.neighbors(site);
        let h = self.heights[site];
        left < h && right < h
    }

    pub fn is_valley(&self, site: usize) -> bool {
        let (left, right) = self.neighbors(site);
        let h = self.heights[site];
        left > h && right > h
    }

    /// Mirror image `i -> -i (mod L)`. Preserves parity because `L` is even.
    pub fn reflected(&self) -> Self {
        let l = self.heights.len();
        let heights = (0..l).map(|i| self.heights[(l - i) % l]).collect();
        Self::from_raw(heights)
    }
}

impl TryFrom<Vec<u32>> for HeightProfile {
    type Error = CoreError;

    fn try_from(heights: Vec<u32>) -> Result<Self> {
        Self::new(heights)
    }
}

impl From<HeightProfile> for Vec<u32> {
    fn from(p: HeightProfile) -> Self {
        p.heights
    }
}

impl fmt::Debug for HeightProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HeightProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, h) in self.heights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str(")")
    }
}

/// The empty configuration `h[i] = i mod 2`.
pub fn substrate(length: usize) -> Result<HeightProfile> {
    check_length(length)?;
    Ok(HeightProfile::from_raw((0..length).map(|i| (i % 2) as u32).collect()))
}

/// Number of tiles above the substrate, `Σ (h[i] - i mod 2) / 2`.
pub fn tile_count(h: &HeightProfile) -> u64 {
    tile_count_raw(h.heights())
}

#[inline]
pub(crate) fn tile_count_raw(heights: &[u32]) -> u64 {
    let excess: u64 = heights
        .iter()
        .enumerate()
        .map(|(i, &x)| u64::from(x) - (i % 2) as u64)
        .sum();
    excess / 2
}

/// Number of strict local maxima.
pub fn count_peaks(h: &HeightProfile) -> usize {
    count_peaks_raw(h.heights())
}

#[inline]
pub(crate) fn count_peaks_raw(heights: &[u32]) -> usize {
    let l = heights.len();
    (0..l)
        .filter(|&i| {
            let x = heights[i];
            heights[(i + l - 1) % l] < x && heights[(i + 1) % l] < x
        })
        .count()
}

/// Number of strict local minima.
pub fn count_valleys(h: &HeightProfile) -> usize {
    (0..h.len()).filter(|&i| h.is_valley(i)).count()
}

/// Membership in the global-avalanche-armed set: no valley at level 0 and
/// exactly one valley at level 1.
pub fn in_omega_global(h: &HeightProfile) -> bool {
    let mut level_one = 0usize;
    for i in 0..h.len() {
        if h.is_valley(i) {
            match h.height(i) {
                0 => return false,
                1 => level_one += 1,
                _ => {}
            }
        }
    }
    level_one == 1
}

/// All stable configurations of length `length`, lexicographically ordered.
pub fn enumerate_states(length: usize) -> Result<Vec<HeightProfile>> {
    enumerate_states_capped(length, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_states_capped(length: usize, cap: usize) -> Result<Vec<HeightProfile>> {
    check_length(length)?;
    if length > cap {
        return Err(CoreError::CapExceeded { length, cap });
    }
    // Depth-first over height vectors in increasing lexicographic order. The
    // profile returns to h[0] after L steps, so no height exceeds h[0] + L/2.
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(length);
    let max_start = (length / 2 + 1) as u32;
    for start in (0..=max_start).step_by(2) {
        path.clear();
        path.push(start);
        extend(&mut path, length, &mut out);
    }
    Ok(out)
}

fn extend(path: &mut Vec<u32>, length: usize, out: &mut Vec<HeightProfile>) {
    let pos = path.len();
    let last = *path.last().expect("path seeded");
    if pos == length {
        let first = path[0];
        if last.abs_diff(first) == 1 && path.iter().copied().min() <= Some(1) {
            out.push(HeightProfile::from_raw(path.clone()));
        }
        return;
    }
    let remaining = (length - pos) as u32;
    for next in [last.wrapping_sub(1), last + 1] {
        if last == 0 && next == u32::MAX {
            continue;
        }
        // `remaining` steps are left to close the cycle back to path[0].
        if next.abs_diff(path[0]) > remaining {
            continue;
        }
        path.push(next);
        extend(path, length, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(h: &[u32]) -> HeightProfile {
        HeightProfile::new(h.to_vec()).unwrap()
    }

    #[test]
    fn substrate_examples() {
        assert_eq!(substrate(4).unwrap().heights(), &[0, 1, 0, 1]);
        assert_eq!(substrate(2).unwrap().heights(), &[0, 1]);
        assert_eq!(substrate(3), Err(CoreError::InvalidLength(3)));
        assert_eq!(substrate(0), Err(CoreError::InvalidLength(0)));
    }

    #[test]
    fn validation_rejects_bad_profiles() {
        assert!(HeightProfile::new(vec![1, 0, 1, 0]).is_err(), "parity");
        assert!(HeightProfile::new(vec![0, 1, 2, 3]).is_err(), "wrap step");
        assert!(HeightProfile::new(vec![2, 3, 2, 3]).is_err(), "min > 1");
        assert!(HeightProfile::new(vec![0, 1, 0]).is_err(), "odd length");
    }

    #[test]
    fn tile_count_examples() {
        assert_eq!(tile_count(&p(&[0, 1, 0, 1])), 0);
        assert_eq!(tile_count(&p(&[2, 1, 0, 1])), 1);
        assert_eq!(tile_count(&p(&[2, 1, 2, 3])), 3);
    }

    #[test]
    fn peaks_examples() {
        assert_eq!(count_peaks(&p(&[0, 1, 0, 1])), 2);
        assert_eq!(count_peaks(&p(&[2, 3, 2, 1])), 1);
        assert_eq!(count_peaks(&p(&[0, 1])), 1);
    }

    #[test]
    fn omega_examples() {
        assert!(in_omega_global(&p(&[2, 3, 2, 1])));
        assert!(!in_omega_global(&p(&[0, 1, 0, 1])));
        assert!(!in_omega_global(&p(&[2, 1, 2, 1])));
    }

    #[test]
    fn enumerate_small() {
        let two: Vec<Vec<u32>> = enumerate_states(2)
            .unwrap()
            .into_iter()
            .map(Into::into)
            .collect();
        assert_eq!(two, vec![vec![0, 1], vec![2, 1]]);

        let four: Vec<Vec<u32>> = enumerate_states(4)
            .unwrap()
            .into_iter()
            .map(Into::into)
            .collect();
        assert_eq!(
            four,
            vec![
                vec![0, 1, 0, 1],
                vec![0, 1, 2, 1],
                vec![2, 1, 0, 1],
                vec![2, 1, 2, 1],
                vec![2, 1, 2, 3],
                vec![2, 3, 2, 1],
            ]
        );
    }

    #[test]
    fn enumerate_cap() {
        assert_eq!(
            enumerate_states_capped(18, 16),
            Err(CoreError::CapExceeded { length: 18, cap: 16 })
        );
    }

    #[test]
    fn serde_roundtrip_validates() {
        let h = p(&[2, 1, 2, 3]);
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, "[2,1,2,3]");
        let back: HeightProfile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<HeightProfile>("[1,0]").is_err());
    }
}
