//! Tile arrival: classification, deterministic application and the current
//! increments each event contributes.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::profile::HeightProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveClass {
    Reflection,
    Adsorption,
    LocalAvalanche,
    GlobalAvalanche,
}

impl MoveClass {
    pub const ALL: [MoveClass; 4] = [
        MoveClass::Reflection,
        MoveClass::Adsorption,
        MoveClass::LocalAvalanche,
        MoveClass::GlobalAvalanche,
    ];
}

/// Increments produced by a single tile arrival.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveDeltas {
    pub class: MoveClass,
    /// Tiles removed by the event, the arrived tile included.
    pub diamond: u64,
    pub global: u64,
    pub peak: u64,
    pub tiles: i64,
}

/// One tile-arrival outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionRecord {
    pub site: usize,
    #[serde(rename = "class")]
    pub move_class: MoveClass,
    pub target: HeightProfile,
    #[serde(rename = "dDiamond")]
    pub delta_diamond: u64,
    #[serde(rename = "dGlobal")]
    pub delta_global: u64,
    #[serde(rename = "dPeak")]
    pub delta_peak: u64,
    #[serde(rename = "dTiles")]
    pub delta_tiles: i64,
}

fn check_site(h: &HeightProfile, site: usize) -> Result<()> {
    if site >= h.len() {
        return Err(CoreError::SiteOutOfRange {
            site,
            length: h.len(),
        });
    }
    Ok(())
}

pub fn classify_move(h: &HeightProfile, site: usize) -> Result<MoveClass> {
    check_site(h, site)?;
    Ok(classify_raw(h.heights(), site))
}

#[inline]
pub(crate) fn classify_raw(heights: &[u32], site: usize) -> MoveClass {
    let l = heights.len();
    let x = heights[site];
    let left = heights[(site + l - 1) % l];
    let right = heights[(site + 1) % l];
    match (left < x, right < x) {
        (true, true) => MoveClass::Reflection,
        (false, false) => {
            // Valley. The fill completes two layers iff every other site is
            // already at height >= 2.
            let completes = heights
                .iter()
                .enumerate()
                .all(|(k, &y)| k == site || y >= 2);
            if completes {
                MoveClass::GlobalAvalanche
            } else {
                MoveClass::Adsorption
            }
        }
        _ => MoveClass::LocalAvalanche,
    }
}

/// Applies the arrival at `site` in place and returns the increments.
///
/// `heights` must be a valid profile; the result is again a valid profile.
pub(crate) fn apply_in_place(heights: &mut [u32], site: usize) -> MoveDeltas {
    let l = heights.len();
    let class = classify_raw(heights, site);
    match class {
        MoveClass::Reflection => MoveDeltas {
            class,
            diamond: 0,
            global: 0,
            peak: 1,
            tiles: 0,
        },
        MoveClass::Adsorption => {
            heights[site] += 2;
            MoveDeltas {
                class,
                diamond: 0,
                global: 0,
                peak: 0,
                tiles: 1,
            }
        }
        MoveClass::GlobalAvalanche => {
            heights[site] += 2;
            for y in heights.iter_mut() {
                *y -= 2;
            }
            MoveDeltas {
                class,
                diamond: l as u64,
                global: 1,
                peak: 0,
                tiles: 1 - l as i64,
            }
        }
        MoveClass::LocalAvalanche => {
            let x = heights[site];
            let right = heights[(site + 1) % l];
            // Peel one layer up the mountain until the opposite slope returns
            // to the arrival level.
            let step = if right > x { 1 } else { l - 1 };
            let mut k = (site + step) % l;
            let mut lowered = 0u64;
            while heights[k] != x {
                heights[k] -= 2;
                lowered += 1;
                k = (k + step) % l;
            }
            MoveDeltas {
                class,
                diamond: 1 + lowered,
                global: 0,
                peak: 0,
                tiles: -(lowered as i64),
            }
        }
    }
}

pub fn apply_move(h: &HeightProfile, site: usize) -> Result<TransitionRecord> {
    check_site(h, site)?;
    let mut heights = h.heights().to_vec();
    let d = apply_in_place(&mut heights, site);
    let target = HeightProfile::new(heights).map_err(|e| {
        CoreError::Consistency(format!("move at site {site} of {h} left the state space: {e}"))
    })?;
    Ok(TransitionRecord {
        site,
        move_class: d.class,
        target,
        delta_diamond: d.diamond,
        delta_global: d.global,
        delta_peak: d.peak,
        delta_tiles: d.tiles,
    })
}

/// Cumulative trajectory counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventCounters {
    pub n_total: u64,
    pub n_peak: u64,
    pub n_diamond: u64,
    pub n_global: u64,
    pub n_tiles: u64,
}

impl EventCounters {
    #[inline]
    pub fn record(&mut self, d: &MoveDeltas) {
        self.n_total += 1;
        self.n_peak += d.peak;
        self.n_diamond += d.diamond;
        self.n_global += d.global;
        self.n_tiles = self
            .n_tiles
            .checked_add_signed(d.tiles)
            .expect("tile count went negative");
    }

    /// `N = N^△ + N^◊ + n_t`.
    pub fn is_balanced(&self) -> bool {
        self.n_total == self.n_peak + self.n_diamond + self.n_tiles
    }
}
