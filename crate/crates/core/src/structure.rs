//! Exhaustive structural checks of the move rules over a whole state space.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::Result;
use crate::moves::{apply_move, classify_move, MoveClass};
use crate::profile::{count_peaks, count_valleys, in_omega_global, HeightProfile};
use crate::stationary::StateSpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub length: usize,
    pub states: usize,
    pub closure: bool,
    pub balance: bool,
    pub diamond_ranges: bool,
    pub trigger_equivalence: bool,
    pub peaks_equal_valleys: bool,
    pub irreducible: bool,
    /// First violation found, if any.
    pub first_failure: Option<String>,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.closure
            && self.balance
            && self.diamond_ranges
            && self.trigger_equivalence
            && self.peaks_equal_valleys
            && self.irreducible
    }
}

/// Sites that are valleys at height 1.
fn level_one_valleys(h: &HeightProfile) -> Vec<usize> {
    (0..h.len())
        .filter(|&i| h.is_valley(i) && h.height(i) == 1)
        .collect()
}

pub fn check_structure(length: usize) -> Result<StructureReport> {
    let space = StateSpace::build(length)?;
    let mut r = StructureReport {
        length,
        states: space.dim(),
        closure: true,
        balance: true,
        diamond_ranges: true,
        trigger_equivalence: true,
        peaks_equal_valleys: true,
        irreducible: true,
        first_failure: None,
    };
    let fail = |flag: &mut bool, msg: String, first: &mut Option<String>| {
        *flag = false;
        first.get_or_insert(msg);
    };

    for h in &space.states {
        if count_peaks(h) != count_valleys(h) {
            fail(&mut r.peaks_equal_valleys, format!("{h}: peaks ≠ valleys"), &mut r.first_failure);
        }
        let armed = in_omega_global(h);
        let ones = level_one_valleys(h);
        for i in 0..length {
            let class = classify_move(h, i)?;
            let rec = match apply_move(h, i) {
                Ok(rec) => rec,
                Err(e) => {
                    fail(&mut r.closure, format!("{h} site {i}: {e}"), &mut r.first_failure);
                    continue;
                }
            };
            if rec.delta_peak as i64 + rec.delta_diamond as i64 + rec.delta_tiles != 1 {
                fail(&mut r.balance, format!("{h} site {i}: balance"), &mut r.first_failure);
            }
            let range_ok = match class {
                MoveClass::Reflection | MoveClass::Adsorption => rec.delta_diamond == 0,
                MoveClass::LocalAvalanche => rec.delta_diamond >= 2,
                MoveClass::GlobalAvalanche => rec.delta_diamond == length as u64,
            } && (rec.delta_global == 1) == (class == MoveClass::GlobalAvalanche);
            if !range_ok {
                fail(&mut r.diamond_ranges, format!("{h} site {i}: δ◊ = {}", rec.delta_diamond), &mut r.first_failure);
            }
            let predicted = armed && ones == [i];
            if predicted != (class == MoveClass::GlobalAvalanche) {
                fail(&mut r.trigger_equivalence, format!("{h} site {i}: trigger"), &mut r.first_failure);
            }
        }
    }

    // Strong connectivity: every state reachable from state 0 forwards and
    // backwards.
    let n = space.dim();
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, out) in space.moves.iter().enumerate() {
        for t in out {
            rev[t.target].push(j);
        }
    }
    let fwd: Vec<Vec<usize>> = space
        .moves
        .iter()
        .map(|out| out.iter().map(|t| t.target).collect())
        .collect();
    for adj in [&fwd, &rev] {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            fail(&mut r.irreducible, format!("{} not strongly connected to {}", space.states[k], space.states[0]), &mut r.first_failure);
        }
    }
    Ok(r)
}
