use proptest::prelude::*;
use rpm_core::{
    apply_move, check_structure, classify_move, count_peaks, count_valleys, enumerate_states,
    tile_count, HeightProfile, MoveClass,
};

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn structure_exhaustive_up_to_10() {
    for l in [2, 4, 6, 8, 10] {
        let r = check_structure(l).unwrap();
        assert!(r.all_pass(), "{r:?}");
    }
}

#[test]
fn state_counts_are_central_binomials() {
    for l in (2..=12).step_by(2) {
        let n = enumerate_states(l).unwrap().len() as u64;
        assert_eq!(n, binomial(l as u64, l as u64 / 2), "L={l}");
    }
}

/// Every ±1 cyclic walk with the right parity and bounded height, filtered by
/// the profile invariants.
fn brute_force(l: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for steps in 0u32..(1 << l) {
        for start in (0..=l as i64).step_by(2) {
            let mut h = vec![start];
            for i in 0..l - 1 {
                let d = if steps >> i & 1 == 1 { 1 } else { -1 };
                h.push(h[i] + d);
            }
            let closes = (h[l - 1] - h[0]).abs() == 1 && steps >> (l - 1) & 1 == u32::from(h[0] > h[l - 1]);
            let min = *h.iter().min().unwrap();
            if closes && (0..=1).contains(&min) {
                out.push(h.iter().map(|&x| x as u32).collect());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for l in [2, 4, 6, 8] {
        let got: Vec<Vec<u32>> = enumerate_states(l).unwrap().into_iter().map(Into::into).collect();
        assert_eq!(got, brute_force(l), "L={l}");
    }
}

fn profile_strategy() -> impl Strategy<Value = HeightProfile> {
    (1usize..=8).prop_flat_map(|n| {
        let states = enumerate_states(2 * n).unwrap();
        (0..states.len()).prop_map(move |k| states[k].clone())
    })
}

proptest! {
    #[test]
    fn move_invariants(h in profile_strategy(), site in 0usize..16) {
        let site = site % h.len();
        let class = classify_move(&h, site).unwrap();
        let rec = apply_move(&h, site).unwrap();
        prop_assert_eq!(rec.move_class, class);
        prop_assert_eq!(rec.delta_peak as i64 + rec.delta_diamond as i64 + rec.delta_tiles, 1);
        prop_assert_eq!(
            tile_count(&rec.target) as i64 - tile_count(&h) as i64,
            rec.delta_tiles
        );
        if class == MoveClass::Reflection {
            prop_assert_eq!(&rec.target, &h);
        }
        prop_assert_eq!(count_peaks(&rec.target), count_valleys(&rec.target));
    }

    #[test]
    fn reflection_commutes_with_moves(h in profile_strategy(), site in 0usize..16) {
        let l = h.len();
        let site = site % l;
        let direct = apply_move(&h, site).unwrap();
        let mirrored = apply_move(&h.reflected(), (l - site) % l).unwrap();
        prop_assert_eq!(mirrored.target, direct.target.reflected());
        prop_assert_eq!(mirrored.delta_diamond, direct.delta_diamond);
    }
}
