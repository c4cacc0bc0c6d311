//! Path coloring subroutines: linear-time 2-coloring and Cole-Vishkin style
//! 3-coloring in log* rounds.

use crate::gen::iterated_log;
use crate::labels::ColoringLabel;

/// Alternating {W,B} coloring of a path segment, anchored at the endpoint
/// with the smaller id, which gets W. `ids[i]` is the id of the i-th node
/// along the segment.
pub fn two_color_path(ids: &[u64]) -> Vec<ColoringLabel> {
    use ColoringLabel::{B, W};
    let n = ids.len();
    assert!(n >= 1);
    let from_front = ids[0] <= ids[n - 1];
    (0..n)
        .map(|i| {
            let dist = if from_front { i } else { n - 1 - i };
            if dist % 2 == 0 { W } else { B }
        })
        .collect()
}

fn bitlen(v: u64) -> u32 {
    64 - v.leading_zeros()
}

/// Number of Cole-Vishkin iterations needed to push colors bounded by
/// `id_max` down to at most 6 colors (values 0..=5).
pub fn cv_iterations(id_max: u64) -> u64 {
    let mut cap = id_max;
    let mut iters = 0;
    while cap > 5 {
        cap = 2 * (bitlen(cap) as u64 - 1) + 1;
        iters += 1;
    }
    iters
}

/// Proper {R,G,Y} coloring of a path segment with distinct ids, plus the
/// number of communication rounds charged (uniform across the segment).
///
/// The round schedule: one id exchange, `cv_iterations(max id)` color
/// halving steps, three color-elimination rounds bringing 6 colors down to
/// 3, and one repair round in which local id minima (the only nodes whose
/// incident edges can be unprotected by the parent forest) recolor away from
/// both neighbors.
pub fn three_color_path(ids: &[u64]) -> (Vec<ColoringLabel>, u64) {
    let id_max = ids.iter().copied().max().unwrap_or(1);
    three_color_path_with(ids, cv_iterations(id_max))
}

/// Same as [three_color_path] but with a caller-chosen iteration count, so
/// that all path segments of one graph can run the same schedule. Running
/// more iterations than necessary is harmless: once colors fit in 0..=5 the
/// halving step keeps them there.
pub fn three_color_path_with(ids: &[u64], iters: u64) -> (Vec<ColoringLabel>, u64) {
    use ColoringLabel::{G, R, Y};
    let n = ids.len();
    assert!(n >= 1);
    {
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        assert!(sorted.windows(2).all(|w| w[0] != w[1]), "duplicate ids");
    }
    if n == 1 {
        return (vec![R], 0);
    }
    let id_max = *ids.iter().max().unwrap();
    assert!(iters >= cv_iterations(id_max), "too few iterations for id range");
    let rounds = iters + 5;
    debug_assert!(cv_iterations(id_max) <= iterated_log(id_max) as u64 + 5);

    // parent of i = the larger-id neighbor (the largest if both are larger);
    // local maxima are roots
    let parent: Vec<Option<usize>> = (0..n)
        .map(|i| {
            let mut best: Option<usize> = None;
            if i > 0 && ids[i - 1] > ids[i] {
                best = Some(i - 1);
            }
            if i + 1 < n && ids[i + 1] > ids[i] && best.map_or(true, |b| ids[i + 1] > ids[b]) {
                best = Some(i + 1);
            }
            best
        })
        .collect();

    let mut colors: Vec<u64> = ids.to_vec();
    for _ in 0..iters {
        let snapshot = colors.clone();
        for i in 0..n {
            let pc = match parent[i] {
                Some(p) => snapshot[p],
                None => snapshot[i] ^ 1, // pseudo-parent for roots
            };
            let diff = snapshot[i] ^ pc;
            let bit = diff.trailing_zeros() as u64;
            colors[i] = 2 * bit + ((snapshot[i] >> bit) & 1);
        }
    }
    debug_assert!(colors.iter().all(|&c| c <= 5));

    // forest neighbors: parent plus children (nodes that picked me)
    let forest_nbrs: Vec<Vec<usize>> = {
        let mut f = vec![Vec::new(); n];
        for i in 0..n {
            if let Some(p) = parent[i] {
                f[i].push(p);
                f[p].push(i);
            }
        }
        f
    };
    for c in [5u64, 4, 3] {
        let snapshot = colors.clone();
        for i in 0..n {
            if snapshot[i] == c {
                colors[i] = (0..3)
                    .find(|&cand| forest_nbrs[i].iter().all(|&j| snapshot[j] != cand))
                    .expect("a free color among 3 exists with at most 2 forest neighbors");
            }
        }
    }
    // repair round: local minima recolor away from both path neighbors
    let snapshot = colors.clone();
    for i in 0..n {
        let local_min = (i == 0 || ids[i] < ids[i - 1]) && (i + 1 == n || ids[i] < ids[i + 1]);
        if local_min {
            colors[i] = (0..3)
                .find(|&cand| {
                    (i == 0 || snapshot[i - 1] != cand) && (i + 1 == n || snapshot[i + 1] != cand)
                })
                .expect("a free color among 3 exists with 2 neighbors");
        }
    }

    let palette = [R, G, Y];
    (colors.iter().map(|&c| palette[c as usize]).collect(), rounds)
}
