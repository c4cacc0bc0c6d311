//! Algorithm A for the d-free weight problem on one component.
//!
//! With L = ceil(log_{d+1} n): every pair of A nodes at hop distance at most
//! 2L+2 connects the whole path between them; each remaining A node roots a
//! minimum-Copy assignment on its (L+1)-hop ball with depth cap L (the
//! boundary layer is forced to Decline and thereby counted against the d
//! budget of depth-L copiers); everything else declines. Every node in the
//! component is charged 3L+3 rounds.

use crate::algo::mincopy::min_copy_assignment;
use crate::labels::WeightPrimary;
use crate::tree::{induced_components, InputLabel, Tree};
use WeightPrimary::{Connect, Copy, Decline};

/// Per-seed ball statistics: `ball_size` is the L-hop neighborhood of the
/// seed, `copies` the number of Copy outputs inside it.
#[derive(Debug, Clone)]
pub struct SeedStat {
    pub seed: usize,
    pub ball_size: usize,
    pub copies: usize,
}

pub struct DfreeResult {
    pub out: Vec<WeightPrimary>,
    /// uniform per-node round charge, 3L+3
    pub rounds: u64,
    pub seeds: Vec<SeedStat>,
}

/// Smallest L with (d+1)^L >= n.
pub fn log_ceil(base: u64, n: u64) -> u64 {
    assert!(base >= 2 && n >= 1);
    let mut l = 0;
    let mut pow = 1u64;
    while pow < n {
        pow = pow.saturating_mul(base);
        l += 1;
    }
    l
}

pub fn dfree_algorithm_a(
    tree: &Tree,
    inputs: &[InputLabel],
    d: usize,
    n: u64,
) -> DfreeResult {
    assert!(d >= 1);
    let nc = tree.node_count();
    assert_eq!(inputs.len(), nc);
    let cap = log_ceil(d as u64 + 1, n);
    let connect_dist = 2 * cap + 2;
    let mut out: Vec<Option<WeightPrimary>> = vec![None; nc];
    let a_nodes: Vec<usize> =
        (0..nc).filter(|&v| inputs[v] == InputLabel::Active).collect();

    // Connect all short A-A paths
    let mut dist = vec![u64::MAX; nc];
    let mut pred = vec![usize::MAX; nc];
    for &a in &a_nodes {
        let mut queue = std::collections::VecDeque::new();
        let mut touched = vec![a];
        dist[a] = 0;
        queue.push_back(a);
        while let Some(v) = queue.pop_front() {
            if dist[v] == connect_dist {
                continue;
            }
            for u in tree.neighbors(v) {
                if dist[u] == u64::MAX {
                    dist[u] = dist[v] + 1;
                    pred[u] = v;
                    touched.push(u);
                    queue.push_back(u);
                }
            }
        }
        for &b in &a_nodes {
            // each unordered pair once
            if b <= a || dist[b] == u64::MAX {
                continue;
            }
            let mut w = b;
            loop {
                out[w] = Some(Connect);
                if w == a {
                    break;
                }
                w = pred[w];
            }
        }
        for v in touched {
            dist[v] = u64::MAX;
            pred[v] = usize::MAX;
        }
    }

    // remaining A nodes seed minimum-Copy balls
    let mut seeds = Vec::new();
    for &s in &a_nodes {
        if out[s].is_some() {
            continue;
        }
        let mut keep = vec![false; nc];
        let mut ball_size = 0usize; // nodes within cap hops
        let mut dq = std::collections::VecDeque::new();
        let mut depth = vec![u64::MAX; nc];
        depth[s] = 0;
        dq.push_back(s);
        while let Some(v) = dq.pop_front() {
            keep[v] = true;
            debug_assert!(out[v].is_none(), "seed ball overlaps a Connect path");
            debug_assert!(v == s || inputs[v] == InputLabel::Weight);
            if depth[v] <= cap {
                ball_size += 1;
            }
            if depth[v] == cap + 1 {
                continue;
            }
            for u in tree.neighbors(v) {
                if depth[u] == u64::MAX {
                    depth[u] = depth[v] + 1;
                    dq.push_back(u);
                }
            }
        }
        let comps = induced_components(tree, &keep);
        assert_eq!(comps.len(), 1);
        let comp = &comps[0];
        let root = comp.nodes.binary_search(&s).unwrap();
        let assign = min_copy_assignment(&comp.tree, root, d, cap)
            .expect("copy assignment feasible at cap = ceil(log_{d+1} n)");
        let mut copies = 0;
        for (i, &v) in comp.nodes.iter().enumerate() {
            out[v] = Some(if assign.copy[i] { Copy } else { Decline });
            if assign.copy[i] {
                copies += 1;
            }
        }
        seeds.push(SeedStat { seed: s, ball_size, copies });
    }

    let out = out.into_iter().map(|o| o.unwrap_or(Decline)).collect();
    DfreeResult { out, rounds: 3 * cap + 3, seeds }
}
