//! Minimum-Copy assignment on a rooted weight tree.
//!
//! The root must Copy; a Copy node may let at most d of its children
//! Decline, and a declined node's whole subtree declines with it; nodes
//! deeper than `depth_cap` must Decline. Under these rules the Copy set is a
//! subtree containing the root, and a bottom-up DP finds the exact minimum
//! number of Copy nodes: a Copy node keeps its max(0, children - d) cheapest
//! copy-feasible children and declines the rest.

use crate::tree::Tree;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinCopyError {
    #[error("node {node} is forced to Copy but cannot within the depth cap")]
    Infeasible { node: usize },
}

#[derive(Debug, Clone)]
pub struct CopyAssignment {
    /// true = Copy, false = Decline
    pub copy: Vec<bool>,
    pub copies: usize,
}

struct Rooted {
    order: Vec<usize>, // BFS order from the root
    children: Vec<Vec<usize>>,
    depth: Vec<u64>,
}

fn root_at(tree: &Tree, root: usize) -> Rooted {
    let n = tree.node_count();
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0u64; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for u in tree.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                depth[u] = depth[v] + 1;
                children[v].push(u);
                order.push(u);
            }
        }
    }
    assert_eq!(order.len(), n, "weight tree must be connected");
    Rooted { order, children, depth }
}

pub fn min_copy_assignment(
    tree: &Tree,
    root: usize,
    d: usize,
    depth_cap: u64,
) -> Result<CopyAssignment, MinCopyError> {
    let n = tree.node_count();
    let r = root_at(tree, root);

    // cost[v] = minimum Copy count in v's subtree when v itself copies;
    // None when v cannot legally copy
    let mut cost: Vec<Option<u64>> = vec![None; n];
    for &v in r.order.iter().rev() {
        if r.depth[v] > depth_cap {
            continue;
        }
        let kids = &r.children[v];
        let need = kids.len().saturating_sub(d);
        let mut feasible: Vec<(u64, usize)> = kids
            .iter()
            .filter_map(|&u| cost[u].map(|c| (c, u)))
            .collect();
        if feasible.len() < need {
            continue;
        }
        // keep the cheapest; on ties decline the higher-index child
        feasible.sort_unstable();
        let total: u64 = 1 + feasible[..need].iter().map(|&(c, _)| c).sum::<u64>();
        cost[v] = Some(total);
    }
    if cost[root].is_none() {
        return Err(MinCopyError::Infeasible { node: root });
    }

    // reconstruct top-down
    let mut copy = vec![false; n];
    copy[root] = true;
    let mut copies = 1usize;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        let kids = &r.children[v];
        let need = kids.len().saturating_sub(d);
        if need == 0 {
            continue;
        }
        let mut feasible: Vec<(u64, usize)> = kids
            .iter()
            .filter_map(|&u| cost[u].map(|c| (c, u)))
            .collect();
        feasible.sort_unstable();
        for &(_, u) in &feasible[..need] {
            copy[u] = true;
            copies += 1;
            stack.push(u);
        }
    }
    debug_assert_eq!(copies as u64, cost[root].unwrap());
    Ok(CopyAssignment { copy, copies })
}

/// The heaviest-subtree greedy: every Copy node declines its min(children, d)
/// children with the largest subtrees (higher index on ties) and copies the
/// rest. Returns None when the greedy runs into the depth cap. Serves as an
/// upper-bound oracle for the DP.
pub fn greedy_copy_count(tree: &Tree, root: usize, d: usize, depth_cap: u64) -> Option<usize> {
    let r = root_at(tree, root);
    let n = tree.node_count();
    let mut size = vec![1u64; n];
    for &v in r.order.iter().rev() {
        for &u in &r.children[v] {
            size[v] += size[u];
        }
    }
    let mut copies = 0usize;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        if r.depth[v] > depth_cap {
            return None;
        }
        copies += 1;
        let mut kids: Vec<usize> = r.children[v].clone();
        // decline the largest first, ties toward higher index
        kids.sort_unstable_by_key(|&u| (std::cmp::Reverse(size[u]), std::cmp::Reverse(u)));
        for &u in kids.iter().skip(d.min(kids.len())) {
            stack.push(u);
        }
    }
    Some(copies)
}
