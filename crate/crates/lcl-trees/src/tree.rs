//! Immutable bounded-degree trees in CSR form.
//!
//! "Length" of a path means its number of NODES everywhere in this crate.
//! Hop distances (edge counts) are always called "distance".

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("cycle detected (edge {0}-{1})")]
    Cycle(usize, usize),
    #[error("disconnected: {0} components")]
    Disconnected(usize),
    #[error("duplicate ids")]
    DuplicateIds,
    #[error("self loop at node {0}")]
    SelfLoop(usize),
    #[error("empty tree")]
    Empty,
    #[error("ids length {0} does not match node count {1}")]
    IdsLength(usize, usize),
    #[error("delta must be at least 3, got {0}")]
    DeltaTooSmall(usize),
}

/// Per-node input label for weighted instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InputLabel {
    Active,
    Weight,
}

/// Connected acyclic graph with unique node ids, stored as a CSR adjacency list.
/// Immutable after construction; all algorithms work on scratch arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    max_degree: usize,
    offsets: Vec<u32>,
    adj: Vec<u32>,
    ids: Vec<u64>,
}

impl Tree {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: usize) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    /// Neighbors of `v` in ascending index order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[self.offsets[v] as usize..self.offsets[v + 1] as usize]
            .iter()
            .map(|&u| u as usize)
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    /// Edges as (u, v) with u < v, in canonical order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n.saturating_sub(1));
        for v in 0..self.n {
            for u in self.neighbors(v) {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    /// Same structure with a different id assignment.
    pub fn with_ids(&self, ids: Vec<u64>) -> Result<Tree, TreeError> {
        if ids.len() != self.n {
            return Err(TreeError::IdsLength(ids.len(), self.n));
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateIds);
        }
        Ok(Tree { ids, ..self.clone() })
    }
}

/// Builds a tree from an unordered edge list on consecutive node indices.
/// An empty edge list yields the single-node tree. Default ids are 1..=n.
pub fn build_tree(edges: &[(usize, usize)], ids: Option<Vec<u64>>) -> Result<Tree, TreeError> {
    let n = if edges.is_empty() {
        1
    } else {
        edges.iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1
    };
    if n == 0 {
        return Err(TreeError::Empty);
    }

    // Union-find cycle check; a repeated pair collapses to a cycle too.
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for &(u, v) in edges {
        if u == v {
            return Err(TreeError::SelfLoop(u));
        }
        let (ru, rv) = (find(&mut parent, u as u32), find(&mut parent, v as u32));
        if ru == rv {
            return Err(TreeError::Cycle(u, v));
        }
        parent[ru as usize] = rv;
    }
    if edges.len() + 1 != n {
        let mut roots = std::collections::HashSet::new();
        for x in 0..n as u32 {
            roots.insert(find(&mut parent, x));
        }
        return Err(TreeError::Disconnected(roots.len()));
    }

    let mut deg = vec![0u32; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let max_degree = deg.iter().copied().max().unwrap_or(0).max(1) as usize;

    let mut offsets = vec![0u32; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + deg[v];
    }
    let mut cursor = offsets[..n].to_vec();
    let mut adj = vec![0u32; edges.len() * 2];
    for &(u, v) in edges {
        adj[cursor[u] as usize] = v as u32;
        cursor[u] += 1;
        adj[cursor[v] as usize] = u as u32;
        cursor[v] += 1;
    }
    for v in 0..n {
        adj[offsets[v] as usize..offsets[v + 1] as usize].sort_unstable();
    }

    let ids = match ids {
        Some(ids) => {
            if ids.len() != n {
                return Err(TreeError::IdsLength(ids.len(), n));
            }
            let mut sorted = ids.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(TreeError::DuplicateIds);
            }
            ids
        }
        None => (1..=n as u64).collect(),
    };

    Ok(Tree { n, max_degree, offsets, adj, ids })
}

/// Path on n nodes in index order.
pub fn path_graph(n: usize) -> Result<Tree, TreeError> {
    if n == 0 {
        return Err(TreeError::Empty);
    }
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    build_tree(&edges, None)
}

/// Rooted tree of exactly `size` nodes where the root and every internal node
/// have up to delta-1 children, levels filled breadth-first. Root is node 0.
pub fn balanced_regular_tree(delta: usize, size: usize) -> Result<Tree, TreeError> {
    if delta < 3 {
        return Err(TreeError::DeltaTooSmall(delta));
    }
    if size == 0 {
        return Err(TreeError::Empty);
    }
    let fanout = delta - 1;
    let edges: Vec<(usize, usize)> = (1..size).map(|v| ((v - 1) / fanout, v)).collect();
    build_tree(&edges, None)
}

/// Depth of node v in the breadth-first indexing of balanced_regular_tree.
pub fn balanced_tree_depth(delta: usize, v: usize) -> usize {
    let fanout = delta - 1;
    let mut depth = 0;
    let mut v = v;
    while v > 0 {
        v = (v - 1) / fanout;
        depth += 1;
    }
    depth
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_path() {
        let t = build_tree(&[(0, 1), (1, 2)], None).unwrap();
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.max_degree(), 2);
        assert_eq!(t.ids(), &[1, 2, 3]);
    }

    #[test]
    fn star() {
        let t = build_tree(&[(0, 1), (0, 2), (0, 3)], None).unwrap();
        assert_eq!(t.max_degree(), 3);
        assert_eq!(t.degree(0), 3);
    }

    #[test]
    fn repeated_pair_is_cycle() {
        assert_eq!(build_tree(&[(0, 1), (0, 1)], None), Err(TreeError::Cycle(0, 1)));
    }

    #[test]
    fn cycle_rejected() {
        assert!(matches!(
            build_tree(&[(0, 1), (1, 2), (2, 0)], None),
            Err(TreeError::Cycle(2, 0))
        ));
    }

    #[test]
    fn disconnected_rejected() {
        assert!(matches!(
            build_tree(&[(0, 1), (2, 3), (1, 2), (0, 3)], None),
            Err(TreeError::Cycle(..))
        ));
        // A genuinely disconnected input surfaces as a count mismatch.
        assert!(matches!(
            build_tree(&[(0, 1), (2, 3)], None),
            Err(TreeError::Disconnected(2))
        ));
    }

    #[test]
    fn path_graph_props() {
        let t = path_graph(1).unwrap();
        assert_eq!(t.node_count(), 1);
        let t = path_graph(4).unwrap();
        let degs: Vec<usize> = (0..4).map(|v| t.degree(v)).collect();
        assert_eq!(degs, vec![1, 2, 2, 1]);
        let t = path_graph(10).unwrap();
        assert_eq!(t.edges().len(), 9);
    }

    #[test]
    fn balanced_tree_sizes() {
        let t = balanced_regular_tree(5, 1).unwrap();
        assert_eq!(t.node_count(), 1);
        let t = balanced_regular_tree(5, 5).unwrap();
        assert_eq!(t.degree(0), 4);
        for v in 1..5 {
            assert_eq!(t.degree(v), 1);
        }
        // depth-2 complete 4-ary tree: 1 + 4 + 16
        let _t = balanced_regular_tree(5, 21).unwrap();
        let mut per_depth = [0usize; 3];
        for v in 0..21 {
            per_depth[balanced_tree_depth(5, v)] += 1;
        }
        assert_eq!(per_depth, [1, 4, 16]);
    }

    #[test]
    fn complete_prefix_property() {
        // nodes at depth j = min(remaining, (delta-1)^j) filled in order
        for &(delta, size) in &[(4, 17), (5, 30), (3, 9)] {
            let _t = balanced_regular_tree(delta, size).unwrap();
            let mut counts = std::collections::BTreeMap::new();
            for v in 0..size {
                *counts.entry(balanced_tree_depth(delta, v)).or_insert(0usize) += 1;
            }
            let mut remaining = size;
            for (j, (&depth, &cnt)) in counts.iter().enumerate() {
                assert_eq!(depth, j);
                let cap = (delta - 1).pow(j as u32);
                if remaining > cap {
                    assert_eq!(cnt, cap);
                } else {
                    assert_eq!(cnt, remaining);
                }
                remaining -= cnt;
            }
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        assert_eq!(
            build_tree(&[(0, 1)], Some(vec![7, 7])),
            Err(TreeError::DuplicateIds)
        );
    }
}

/// A connected component of an induced subgraph, with `nodes[i]` mapping the
/// component's node i back to the parent tree.
#[derive(Debug, Clone)]
pub struct Component {
    pub tree: Tree,
    pub nodes: Vec<usize>,
}

/// Connected components of the subgraph induced by nodes with `keep[v]`.
/// Component node ids are inherited from the parent tree.
pub fn induced_components(tree: &Tree, keep: &[bool]) -> Vec<Component> {
    let n = tree.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if !keep[start] || seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < nodes.len() {
            let v = nodes[head];
            head += 1;
            for u in tree.neighbors(v) {
                if keep[u] && !seen[u] {
                    seen[u] = true;
                    nodes.push(u);
                }
            }
        }
        nodes.sort_unstable();
        let index_of: std::collections::HashMap<usize, usize> =
            nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for u in tree.neighbors(v) {
                if keep[u] && v < u {
                    edges.push((i, index_of[&u]));
                }
            }
        }
        let ids: Vec<u64> = nodes.iter().map(|&v| tree.id(v)).collect();
        let sub = build_tree(&edges, Some(ids)).expect("induced component is a tree");
        out.push(Component { tree: sub, nodes });
    }
    out
}
