//! Level computation: k rounds of peeling degree-<=2 nodes.

use crate::tree::Tree;

/// Level assignment. Nodes removed in peeling round i have level i;
/// everything surviving k rounds has level k+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMap {
    level: Vec<u32>,
    k: u32,
}

impl LevelMap {
    pub fn level(&self, v: usize) -> u32 {
        self.level[v]
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn levels(&self) -> &[u32] {
        &self.level
    }

    pub fn count_at(&self, i: u32) -> usize {
        self.level.iter().filter(|&&l| l == i).count()
    }

    pub fn from_raw(level: Vec<u32>, k: u32) -> LevelMap {
        LevelMap { level, k }
    }
}

/// Iterative peeling: in round i = 1..=k, all nodes of degree at most 2 in the
/// remaining forest get level i and are removed (isolated nodes count: degree
/// 0 <= 2). Survivors get level k+1. Independent of ids.
pub fn compute_levels(tree: &Tree, k: u32) -> LevelMap {
    assert!(k >= 1, "k must be at least 1");
    let n = tree.node_count();
    let mut level = vec![k + 1; n];
    let mut deg: Vec<u32> = (0..n).map(|v| tree.degree(v) as u32).collect();
    let mut alive = vec![true; n];
    for i in 1..=k {
        let peel: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] <= 2).collect();
        for &v in &peel {
            level[v] = i;
            alive[v] = false;
        }
        for &v in &peel {
            for u in tree.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
    }
    LevelMap { level, k }
}
