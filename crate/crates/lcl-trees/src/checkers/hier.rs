//! Checker for the k-hierarchical labeling problem.

use crate::checkers::verdict::Verdict;
use crate::labels::{Dir, HierLabeling, HierTag};
use crate::tree::Tree;

/// Checks a hierarchical labeling: tags R_1..R_k and C_1..C_{k-1} plus edge
/// orientations, against the six local rules.
///
/// Rule ids in the verdict: "alphabet", "orient-domain", then "rule1".."rule6".
pub fn check_hier_labeling(tree: &Tree, out: &HierLabeling, k: u32) -> Verdict {
    assert!(k >= 1);
    let n = tree.node_count();
    assert_eq!(out.tags.len(), n);
    let mut verdict = Verdict::default();

    let tag_ok = |t: HierTag| {
        t.index >= 1 && if t.compress { t.index <= k.saturating_sub(1) } else { t.index <= k }
    };
    for v in 0..n {
        if !tag_ok(out.tags[v]) {
            verdict.push(v, "alphabet", format!("label {} outside the k={k} alphabet", out.tags[v].as_string()));
        }
    }
    if !verdict.ok() {
        return verdict;
    }

    // Orientation records must live on actual edges.
    let edge_set: std::collections::BTreeSet<(usize, usize)> =
        tree.edges().into_iter().collect();
    for &(a, b) in out.orient.oriented_pairs() {
        if !edge_set.contains(&(a, b)) {
            verdict.push(a, "orient-domain", format!("orientation on non-edge {a}-{b}"));
        }
    }

    for v in 0..n {
        let tag = out.tags[v];

        // Rule 1: edges adjacent to a rake label are oriented.
        for u in tree.neighbors(v) {
            if (!tag.compress || !out.tags[u].compress) && out.orient.dir(v, u) == Dir::None && v < u {
                verdict.push(v, "rule1", format!("unoriented edge {v}-{u} adjacent to a rake label"));
            }
        }

        // Rule 2: at most one outgoing edge; a compress node with two compress
        // neighbors must have none.
        let outgoing = tree.neighbors(v).filter(|&u| out.orient.dir(v, u) == Dir::Out).count();
        let compress_neighbors = tree.neighbors(v).filter(|&u| out.tags[u].compress).count();
        if tag.compress && compress_neighbors >= 2 {
            if outgoing != 0 {
                verdict.push(v, "rule2", "compress node with two compress neighbors has an outgoing edge".into());
            }
        } else if outgoing > 1 {
            verdict.push(v, "rule2", format!("{outgoing} outgoing edges"));
        }

        // Rule 3: orientations go to weakly larger labels.
        for u in tree.neighbors(v) {
            if out.orient.dir(v, u) == Dir::Out && out.tags[u].rank() < tag.rank() {
                verdict.push(
                    v,
                    "rule3",
                    format!("edge oriented from {} to smaller label {}", tag.as_string(), out.tags[u].as_string()),
                );
            }
        }

        if tag.compress {
            // Rule 4: same-tag compress components are disjoint paths. In a
            // tree, degree <= 2 within the tag class is enough.
            let same = tree.neighbors(v).filter(|&u| out.tags[u] == tag).count();
            if same > 2 {
                verdict.push(v, "rule4", format!("{same} neighbors with the same compress label"));
            }
            // Rule 5: no two different compress labels adjacent.
            for u in tree.neighbors(v) {
                if out.tags[u].compress && out.tags[u] != tag {
                    verdict.push(
                        v,
                        "rule5",
                        format!("compress labels {} and {} adjacent", tag.as_string(), out.tags[u].as_string()),
                    );
                }
            }
        } else {
            // Rule 6: at most one in-pointing compress neighbor; if one
            // exists, every in-pointing neighbor has a strictly lower label.
            let in_pointing: Vec<usize> =
                tree.neighbors(v).filter(|&u| out.orient.dir(u, v) == Dir::Out).collect();
            let compress_in = in_pointing.iter().filter(|&&u| out.tags[u].compress).count();
            if compress_in > 1 {
                verdict.push(v, "rule6", format!("{compress_in} compress neighbors pointing in"));
            } else if compress_in == 1 {
                for &u in &in_pointing {
                    if out.tags[u].rank() >= tag.rank() {
                        verdict.push(
                            v,
                            "rule6",
                            format!("in-pointing neighbor {} not strictly below {}", out.tags[u].as_string(), tag.as_string()),
                        );
                    }
                }
            }
        }
    }
    verdict
}
