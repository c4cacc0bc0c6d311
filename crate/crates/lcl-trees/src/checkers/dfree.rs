//! Checker for the d-free weight problem.

use crate::checkers::verdict::Verdict;
use crate::labels::WeightPrimary;
use crate::tree::{InputLabel, Tree};
use WeightPrimary::*;

/// Checks a d-free weight labeling. `InputLabel::Active` plays the role of the
/// A input, `InputLabel::Weight` the W input.
///
/// - Property 1: an A node outputting Connect has at least one neighbor that
///   outputs Connect; a W node outputting Connect has at least two neighbors
///   that output Connect or carry input A.
/// - Property 2: a Copy node has at most d Decline neighbors.
/// - Property 3: A nodes output Connect or Copy.
pub fn check_dfree(tree: &Tree, inputs: &[InputLabel], out: &[WeightPrimary], d: usize) -> Verdict {
    assert!(d >= 1, "d must be a positive integer");
    let n = tree.node_count();
    assert_eq!(inputs.len(), n);
    assert_eq!(out.len(), n);
    let mut verdict = Verdict::default();

    for v in 0..n {
        match out[v] {
            Connect => {
                let support = match inputs[v] {
                    InputLabel::Active => tree.neighbors(v).filter(|&u| out[u] == Connect).count(),
                    InputLabel::Weight => tree
                        .neighbors(v)
                        .filter(|&u| out[u] == Connect || inputs[u] == InputLabel::Active)
                        .count(),
                };
                let need = if inputs[v] == InputLabel::Active { 1 } else { 2 };
                if support < need {
                    verdict.push(v, "prop1", format!("Connect node with support {support} < {need}"));
                }
            }
            Copy => {
                let declines = tree.neighbors(v).filter(|&u| out[u] == Decline).count();
                if declines > d {
                    verdict.push(v, "prop2", format!("Copy node with {declines} > d Decline neighbors"));
                }
            }
            Decline => {}
        }
        if inputs[v] == InputLabel::Active && out[v] == Decline {
            verdict.push(v, "prop3", "A node must output Connect or Copy".into());
        }
    }
    verdict
}
