//! Checker for the weighted coloring problems (active/weight input partition).

use crate::checkers::khier::check_khier;
use crate::checkers::verdict::Verdict;
use crate::labels::{ColoringLabel, MixedOut, Variant, WeightPrimary};
use crate::level::compute_levels;
use crate::tree::{induced_components, InputLabel, Tree};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("delta must be at least d+3 (delta={delta}, d={d})")]
    DeltaTooSmall { delta: usize, d: usize },
}

/// Checks a weighted coloring labeling.
///
/// Property 1 is delegated to check_khier on every active component (levels
/// recomputed per component). Properties 2-5:
/// - a weight node adjacent to an active node outputs Connect or Copy;
/// - a Connect node has at least two neighbors that are active or Connect;
/// - a Copy node has at most d Decline neighbors;
/// - a Copy node with an active neighbor copies one active neighbor's output
///   as secondary, and adjacent Copy nodes carry identical secondaries.
pub fn check_weighted(
    tree: &Tree,
    inputs: &[InputLabel],
    out: &[MixedOut],
    z: Variant,
    delta: usize,
    d: usize,
    k: u32,
) -> Result<Verdict, ParamError> {
    if delta < d + 3 {
        return Err(ParamError::DeltaTooSmall { delta, d });
    }
    let mut verdict = Verdict::default();
    let n = tree.node_count();
    assert_eq!(inputs.len(), n);
    assert_eq!(out.len(), n);

    for v in 0..n {
        match (inputs[v], &out[v]) {
            (InputLabel::Active, MixedOut::Weight(_)) | (InputLabel::Weight, MixedOut::Active(_)) => {
                verdict.push(v, "io-mismatch", "output kind does not match input label".into());
            }
            _ => {}
        }
    }
    if !verdict.ok() {
        return Ok(verdict);
    }

    // Property 1: active components.
    let active_mask: Vec<bool> = inputs.iter().map(|&i| i == InputLabel::Active).collect();
    for comp in induced_components(tree, &active_mask) {
        let levels = compute_levels(&comp.tree, k);
        let sub_out: Vec<ColoringLabel> = comp
            .nodes
            .iter()
            .map(|&v| match out[v] {
                MixedOut::Active(c) => c,
                MixedOut::Weight(_) => unreachable!(),
            })
            .collect();
        let sub = check_khier(&comp.tree, &levels, &sub_out, k, z);
        verdict.absorb_mapped(sub, &comp.nodes);
    }

    for v in 0..n {
        let w = match out[v] {
            MixedOut::Weight(w) => w,
            MixedOut::Active(_) => continue,
        };
        if (w.secondary.is_some()) != (w.primary == WeightPrimary::Copy) {
            verdict.push(v, "secondary-presence", "secondary present iff primary is Copy".into());
            continue;
        }
        let active_adjacent = tree.neighbors(v).any(|u| inputs[u] == InputLabel::Active);
        match w.primary {
            WeightPrimary::Decline => {
                if active_adjacent {
                    verdict.push(v, "prop2", "weight node adjacent to active must output Connect or Copy".into());
                }
            }
            WeightPrimary::Connect => {
                let support = tree
                    .neighbors(v)
                    .filter(|&u| {
                        inputs[u] == InputLabel::Active
                            || matches!(out[u], MixedOut::Weight(x) if x.primary == WeightPrimary::Connect)
                    })
                    .count();
                if support < 2 {
                    verdict.push(v, "prop3", format!("Connect node with support {support} < 2"));
                }
            }
            WeightPrimary::Copy => {
                let declines = tree
                    .neighbors(v)
                    .filter(|&u| matches!(out[u], MixedOut::Weight(x) if x.primary == WeightPrimary::Decline))
                    .count();
                if declines > d {
                    verdict.push(v, "prop4", format!("Copy node with {declines} > d Decline neighbors"));
                }
                let sec = w.secondary.unwrap();
                if active_adjacent {
                    let matched = tree.neighbors(v).any(|u| {
                        inputs[u] == InputLabel::Active
                            && matches!(out[u], MixedOut::Active(c) if c == sec)
                    });
                    if !matched {
                        verdict.push(v, "prop5", "secondary does not match any active neighbor".into());
                    }
                }
                for u in tree.neighbors(v) {
                    if let MixedOut::Weight(x) = out[u] {
                        if x.primary == WeightPrimary::Copy && x.secondary != Some(sec) {
                            verdict.push(v, "prop5", "adjacent Copy nodes with different secondaries".into());
                        }
                    }
                }
            }
        }
    }
    Ok(verdict)
}
