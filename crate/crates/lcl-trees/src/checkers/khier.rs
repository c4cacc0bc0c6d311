//! Validity checker for hierarchical 2.5- and 3.5-coloring.

use crate::checkers::verdict::Verdict;
use crate::labels::{ColoringLabel, Variant};
use crate::level::LevelMap;
use crate::tree::Tree;
use ColoringLabel::*;

/// Checks a per-node labeling against the level-based rules.
///
/// Expects `levels == compute_levels(tree, k)`. Rules, per node of level l:
/// - l = 1: never E;
/// - l = k+1: always E;
/// - 2 <= l <= k: E iff some lower-level neighbor is labeled W, B or E;
/// - 1 <= l <= k: a W (resp. B) node has no same-level neighbor labeled W
///   (resp. B) or D;
/// - l = k: no D (3.5: no D, W, B; {R,G,Y} properly 3-colored), and E is
///   allowed only when no lower-level neighbor output D.
pub fn check_khier(
    tree: &Tree,
    levels: &LevelMap,
    out: &[ColoringLabel],
    k: u32,
    variant: Variant,
) -> Verdict {
    let mut verdict = Verdict::default();
    assert_eq!(levels.k(), k, "level map computed with a different k");
    assert_eq!(out.len(), tree.node_count());

    for v in 0..tree.node_count() {
        let l = levels.level(v);
        let lab = out[v];

        match variant {
            Variant::TwoHalf => {
                if lab.is_color3() {
                    verdict.push(v, "alphabet", format!("label {lab} not in the 2.5 alphabet"));
                    continue;
                }
            }
            Variant::ThreeHalf => {
                if lab.is_color3() && l != k {
                    verdict.push(v, "no-rgy-below-k", format!("label {lab} at level {l}"));
                    continue;
                }
            }
        }

        if l == 1 && lab == E {
            verdict.push(v, "no-level1-E", "level-1 node labeled E".into());
        }
        if l == k + 1 && lab != E {
            verdict.push(v, "all-top-E", format!("level-{l} node labeled {lab}"));
        }
        if (2..=k).contains(&l) {
            let trigger = tree
                .neighbors(v)
                .any(|u| levels.level(u) < l && matches!(out[u], W | B | E));
            if (lab == E) != trigger {
                let msg = if lab == E {
                    "E without a lower-level W/B/E neighbor"
                } else {
                    "lower-level W/B/E neighbor forces E"
                };
                verdict.push(v, "E-iff", msg.into());
            }
        }
        if (1..=k).contains(&l) && lab.is_color2() {
            for u in tree.neighbors(v) {
                if levels.level(u) == l && (out[u] == lab || out[u] == D) {
                    verdict.push(
                        v,
                        "same-level-color",
                        format!("{lab} node with same-level {} neighbor", out[u]),
                    );
                }
            }
        }
        if l == k {
            match variant {
                Variant::TwoHalf => {
                    if lab == D {
                        verdict.push(v, "level-k-no-D", "level-k node labeled D".into());
                    }
                }
                Variant::ThreeHalf => {
                    if matches!(lab, D | W | B) {
                        verdict.push(v, "level-k-no-DWB", format!("level-k node labeled {lab}"));
                    }
                    if lab.is_color3() {
                        for u in tree.neighbors(v) {
                            if out[u] == lab {
                                verdict.push(
                                    v,
                                    "proper-3col",
                                    format!("adjacent nodes both labeled {lab}"),
                                );
                            }
                        }
                    }
                }
            }
            if lab == E {
                let lower_d = tree
                    .neighbors(v)
                    .any(|u| levels.level(u) < l && out[u] == D);
                if lower_d {
                    verdict.push(v, "level-k-E-no-lower-D", "E with a declined lower-level neighbor".into());
                }
            }
        }
    }
    verdict
}
