//! Checker for k-hierarchical weight-augmented 2.5-coloring.

use crate::checkers::hier::check_hier_labeling;
use crate::checkers::khier::check_khier;
use crate::checkers::verdict::Verdict;
use crate::labels::{
    ColoringLabel, Dir, HierLabeling, Orientations, Variant, WaugLabeling, WaugOut, WaugSecondary,
};
use crate::level::compute_levels;
use crate::tree::{induced_components, InputLabel, Tree};

/// Checks a weight-augmented labeling.
///
/// Rule 1 delegates to check_khier (2.5 variant) on each active component and
/// Rule 2 to check_hier_labeling on each weight component, keeping only the
/// orientations of weight-weight edges. Rules 3-5 are checked locally:
/// - a weight node adjacent to active nodes orients towards exactly one of
///   them and copies that node's output as its secondary;
/// - a weight node pointing at another weight node whose secondary is a color
///   must carry the same secondary, unless it points at an active node;
/// - only compress nodes may have secondary Decline, and they do iff they are
///   not adjacent to an active node.
pub fn check_weight_augmented(
    tree: &Tree,
    inputs: &[InputLabel],
    out: &WaugLabeling,
    k: u32,
) -> Verdict {
    assert!(k >= 1);
    let n = tree.node_count();
    assert_eq!(inputs.len(), n);
    assert_eq!(out.nodes.len(), n);
    let mut verdict = Verdict::default();

    for v in 0..n {
        match (inputs[v], &out.nodes[v]) {
            (InputLabel::Active, WaugOut::Weight { .. })
            | (InputLabel::Weight, WaugOut::Active(_)) => {
                verdict.push(v, "io-mismatch", "output kind does not match input label".into());
            }
            _ => {}
        }
    }
    if !verdict.ok() {
        return verdict;
    }

    // Orientations are part of the weight nodes' output only.
    for &(a, b) in out.orient.oriented_pairs() {
        if inputs[a] == InputLabel::Active && inputs[b] == InputLabel::Active {
            verdict.push(a, "orient-domain", format!("orientation on active-active edge {a}-{b}"));
        }
    }

    // Rule 1: active components solve hierarchical 2.5-coloring.
    let active_mask: Vec<bool> = inputs.iter().map(|&i| i == InputLabel::Active).collect();
    for comp in induced_components(tree, &active_mask) {
        let levels = compute_levels(&comp.tree, k);
        let sub_out: Vec<ColoringLabel> = comp
            .nodes
            .iter()
            .map(|&v| match out.nodes[v] {
                WaugOut::Active(c) => c,
                WaugOut::Weight { .. } => unreachable!(),
            })
            .collect();
        let sub = check_khier(&comp.tree, &levels, &sub_out, k, Variant::TwoHalf);
        verdict.absorb_mapped(sub, &comp.nodes);
    }

    // Rule 2: weight components solve the hierarchical labeling problem.
    let weight_mask: Vec<bool> = inputs.iter().map(|&i| i == InputLabel::Weight).collect();
    for comp in induced_components(tree, &weight_mask) {
        let tags = comp
            .nodes
            .iter()
            .map(|&v| match out.nodes[v] {
                WaugOut::Weight { tag, .. } => tag,
                WaugOut::Active(_) => unreachable!(),
            })
            .collect();
        let mut orient = Orientations::new();
        for (i, &v) in comp.nodes.iter().enumerate() {
            for u in tree.neighbors(v) {
                if weight_mask[u] && out.orient.dir(v, u) == Dir::Out {
                    let j = comp.nodes.binary_search(&u).unwrap();
                    orient.orient(i, j);
                }
            }
        }
        let sub = check_hier_labeling(&comp.tree, &HierLabeling { tags, orient }, k);
        verdict.absorb_mapped(sub, &comp.nodes);
    }

    for v in 0..n {
        let (tag, secondary) = match out.nodes[v] {
            WaugOut::Weight { tag, secondary } => (tag, secondary),
            WaugOut::Active(_) => continue,
        };
        let active_neighbors: Vec<usize> =
            tree.neighbors(v).filter(|&u| inputs[u] == InputLabel::Active).collect();

        // Rule 3.
        if !active_neighbors.is_empty() {
            let pointed: Vec<usize> = active_neighbors
                .iter()
                .copied()
                .filter(|&u| out.orient.dir(v, u) == Dir::Out)
                .collect();
            if pointed.len() != 1 {
                verdict.push(v, "rule3", format!("orients towards {} active neighbors, expected 1", pointed.len()));
            } else {
                let target = match out.nodes[pointed[0]] {
                    WaugOut::Active(c) => c,
                    WaugOut::Weight { .. } => unreachable!(),
                };
                if secondary != WaugSecondary::Col(target) {
                    verdict.push(v, "rule3", "secondary differs from the pointed active node's output".into());
                }
            }
        }

        // Rule 4: copying along weight-to-weight orientations. Pointing at a
        // Decline secondary imposes nothing, and pointing at an active node
        // overrides (Rule 3 already pins the secondary then).
        if active_neighbors.iter().all(|&u| out.orient.dir(v, u) != Dir::Out) {
            for u in tree.neighbors(v) {
                if inputs[u] == InputLabel::Weight && out.orient.dir(v, u) == Dir::Out {
                    if let WaugOut::Weight { secondary: WaugSecondary::Col(c), .. } = out.nodes[u] {
                        if secondary != WaugSecondary::Col(c) {
                            verdict.push(v, "rule4", "secondary differs from the pointed weight node's".into());
                        }
                    }
                }
            }
        }

        // Rule 5.
        if secondary == WaugSecondary::Decline {
            if !tag.compress {
                verdict.push(v, "rule5", "rake node with secondary Decline".into());
            } else if !active_neighbors.is_empty() {
                verdict.push(v, "rule5", "compress node adjacent to active with secondary Decline".into());
            }
        } else if tag.compress && active_neighbors.is_empty() {
            verdict.push(v, "rule5", "compress node not adjacent to active must output Decline".into());
        }
    }
    verdict
}
