//! The polynomial-regime solver for the weighted coloring problems: active
//! components run the generic hierarchical algorithm with polynomially
//! growing gammas, weight components run algorithm A, and Copy balls flood
//! their seeding active neighbor's output as secondary.

use crate::algo::dfree_a::{dfree_algorithm_a, SeedStat};
use crate::algo::generic::{generic_khier, GenericError, GenericParams};
use crate::gen::{alpha_seq_poly, x_factor, ParamsError};
use crate::labels::{MixedOut, Variant, WeightOutput, WeightPrimary};
use crate::level::compute_levels;
use crate::sim::RunTrace;
use crate::tree::{induced_components, InputLabel, Tree};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ApolyError {
    #[error("delta must be at least d+3 (delta={delta}, d={d})")]
    DeltaTooSmall { delta: usize, d: usize },
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Generic(#[from] GenericError),
}

pub struct ApolyResult {
    pub out: Vec<MixedOut>,
    pub trace: RunTrace,
    pub gammas: Vec<u64>,
    /// total undecided active nodes at the start of each generic phase,
    /// summed over active components
    pub phase_undecided: Vec<usize>,
    /// algorithm-A seed stats over all weight components, with seed indices
    /// mapped back to nodes of the full tree
    pub seeds: Vec<SeedStat>,
}

pub fn a_poly(
    tree: &Tree,
    inputs: &[InputLabel],
    delta: usize,
    d: usize,
    k: u32,
    variant: Variant,
) -> Result<ApolyResult, ApolyError> {
    if delta < d + 3 {
        return Err(ApolyError::DeltaTooSmall { delta, d });
    }
    let n = tree.node_count();
    assert_eq!(inputs.len(), n);
    let x = x_factor(delta, d)?;
    let alphas = alpha_seq_poly(x, k)?;
    let gammas: Vec<u64> = alphas.iter().map(|&a| (n as f64).powf(a).ceil() as u64).collect();

    let mut out: Vec<Option<MixedOut>> = vec![None; n];
    let mut rounds = vec![0u64; n];
    let mut phase_undecided = vec![0usize; k as usize];

    // active components
    let active_mask: Vec<bool> = inputs.iter().map(|&i| i == InputLabel::Active).collect();
    for comp in induced_components(tree, &active_mask) {
        let levels = compute_levels(&comp.tree, k);
        let params = GenericParams { gammas: gammas.clone(), variant };
        let r = generic_khier(&comp.tree, &levels, &params)?;
        for s in &r.stats {
            phase_undecided[s.phase as usize - 1] += s.undecided_before;
        }
        for (i, &v) in comp.nodes.iter().enumerate() {
            out[v] = Some(MixedOut::Active(r.out[i]));
            rounds[v] = r.trace.termination_round[i];
        }
    }
    // shrinkage bound from the running-time analysis, asserted per run
    for i in 1..=k as usize {
        let prod: f64 = gammas[..i - 1].iter().map(|&g| g as f64).product();
        let bound = 7.0 * n as f64 * prod.powf(x - 1.0);
        assert!(
            phase_undecided[i - 1] as f64 <= bound,
            "phase {i}: {} undecided exceeds {bound}",
            phase_undecided[i - 1]
        );
    }

    // weight components run algorithm A with A = adjacent-to-active
    let weight_mask: Vec<bool> = inputs.iter().map(|&i| i == InputLabel::Weight).collect();
    let mut seeds: Vec<SeedStat> = Vec::new();
    for comp in induced_components(tree, &weight_mask) {
        let sub_inputs: Vec<InputLabel> = comp
            .nodes
            .iter()
            .map(|&v| {
                if tree.neighbors(v).any(|u| inputs[u] == InputLabel::Active) {
                    InputLabel::Active
                } else {
                    InputLabel::Weight
                }
            })
            .collect();
        let r = dfree_algorithm_a(&comp.tree, &sub_inputs, d, n as u64);
        for (i, &v) in comp.nodes.iter().enumerate() {
            out[v] = Some(MixedOut::Weight(WeightOutput { primary: r.out[i], secondary: None }));
            rounds[v] = r.rounds;
        }
        seeds.extend(r.seeds.iter().map(|s| SeedStat {
            seed: comp.nodes[s.seed],
            ball_size: s.ball_size,
            copies: s.copies,
        }));
        // flood each Copy ball from its seed
        for stat in &r.seeds {
            if r.out[stat.seed] != WeightPrimary::Copy {
                continue;
            }
            let seed = comp.nodes[stat.seed];
            let anchor = tree
                .neighbors(seed)
                .filter(|&u| inputs[u] == InputLabel::Active)
                .min_by_key(|&u| tree.id(u))
                .expect("seed is adjacent to an active node");
            let label = match out[anchor] {
                Some(MixedOut::Active(l)) => l,
                _ => unreachable!("active nodes are decided"),
            };
            let start = rounds[anchor].max(r.rounds);
            // BFS over the Copy set, 1 round per hop past the seed
            let mut frontier = vec![(stat.seed, 0u64)];
            let mut seen = vec![false; comp.tree.node_count()];
            seen[stat.seed] = true;
            while let Some((ci, hop)) = frontier.pop() {
                let v = comp.nodes[ci];
                out[v] = Some(MixedOut::Weight(WeightOutput {
                    primary: WeightPrimary::Copy,
                    secondary: Some(label),
                }));
                rounds[v] = start + 1 + hop;
                for u in comp.tree.neighbors(ci) {
                    if !seen[u] && r.out[u] == WeightPrimary::Copy {
                        seen[u] = true;
                        frontier.push((u, hop + 1));
                    }
                }
            }
        }
        debug_assert!(comp.nodes.iter().enumerate().all(|(i, &v)| {
            r.out[i] != WeightPrimary::Copy
                || matches!(
                    out[v],
                    Some(MixedOut::Weight(WeightOutput { secondary: Some(_), .. }))
                )
        }));
    }

    let out: Vec<MixedOut> = out.into_iter().map(|o| o.expect("all nodes decided")).collect();
    Ok(ApolyResult { out, trace: RunTrace::from_rounds(rounds), gammas, phase_undecided, seeds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{check_khier, check_weighted};
    use crate::gen::weighted_construction;

    #[test]
    fn end_to_end_weighted_construction() {
        let inst = weighted_construction(10_000, &[22, 100], 5, 2, 2).unwrap();
        let r = a_poly(&inst.tree, &inst.inputs, 5, 2, 2, Variant::TwoHalf).unwrap();
        let verdict =
            check_weighted(&inst.tree, &inst.inputs, &r.out, Variant::TwoHalf, 5, 2, 2).unwrap();
        assert!(verdict.ok(), "{:?}", &verdict.violations[..verdict.violations.len().min(5)]);
    }

    #[test]
    fn end_to_end_three_half() {
        let inst = weighted_construction(8_000, &[20, 80], 5, 2, 2).unwrap();
        let r = a_poly(&inst.tree, &inst.inputs, 5, 2, 2, Variant::ThreeHalf).unwrap();
        let verdict =
            check_weighted(&inst.tree, &inst.inputs, &r.out, Variant::ThreeHalf, 5, 2, 2).unwrap();
        assert!(verdict.ok(), "{:?}", &verdict.violations[..verdict.violations.len().min(5)]);
    }

    #[test]
    fn all_active_matches_plain_generic() {
        use crate::gen::lower_bound_graph;
        let g = lower_bound_graph(&[6, 40]).unwrap();
        let inputs = vec![InputLabel::Active; g.tree.node_count()];
        let r = a_poly(&g.tree, &inputs, 5, 2, 2, Variant::TwoHalf).unwrap();
        let levels = compute_levels(&g.tree, 2);
        let direct = generic_khier(
            &g.tree,
            &levels,
            &GenericParams { gammas: r.gammas.clone(), variant: Variant::TwoHalf },
        )
        .unwrap();
        for v in 0..g.tree.node_count() {
            assert_eq!(r.out[v], MixedOut::Active(direct.out[v]));
            assert_eq!(r.trace.termination_round[v], direct.trace.termination_round[v]);
        }
        assert!(check_khier(&g.tree, &levels, &direct.out, 2, Variant::TwoHalf).ok());
    }

    #[test]
    fn delta_gate() {
        let inst = weighted_construction(500, &[5, 10], 5, 2, 2).unwrap();
        assert!(matches!(
            a_poly(&inst.tree, &inst.inputs, 4, 2, 2, Variant::TwoHalf),
            Err(ApolyError::DeltaTooSmall { .. })
        ));
    }
}
