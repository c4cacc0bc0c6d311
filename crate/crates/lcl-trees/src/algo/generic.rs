//! The generic hierarchical coloring algorithm, as a centralized solver with
//! per-node LOCAL round charging.
//!
//! Phases 1..k-1 process the level-i paths: a maximal path of undecided
//! level-i nodes measures its node count up to gamma_i (charged 2*gamma_i
//! rounds for every participant); long paths decline, short ones 2-color.
//! An E-propagation wave of at most k rounds follows each phase. The final
//! phase colors the remaining level-k paths, either alternating {W,B} or via
//! Cole-Vishkin {R,G,Y}.
//!
//! The textbook per-path rule alone can wedge a level-k node between a
//! colored lower path (forcing E) and a declined one (forbidding E). The
//! solver therefore runs a consistency fixpoint after each phase's initial
//! decisions: a flippable colored path (decided this phase) turns D, or, when
//! the forcing signal is irrevocable, a declined path turns colored at its
//! real measurement cost. A path that would have to flip twice is a genuine
//! double bind and reported as an error; it cannot arise for k = 2 and does
//! not arise on any family this crate generates.

use crate::algo::path_color::{cv_iterations, three_color_path_with, two_color_path};
use crate::labels::{ColoringLabel, Variant};
use crate::level::LevelMap;
use crate::sim::RunTrace;
use crate::tree::Tree;
use thiserror::Error;
use ColoringLabel::{D, E};

#[derive(Debug, Clone)]
pub struct GenericParams {
    /// gamma_1..gamma_{k-1}
    pub gammas: Vec<u64>,
    pub variant: Variant,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenericError {
    #[error("expected {expected} gammas for k={k}, got {got}")]
    GammaCount { expected: usize, k: u32, got: usize },
    #[error("double bind at node {node}: a path is forced both colored and declined")]
    DoubleBind { node: usize },
}

/// Per-phase bookkeeping, used by the shrinkage assertions.
#[derive(Debug, Clone)]
pub struct PhaseStat {
    pub phase: u32,
    /// nodes not yet terminated when the phase starts
    pub undecided_before: usize,
    pub undecided_after: usize,
    pub declined_paths: usize,
    pub colored_paths: usize,
    pub flips: usize,
}

pub struct GenericResult {
    pub out: Vec<ColoringLabel>,
    pub trace: RunTrace,
    pub stats: Vec<PhaseStat>,
}

#[derive(Clone, Copy, PartialEq)]
enum PathDecision {
    Colored,
    Declined,
}

pub fn generic_khier(
    tree: &Tree,
    levels: &LevelMap,
    params: &GenericParams,
) -> Result<GenericResult, GenericError> {
    let k = levels.k();
    if params.gammas.len() + 1 != k as usize {
        return Err(GenericError::GammaCount {
            expected: k as usize - 1,
            k,
            got: params.gammas.len(),
        });
    }
    let n = tree.node_count();
    let mut out: Vec<Option<ColoringLabel>> = vec![None; n];
    let mut rounds = vec![0u64; n];
    let mut stats = Vec::new();

    // level-(k+1) nodes are exempt unconditionally and stop immediately
    for v in 0..n {
        if levels.level(v) == k + 1 {
            out[v] = Some(E);
        }
    }

    let mut phase_start = 0u64; // s_i
    let global_iters = cv_iterations(tree.ids().iter().copied().max().unwrap_or(1));

    for phase in 1..=k {
        let undecided_before = out.iter().filter(|o| o.is_none()).count();
        let is_last = phase == k;
        let gamma = if is_last { 0 } else { params.gammas[phase as usize - 1] };
        let decide_round = phase_start + 2 * gamma;

        // maximal paths of undecided level-i nodes
        let paths = collect_paths(tree, levels, &out, phase);
        let mut path_of: Vec<i32> = vec![-1; n];
        for (pi, p) in paths.iter().enumerate() {
            for &v in p {
                path_of[v] = pi as i32;
            }
        }
        let mut decisions: Vec<PathDecision> = Vec::with_capacity(paths.len());
        let mut flip_count = vec![0u32; paths.len()];
        for p in &paths {
            let long = !is_last && p.len() as u64 >= gamma;
            decisions.push(if long { PathDecision::Declined } else { PathDecision::Colored });
        }

        let mut flips = 0usize;
        if !is_last {
            // consistency fixpoint against level-k nodes
            loop {
                let pros_e = prospective_e(tree, levels, &out, &paths, &decisions, &path_of, k);
                let mut conflict: Option<usize> = None;
                'scan: for v in 0..n {
                    if levels.level(v) != k {
                        continue;
                    }
                    // an E committed in an earlier phase still forbids lower
                    // declines, so it stays in the scan (k >= 3 only: at
                    // k = 2 every lower path is decided in the same phase)
                    let committed_e = out[v] == Some(E);
                    if !committed_e && (out[v].is_some() || !pros_e[v]) {
                        continue;
                    }
                    let blocked = tree.neighbors(v).any(|u| {
                        levels.level(u) < k
                            && (out[u] == Some(D)
                                || (path_of[u] >= 0
                                    && decisions[path_of[u] as usize] == PathDecision::Declined))
                    });
                    if blocked {
                        conflict = Some(v);
                        break 'scan;
                    }
                }
                let Some(v) = conflict else { break };

                // classify the forcing signals
                let mut trigger_paths = Vec::new();
                // a committed E cannot be revoked, whatever triggered it
                let mut irrevocable_trigger = out[v] == Some(E);
                for u in tree.neighbors(v) {
                    if levels.level(u) >= k {
                        continue;
                    }
                    let decided_trigger =
                        matches!(out[u], Some(l) if l.is_color2() || l == E);
                    let phase_trigger = path_of[u] >= 0
                        && decisions[path_of[u] as usize] == PathDecision::Colored;
                    let pros_trigger = out[u].is_none() && pros_e[u] && path_of[u] < 0;
                    if decided_trigger || pros_trigger {
                        irrevocable_trigger = true;
                    } else if phase_trigger {
                        trigger_paths.push(path_of[u] as usize);
                    }
                }
                // a trigger path that was itself flipped to colored earlier is
                // pinned; clear the blockers instead of flipping it back
                let pinned = trigger_paths.iter().any(|&pi| flip_count[pi] > 0);
                if !irrevocable_trigger && !pinned && !trigger_paths.is_empty() {
                    for pi in trigger_paths {
                        flip_count[pi] += 1;
                        decisions[pi] = PathDecision::Declined;
                        flips += 1;
                    }
                } else {
                    // must clear the blockers instead
                    let mut flipped_any = false;
                    for u in tree.neighbors(v) {
                        if levels.level(u) >= k {
                            continue;
                        }
                        if out[u] == Some(D) {
                            return Err(GenericError::DoubleBind { node: v });
                        }
                        if path_of[u] >= 0 {
                            let pi = path_of[u] as usize;
                            if decisions[pi] == PathDecision::Declined {
                                if flip_count[pi] > 0 {
                                    return Err(GenericError::DoubleBind { node: v });
                                }
                                flip_count[pi] += 1;
                                decisions[pi] = PathDecision::Colored;
                                flips += 1;
                                flipped_any = true;
                            }
                        }
                    }
                    if !flipped_any {
                        return Err(GenericError::DoubleBind { node: v });
                    }
                }
            }
        }

        // commit path decisions
        let mut declined_paths = 0;
        let mut colored_paths = 0;
        for (pi, p) in paths.iter().enumerate() {
            match decisions[pi] {
                PathDecision::Declined => {
                    declined_paths += 1;
                    for &v in p {
                        out[v] = Some(D);
                        rounds[v] = decide_round;
                    }
                }
                PathDecision::Colored => {
                    colored_paths += 1;
                    let ids: Vec<u64> = p.iter().map(|&v| tree.id(v)).collect();
                    if is_last && params.variant == Variant::ThreeHalf {
                        let (cols, _) = three_color_path_with(&ids, global_iters);
                        let cost = phase_start + global_iters + 5;
                        for (j, &v) in p.iter().enumerate() {
                            out[v] = Some(cols[j]);
                            rounds[v] = cost;
                        }
                    } else {
                        let cols = two_color_path(&ids);
                        // a flipped path pays its real measurement distance on
                        // top of the phase budget
                        let flipped = flip_count[pi] > 0;
                        let m = p.len() as u64;
                        for (j, &v) in p.iter().enumerate() {
                            out[v] = Some(cols[j]);
                            rounds[v] = if is_last {
                                // anchored 2-coloring: wait for both endpoint
                                // floods, the farther one dominates
                                let d1 = j as u64;
                                let d2 = (p.len() - 1 - j) as u64;
                                phase_start + d1.max(d2)
                            } else if flipped {
                                decide_round + k as u64 + m
                            } else {
                                decide_round
                            };
                        }
                    }
                }
            }
        }

        // E-propagation waves
        if !is_last {
            let mut wave = 0u64;
            loop {
                wave += 1;
                let mut newly = Vec::new();
                for v in 0..n {
                    if out[v].is_some() {
                        continue;
                    }
                    let l = levels.level(v);
                    if !(2..=k).contains(&l) {
                        continue;
                    }
                    let trigger = tree
                        .neighbors(v)
                        .any(|u| levels.level(u) < l && matches!(out[u], Some(x) if x.is_color2() || x == E));
                    if trigger {
                        newly.push(v);
                    }
                }
                if newly.is_empty() {
                    break;
                }
                assert!(wave <= k as u64, "E wave exceeded k rounds");
                for v in newly {
                    out[v] = Some(E);
                    rounds[v] = decide_round + wave;
                }
            }
        }

        let undecided_after = out.iter().filter(|o| o.is_none()).count();
        stats.push(PhaseStat {
            phase,
            undecided_before,
            undecided_after,
            declined_paths,
            colored_paths,
            flips,
        });
        phase_start = decide_round + k as u64;
    }

    let out: Vec<ColoringLabel> = out.into_iter().map(|o| o.expect("all nodes decided")).collect();
    Ok(GenericResult { out, trace: RunTrace::from_rounds(rounds), stats })
}

/// Maximal paths of undecided nodes at the given level, each ordered from one
/// endpoint to the other (deterministically: the endpoint containing the
/// smallest node index comes first).
fn collect_paths(
    tree: &Tree,
    levels: &LevelMap,
    out: &[Option<ColoringLabel>],
    level: u32,
) -> Vec<Vec<usize>> {
    let n = tree.node_count();
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    let in_class = |v: usize| levels.level(v) == level && out[v].is_none();
    for start in 0..n {
        if !in_class(start) || seen[start] {
            continue;
        }
        // walk to an endpoint
        let mut end = start;
        let mut prev = usize::MAX;
        loop {
            let next = tree
                .neighbors(end)
                .find(|&u| in_class(u) && u != prev && !seen[u]);
            match next {
                Some(u) if u != start => {
                    prev = end;
                    end = u;
                }
                _ => break,
            }
        }
        // walk the path from that endpoint
        let mut path = vec![end];
        seen[end] = true;
        let mut cur = end;
        loop {
            let next = tree.neighbors(cur).find(|&u| in_class(u) && !seen[u]);
            match next {
                Some(u) => {
                    seen[u] = true;
                    path.push(u);
                    cur = u;
                }
                None => break,
            }
        }
        debug_assert!(path
            .iter()
            .all(|&v| tree.neighbors(v).filter(|&u| in_class(u)).count() <= 2));
        paths.push(path);
    }
    paths
}

/// Closure of the E rule over still-undecided nodes, treating this phase's
/// tentative path decisions as final.
fn prospective_e(
    tree: &Tree,
    levels: &LevelMap,
    out: &[Option<ColoringLabel>],
    paths: &[Vec<usize>],
    decisions: &[PathDecision],
    path_of: &[i32],
    k: u32,
) -> Vec<bool> {
    let n = tree.node_count();
    let mut pros = vec![false; n];
    let colored_now =
        |u: usize| path_of[u] >= 0 && decisions[path_of[u] as usize] == PathDecision::Colored;
    let _ = paths;
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if pros[v] || out[v].is_some() || path_of[v] >= 0 {
                continue;
            }
            let l = levels.level(v);
            if !(2..=k).contains(&l) {
                continue;
            }
            let trigger = tree.neighbors(v).any(|u| {
                levels.level(u) < l
                    && (matches!(out[u], Some(x) if x.is_color2() || x == E)
                        || colored_now(u)
                        || pros[u])
            });
            if trigger {
                pros[v] = true;
                changed = true;
            }
        }
    }
    pros
}
