//! Exhaustive enumeration of valid labelings for small instances.
//!
//! Backtracking over per-node (and, for the hierarchical labeling problem,
//! per-edge) variables. Pruning only rejects partial assignments that cannot
//! extend to a valid labeling, and every complete assignment is re-validated
//! by the production checker, so the returned set is exactly the checker's
//! accept set. The work cap counts variable assignments, not labelings.

use crate::checkers::dfree::check_dfree;
use crate::checkers::hier::check_hier_labeling;
use crate::checkers::khier::check_khier;
use crate::checkers::waug::check_weight_augmented;
use crate::checkers::weighted::{check_weighted, ParamError};
use crate::labels::{
    ColoringLabel, HierLabeling, HierTag, MixedOut, Orientations, Variant, WaugLabeling, WaugOut,
    WaugSecondary, WeightOutput, WeightPrimary,
};
use crate::level::compute_levels;
use crate::tree::{InputLabel, Tree};
use thiserror::Error;

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruteError {
    #[error("search cap of {0} assignments exceeded")]
    CapExceeded(u64),
    #[error(transparent)]
    Params(#[from] ParamError),
}

/// Problem selector for [brute_force].
#[derive(Debug, Clone)]
pub enum BruteProblem {
    KHier { k: u32, variant: Variant },
    DFree { inputs: Vec<InputLabel>, d: usize },
    Weighted { inputs: Vec<InputLabel>, z: Variant, delta: usize, d: usize, k: u32 },
    HierLabeling { k: u32 },
    WeightAugmented { inputs: Vec<InputLabel>, k: u32 },
}

/// One valid labeling, in the vocabulary of the selected problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteSolution {
    KHier(Vec<ColoringLabel>),
    DFree(Vec<WeightPrimary>),
    Weighted(Vec<MixedOut>),
    HierLabeling(HierLabeling),
    WeightAugmented(WaugLabeling),
}

/// Enumerates every labeling the corresponding checker accepts, in a fixed
/// deterministic order.
pub fn brute_force(
    tree: &Tree,
    problem: &BruteProblem,
    cap: Option<u64>,
) -> Result<Vec<BruteSolution>, BruteError> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    match problem {
        BruteProblem::KHier { k, variant } => {
            brute_khier(tree, *k, *variant, cap).map(|v| v.into_iter().map(BruteSolution::KHier).collect())
        }
        BruteProblem::DFree { inputs, d } => {
            brute_dfree(tree, inputs, *d, cap).map(|v| v.into_iter().map(BruteSolution::DFree).collect())
        }
        BruteProblem::Weighted { inputs, z, delta, d, k } => {
            brute_weighted(tree, inputs, *z, *delta, *d, *k, cap)
                .map(|v| v.into_iter().map(BruteSolution::Weighted).collect())
        }
        BruteProblem::HierLabeling { k } => {
            brute_hier(tree, *k, cap).map(|v| v.into_iter().map(BruteSolution::HierLabeling).collect())
        }
        BruteProblem::WeightAugmented { inputs, k } => {
            brute_waug(tree, inputs, *k, cap)
                .map(|v| v.into_iter().map(BruteSolution::WeightAugmented).collect())
        }
    }
}

/// Generic backtracking over variables with the given domain sizes.
/// `prune(values, i)` sees the assignment of variables 0..=i and may return
/// false only when no completion is valid. `emit` receives every complete
/// assignment that survived pruning.
fn backtrack(
    domains: &[usize],
    cap: u64,
    mut prune: impl FnMut(&[u8], usize) -> bool,
    mut emit: impl FnMut(&[u8]),
) -> Result<(), BruteError> {
    let n = domains.len();
    if n == 0 {
        emit(&[]);
        return Ok(());
    }
    let mut values = vec![0u8; n];
    let mut visited = 0u64;
    // depth i holds the next candidate value to try for variable i
    let mut next = vec![0u8; n];
    let mut depth = 0usize;
    loop {
        if (next[depth] as usize) >= domains[depth] {
            if depth == 0 {
                return Ok(());
            }
            next[depth] = 0;
            depth -= 1;
            continue;
        }
        values[depth] = next[depth];
        next[depth] += 1;
        visited += 1;
        if visited > cap {
            return Err(BruteError::CapExceeded(cap));
        }
        if !prune(&values, depth) {
            continue;
        }
        if depth + 1 == n {
            emit(&values);
        } else {
            depth += 1;
        }
    }
}

const ALPHABET2: [ColoringLabel; 4] =
    [ColoringLabel::W, ColoringLabel::B, ColoringLabel::E, ColoringLabel::D];
const ALPHABET3: [ColoringLabel; 7] = [
    ColoringLabel::W,
    ColoringLabel::B,
    ColoringLabel::E,
    ColoringLabel::D,
    ColoringLabel::R,
    ColoringLabel::G,
    ColoringLabel::Y,
];

fn alphabet(variant: Variant) -> &'static [ColoringLabel] {
    match variant {
        Variant::TwoHalf => &ALPHABET2,
        Variant::ThreeHalf => &ALPHABET3,
    }
}

/// Index at which node v's closed neighborhood is fully assigned when
/// variables are per-node in index order.
fn ready_at(tree: &Tree) -> Vec<usize> {
    (0..tree.node_count())
        .map(|v| tree.neighbors(v).chain(std::iter::once(v)).max().unwrap())
        .collect()
}

pub fn brute_khier(
    tree: &Tree,
    k: u32,
    variant: Variant,
    cap: u64,
) -> Result<Vec<Vec<ColoringLabel>>, BruteError> {
    let n = tree.node_count();
    let levels = compute_levels(tree, k);
    let sigma = alphabet(variant);
    let ready = ready_at(tree);
    let mut found = Vec::new();
    backtrack(
        &vec![sigma.len(); n],
        cap,
        |vals, i| {
            let lab = sigma[vals[i] as usize];
            let l = levels.level(i);
            // unary restrictions
            if variant == Variant::ThreeHalf && lab.is_color3() && l != k {
                return false;
            }
            if l == 1 && lab == ColoringLabel::E {
                return false;
            }
            if l == k + 1 && lab != ColoringLabel::E {
                return false;
            }
            if l == k
                && (lab == ColoringLabel::D
                    || (variant == Variant::ThreeHalf && lab.is_color2()))
            {
                return false;
            }
            // pairwise certain violations with already-assigned neighbors
            for u in tree.neighbors(i).filter(|&u| u < i) {
                let lu = sigma[vals[u] as usize];
                let same_level = levels.level(u) == l;
                if same_level
                    && ((lab.is_color2() && (lu == lab || lu == ColoringLabel::D))
                        || (lu.is_color2() && lab == ColoringLabel::D))
                {
                    return false;
                }
                if l == k && same_level && lab.is_color3() && lu == lab {
                    return false;
                }
            }
            // full node constraint for every node completed by this assignment
            for v in 0..=i {
                if ready[v] != i {
                    continue;
                }
                let out: Vec<ColoringLabel> =
                    vals[..=i].iter().map(|&x| sigma[x as usize]).collect();
                // closed-neighborhood rules for v only
                if !node_khier_ok(tree, &levels, &out, v, k, variant) {
                    return false;
                }
            }
            true
        },
        |vals| {
            found.push(vals.iter().map(|&x| sigma[x as usize]).collect::<Vec<_>>());
        },
    )?;
    found.retain(|out| check_khier(tree, &levels, out, k, variant).ok());
    Ok(found)
}

/// The full per-node rule set of check_khier, restricted to node v. Valid to
/// call once v and all its neighbors are assigned.
fn node_khier_ok(
    tree: &Tree,
    levels: &crate::level::LevelMap,
    out: &[ColoringLabel],
    v: usize,
    k: u32,
    variant: Variant,
) -> bool {
    use ColoringLabel::*;
    let l = levels.level(v);
    let lab = out[v];
    if (2..=k).contains(&l) {
        let trigger = tree
            .neighbors(v)
            .any(|u| levels.level(u) < l && matches!(out[u], W | B | E));
        if (lab == E) != trigger {
            return false;
        }
    }
    if l == k && lab == E {
        if tree.neighbors(v).any(|u| levels.level(u) < l && out[u] == D) {
            return false;
        }
    }
    if (1..=k).contains(&l) && lab.is_color2() {
        if tree
            .neighbors(v)
            .any(|u| levels.level(u) == l && (out[u] == lab || out[u] == D))
        {
            return false;
        }
    }
    if l == k && variant == Variant::ThreeHalf && lab.is_color3() {
        if tree.neighbors(v).any(|u| out[u] == lab) {
            return false;
        }
    }
    true
}

const DFREE_SIGMA: [WeightPrimary; 3] =
    [WeightPrimary::Decline, WeightPrimary::Connect, WeightPrimary::Copy];

pub fn brute_dfree(
    tree: &Tree,
    inputs: &[InputLabel],
    d: usize,
    cap: u64,
) -> Result<Vec<Vec<WeightPrimary>>, BruteError> {
    let n = tree.node_count();
    let ready = ready_at(tree);
    let mut found = Vec::new();
    backtrack(
        &vec![3usize; n],
        cap,
        |vals, i| {
            let lab = DFREE_SIGMA[vals[i] as usize];
            if inputs[i] == InputLabel::Active && lab == WeightPrimary::Decline {
                return false;
            }
            for v in 0..=i {
                if ready[v] != i {
                    continue;
                }
                let out: Vec<WeightPrimary> =
                    vals[..=i].iter().map(|&x| DFREE_SIGMA[x as usize]).collect();
                match out[v] {
                    WeightPrimary::Connect => {
                        let support = match inputs[v] {
                            InputLabel::Active => tree
                                .neighbors(v)
                                .filter(|&u| out[u] == WeightPrimary::Connect)
                                .count(),
                            InputLabel::Weight => tree
                                .neighbors(v)
                                .filter(|&u| {
                                    out[u] == WeightPrimary::Connect
                                        || inputs[u] == InputLabel::Active
                                })
                                .count(),
                        };
                        let need = if inputs[v] == InputLabel::Active { 1 } else { 2 };
                        if support < need {
                            return false;
                        }
                    }
                    WeightPrimary::Copy => {
                        if tree
                            .neighbors(v)
                            .filter(|&u| out[u] == WeightPrimary::Decline)
                            .count()
                            > d
                        {
                            return false;
                        }
                    }
                    WeightPrimary::Decline => {}
                }
            }
            true
        },
        |vals| {
            found.push(vals.iter().map(|&x| DFREE_SIGMA[x as usize]).collect::<Vec<_>>());
        },
    )?;
    found.retain(|out| check_dfree(tree, inputs, out, d).ok());
    Ok(found)
}

pub fn brute_weighted(
    tree: &Tree,
    inputs: &[InputLabel],
    z: Variant,
    delta: usize,
    d: usize,
    k: u32,
    cap: u64,
) -> Result<Vec<Vec<MixedOut>>, BruteError> {
    if delta < d + 3 {
        return Err(ParamError::DeltaTooSmall { delta, d }.into());
    }
    let n = tree.node_count();
    let sigma = alphabet(z);
    // per-node domain: active -> coloring alphabet; weight -> Decline,
    // Connect, or Copy with each possible secondary.
    let decode = |v: usize, x: u8| -> MixedOut {
        match inputs[v] {
            InputLabel::Active => MixedOut::Active(sigma[x as usize]),
            InputLabel::Weight => match x {
                0 => MixedOut::Weight(WeightOutput { primary: WeightPrimary::Decline, secondary: None }),
                1 => MixedOut::Weight(WeightOutput { primary: WeightPrimary::Connect, secondary: None }),
                c => MixedOut::Weight(WeightOutput {
                    primary: WeightPrimary::Copy,
                    secondary: Some(sigma[(c - 2) as usize]),
                }),
            },
        }
    };
    let domains: Vec<usize> = (0..n)
        .map(|v| match inputs[v] {
            InputLabel::Active => sigma.len(),
            InputLabel::Weight => 2 + sigma.len(),
        })
        .collect();
    let mut found = Vec::new();
    backtrack(
        &domains,
        cap,
        |vals, i| {
            // certain pairwise violations only: a weight node adjacent to an
            // assigned active neighbor may not Decline, and adjacent Copy
            // nodes need equal secondaries
            let me = decode(i, vals[i]);
            for u in tree.neighbors(i).filter(|&u| u < i) {
                let other = decode(u, vals[u]);
                match (&me, &other) {
                    (MixedOut::Weight(w), MixedOut::Active(_))
                    | (MixedOut::Active(_), MixedOut::Weight(w)) => {
                        if w.primary == WeightPrimary::Decline {
                            return false;
                        }
                    }
                    (MixedOut::Weight(a), MixedOut::Weight(b)) => {
                        if a.primary == WeightPrimary::Copy
                            && b.primary == WeightPrimary::Copy
                            && a.secondary != b.secondary
                        {
                            return false;
                        }
                    }
                    _ => {}
                }
            }
            true
        },
        |vals| {
            let out: Vec<MixedOut> = (0..n).map(|v| decode(v, vals[v])).collect();
            found.push(out);
        },
    )?;
    let mut kept = Vec::new();
    for out in found {
        if check_weighted(tree, inputs, &out, z, delta, d, k)?.ok() {
            kept.push(out);
        }
    }
    Ok(kept)
}

/// Variable layout for problems with orientations: for each node v in order,
/// first v's label, then one orientation variable per edge (u, v) with u < v
/// (0 = unoriented, 1 = towards u, 2 = towards v).
struct EdgeVars {
    /// variable index of each node's label
    node_var: Vec<usize>,
    /// (u, v, var index) with u < v
    edges: Vec<(usize, usize, usize)>,
    total: usize,
}

fn edge_vars(tree: &Tree) -> EdgeVars {
    let n = tree.node_count();
    let mut node_var = vec![0usize; n];
    let mut edges = Vec::new();
    let mut next = 0usize;
    for v in 0..n {
        node_var[v] = next;
        next += 1;
        for u in tree.neighbors(v).filter(|&u| u < v) {
            edges.push((u, v, next));
            next += 1;
        }
    }
    EdgeVars { node_var, edges, total: next }
}

fn hier_tags(k: u32) -> Vec<HierTag> {
    let mut tags = Vec::new();
    for i in 1..=k {
        tags.push(HierTag::rake(i));
        if i < k {
            tags.push(HierTag::comp(i));
        }
    }
    tags
}

pub fn brute_hier(tree: &Tree, k: u32, cap: u64) -> Result<Vec<HierLabeling>, BruteError> {
    let n = tree.node_count();
    let vars = edge_vars(tree);
    let tags = hier_tags(k);
    let mut domains = vec![0usize; vars.total];
    for v in 0..n {
        domains[vars.node_var[v]] = tags.len();
    }
    for &(_, _, idx) in &vars.edges {
        domains[idx] = 3;
    }
    let decode = |vals: &[u8]| -> HierLabeling {
        let out_tags: Vec<HierTag> = (0..n).map(|v| tags[vals[vars.node_var[v]] as usize]).collect();
        let mut orient = Orientations::new();
        for &(u, v, idx) in &vars.edges {
            match vals[idx] {
                1 => orient.orient(v, u),
                2 => orient.orient(u, v),
                _ => {}
            }
        }
        HierLabeling { tags: out_tags, orient }
    };
    let mut found = Vec::new();
    backtrack(
        &domains,
        cap,
        |vals, i| {
            // edge variable: both endpoint tags are already assigned
            if let Some(&(u, v, _)) = vars.edges.iter().find(|&&(_, _, idx)| idx == i) {
                let (tu, tv) = (tags[vals[vars.node_var[u]] as usize], tags[vals[vars.node_var[v]] as usize]);
                match vals[i] {
                    0 => {
                        // rule 1: rake-adjacent edges must be oriented
                        if !tu.compress || !tv.compress {
                            return false;
                        }
                    }
                    1 => {
                        // v -> u, rule 3
                        if tu.rank() < tv.rank() {
                            return false;
                        }
                    }
                    _ => {
                        if tv.rank() < tu.rank() {
                            return false;
                        }
                    }
                }
            } else {
                // node tag: rules 4 and 5 against earlier-assigned neighbors
                let v = (0..n).find(|&v| vars.node_var[v] == i).unwrap();
                let tv = tags[vals[i] as usize];
                if tv.compress {
                    let mut same = 0;
                    for u in tree.neighbors(v).filter(|&u| u < v) {
                        let tu = tags[vals[vars.node_var[u]] as usize];
                        if tu.compress && tu != tv {
                            return false;
                        }
                        if tu == tv {
                            same += 1;
                        }
                    }
                    if same > 2 {
                        return false;
                    }
                }
            }
            true
        },
        |vals| found.push(decode(vals)),
    )?;
    found.retain(|out| check_hier_labeling(tree, out, k).ok());
    Ok(found)
}

fn brute_waug(
    tree: &Tree,
    inputs: &[InputLabel],
    k: u32,
    cap: u64,
) -> Result<Vec<WaugLabeling>, BruteError> {
    let n = tree.node_count();
    let vars = edge_vars(tree);
    let tags = hier_tags(k);
    // weight node label = (tag, secondary); secondary from {W,B,E,D,Decline}
    let weight_dom = tags.len() * 5;
    let mut domains = vec![0usize; vars.total];
    for v in 0..n {
        domains[vars.node_var[v]] = match inputs[v] {
            InputLabel::Active => ALPHABET2.len(),
            InputLabel::Weight => weight_dom,
        };
    }
    for &(u, v, idx) in &vars.edges {
        // active-active edges carry no orientation output
        let both_active = inputs[u] == InputLabel::Active && inputs[v] == InputLabel::Active;
        domains[idx] = if both_active { 1 } else { 3 };
    }
    let decode_node = |v: usize, x: u8| -> WaugOut {
        match inputs[v] {
            InputLabel::Active => WaugOut::Active(ALPHABET2[x as usize]),
            InputLabel::Weight => {
                let tag = tags[(x as usize) / 5];
                let secondary = match (x as usize) % 5 {
                    4 => WaugSecondary::Decline,
                    c => WaugSecondary::Col(ALPHABET2[c]),
                };
                WaugOut::Weight { tag, secondary }
            }
        }
    };
    let decode = |vals: &[u8]| -> WaugLabeling {
        let nodes: Vec<WaugOut> = (0..n).map(|v| decode_node(v, vals[vars.node_var[v]])).collect();
        let mut orient = Orientations::new();
        for &(u, v, idx) in &vars.edges {
            match vals[idx] {
                1 => orient.orient(v, u),
                2 => orient.orient(u, v),
                _ => {}
            }
        }
        WaugLabeling { nodes, orient }
    };
    let mut found = Vec::new();
    backtrack(
        &domains,
        cap,
        |vals, i| {
            if let Some(&(u, v, _)) = vars.edges.iter().find(|&&(_, _, idx)| idx == i) {
                let (ou, ov) = (decode_node(u, vals[vars.node_var[u]]), decode_node(v, vals[vars.node_var[v]]));
                // rule 1 of the inner labeling problem on weight-weight edges
                if let (WaugOut::Weight { tag: tu, .. }, WaugOut::Weight { tag: tv, .. }) = (&ou, &ov) {
                    match vals[i] {
                        0 if !tu.compress || !tv.compress => return false,
                        1 if tu.rank() < tv.rank() => return false,
                        2 if tv.rank() < tu.rank() => return false,
                        _ => {}
                    }
                }
            } else {
                let v = (0..n).find(|&v| vars.node_var[v] == i).unwrap();
                if let WaugOut::Weight { tag, secondary } = decode_node(v, vals[i]) {
                    // rule 5 is a unary condition given the input labels
                    let active_adj = tree.neighbors(v).any(|u| inputs[u] == InputLabel::Active);
                    let must_decline = tag.compress && !active_adj;
                    if (secondary == WaugSecondary::Decline) != must_decline {
                        return false;
                    }
                }
            }
            true
        },
        |vals| found.push(decode(vals)),
    )?;
    found.retain(|out| check_weight_augmented(tree, inputs, out, k).ok());
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::path_graph;

    #[test]
    fn path2_k1_two_colorings() {
        // level 1 = level k when k = 1: D is banned, E is banned, so only the
        // two proper 2-colorings survive
        let t = path_graph(2).unwrap();
        let sols = brute_khier(&t, 1, Variant::TwoHalf, DEFAULT_CAP).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            assert!(s[0].is_color2() && s[1].is_color2() && s[0] != s[1]);
        }
    }

    #[test]
    fn dfree_star_oracle() {
        use crate::tree::build_tree;
        let t = build_tree(&[(0, 1), (0, 2), (0, 3)], None).unwrap();
        let inputs = vec![
            InputLabel::Active,
            InputLabel::Weight,
            InputLabel::Weight,
            InputLabel::Weight,
        ];
        let sols = brute_dfree(&t, &inputs, 2, DEFAULT_CAP).unwrap();
        assert!(!sols.is_empty());
        for s in &sols {
            if s[0] == WeightPrimary::Copy {
                let declines = (1..4).filter(|&v| s[v] == WeightPrimary::Decline).count();
                assert!(declines <= 2);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = path_graph(6).unwrap();
        assert_eq!(
            brute_khier(&t, 2, Variant::TwoHalf, 10),
            Err(BruteError::CapExceeded(10))
        );
    }
}
