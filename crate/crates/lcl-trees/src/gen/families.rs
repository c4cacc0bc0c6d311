//! Instance families: the adversarial lower-bound graphs and the weighted
//! construction attaching balanced weight trees to them.

use crate::gen::params::round_half_up;
use crate::io::Meta;
use crate::level::{compute_levels, LevelMap};
use crate::tree::{
    balanced_regular_tree, build_tree, InputLabel, Tree, TreeError,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("need at least 2 lengths, got {0}")]
    TooFewLengths(usize),
    #[error("all lengths must be at least 1")]
    ZeroLength,
    #[error("level {0} of the core graph is empty")]
    EmptyLevel(u32),
    #[error("k must be at least 2 to attach weight")]
    KTooSmall,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A lower-bound graph together with its level structure.
pub struct LbGraph {
    pub tree: Tree,
    /// levels as the checker computes them (peeling)
    pub levels: LevelMap,
    /// levels as assigned during construction; differs from `levels` only at
    /// the two end nodes of each level-i path with i >= 2, which peeling
    /// absorbs into the neighboring lower-level paths
    pub constructed: Vec<u32>,
}

/// The recursive lower-bound family: a level-k path of lengths[k-1] nodes,
/// where every constructed level-(i+1) node carries one attached level-i path
/// of lengths[i-1] nodes.
pub fn lower_bound_graph(lengths: &[u64]) -> Result<LbGraph, GenError> {
    let k = lengths.len();
    if k < 2 {
        return Err(GenError::TooFewLengths(k));
    }
    if lengths.iter().any(|&l| l == 0) {
        return Err(GenError::ZeroLength);
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut constructed: Vec<u32> = Vec::new();
    let mut next = 0usize;
    let mut new_path = |edges: &mut Vec<(usize, usize)>,
                        constructed: &mut Vec<u32>,
                        len: u64,
                        level: u32|
     -> Vec<usize> {
        let nodes: Vec<usize> = (0..len as usize).map(|i| next + i).collect();
        next += len as usize;
        for w in nodes.windows(2) {
            edges.push((w[0], w[1]));
        }
        constructed.extend(std::iter::repeat(level).take(len as usize));
        nodes
    };

    let spine = new_path(&mut edges, &mut constructed, lengths[k - 1], k as u32);
    // frontier of nodes still owed an attached path one level down
    let mut frontier = spine;
    for i in (1..k).rev() {
        let mut nxt = Vec::new();
        for v in frontier {
            let path = new_path(&mut edges, &mut constructed, lengths[i - 1], i as u32);
            edges.push((v, path[0]));
            nxt.extend(path);
        }
        frontier = nxt;
    }

    let tree = build_tree(&edges, None)?;
    debug_assert!(tree.max_degree() <= 3);
    let levels = compute_levels(&tree, k as u32);
    Ok(LbGraph { tree, levels, constructed })
}

/// Typed generation record kept with every instance.
#[derive(Debug, Clone)]
pub struct InstanceMeta {
    pub family: String,
    pub k: u32,
    pub delta: Option<usize>,
    pub d: Option<usize>,
    /// requested lengths before any adjustment
    pub lengths: Vec<u64>,
    /// lengths actually used for the core graph
    pub core_lengths: Vec<u64>,
    pub seed: u64,
}

impl InstanceMeta {
    pub fn to_meta(&self) -> Meta {
        let mut m = Meta::new();
        m.insert("family".into(), serde_json::json!(self.family));
        m.insert("k".into(), serde_json::json!(self.k));
        if let Some(delta) = self.delta {
            m.insert("delta".into(), serde_json::json!(delta));
        }
        if let Some(d) = self.d {
            m.insert("d".into(), serde_json::json!(d));
        }
        m.insert("lengths".into(), serde_json::json!(self.lengths));
        m.insert("core_lengths".into(), serde_json::json!(self.core_lengths));
        m.insert("seed".into(), serde_json::json!(self.seed));
        m
    }
}

/// A generated problem instance.
pub struct Instance {
    pub tree: Tree,
    pub inputs: Vec<InputLabel>,
    pub meta: InstanceMeta,
}

impl Instance {
    pub fn active_count(&self) -> usize {
        self.inputs.iter().filter(|&&i| i == InputLabel::Active).count()
    }
}

/// The weighted construction: a lower-bound core of about n/k active nodes
/// (lengths shrunk by k^{1/k}), and for each level set L_2..L_k of the core a
/// budget of n/k weight nodes split evenly into balanced delta-regular trees,
/// one per level-i node, remainder spread one per node in index order.
pub fn weighted_construction(
    n: u64,
    lengths: &[u64],
    delta: usize,
    d: usize,
    k: u32,
) -> Result<Instance, GenError> {
    if k < 2 {
        return Err(GenError::KTooSmall);
    }
    assert_eq!(lengths.len(), k as usize);
    let shrink = (k as f64).powf(1.0 / k as f64);
    let mut core_lengths: Vec<u64> = lengths
        .iter()
        .map(|&l| round_half_up(l as f64 / shrink).max(1))
        .collect();
    // the last length absorbs the rounding residual so the core stays ~ n/k
    let prod: u64 = core_lengths[..k as usize - 1].iter().product();
    core_lengths[k as usize - 1] =
        round_half_up(n as f64 / k as f64 / prod as f64).max(1);

    let core = lower_bound_graph(&core_lengths)?;
    let n_core = core.tree.node_count();
    let budget = (n / k as u64) as usize;

    let mut edges: Vec<(usize, usize)> = core.tree.edges();
    let mut inputs = vec![InputLabel::Active; n_core];
    let mut next = n_core;
    for i in 2..=k {
        let hosts: Vec<usize> = (0..n_core).filter(|&v| core.levels.level(v) == i).collect();
        if hosts.is_empty() {
            return Err(GenError::EmptyLevel(i));
        }
        let base = budget / hosts.len();
        let remainder = budget % hosts.len();
        for (pos, &host) in hosts.iter().enumerate() {
            let size = base + usize::from(pos < remainder);
            if size == 0 {
                continue;
            }
            let sub = balanced_regular_tree(delta, size)?;
            for (a, b) in sub.edges() {
                edges.push((next + a, next + b));
            }
            edges.push((host, next)); // root of the weight tree
            inputs.extend(std::iter::repeat(InputLabel::Weight).take(size));
            next += size;
        }
    }
    let tree = build_tree(&edges, None)?;
    debug_assert_eq!(tree.node_count(), inputs.len());
    Ok(Instance {
        tree,
        inputs,
        meta: InstanceMeta {
            family: "weighted".into(),
            k,
            delta: Some(delta),
            d: Some(d),
            lengths: lengths.to_vec(),
            core_lengths,
            seed: 0,
        },
    })
}

/// Reassigns ids by a seeded uniform draw of n distinct values from
/// {1, ..., n*factor}.
pub fn permute_ids(tree: &Tree, factor: u64, seed: u64) -> Tree {
    assert!(factor >= 1);
    let n = tree.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = rand::seq::index::sample(&mut rng, (n as u64 * factor) as usize, n);
    let ids: Vec<u64> = sample.iter().map(|i| i as u64 + 1).collect();
    tree.with_ids(ids).expect("sampled ids are distinct")
}

/// Uniform-attachment random tree with a degree cap.
pub fn random_tree(n: usize, max_degree: usize, seed: u64) -> Tree {
    assert!(n >= 1 && max_degree >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let u = loop {
            let u = rng.gen_range(0..v);
            if deg[u] < max_degree {
                break u;
            }
        };
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u, v));
    }
    build_tree(&edges, None).expect("attachment process yields a tree")
}

/// Seeded Active/Weight inputs where each node is Active with probability p.
pub fn random_inputs(n: usize, p_active: f64, seed: u64) -> Vec<InputLabel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            if rng.gen_bool(p_active) {
                InputLabel::Active
            } else {
                InputLabel::Weight
            }
        })
        .collect()
}
