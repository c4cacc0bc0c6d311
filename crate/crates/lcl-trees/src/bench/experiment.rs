//! Experiment driver: sweep a family over an n grid, solve every (n, seed)
//! cell, validate, and collect node-averaged round counts.
//!
//! Cells run in parallel up to a worker cap (flag or LCL_BENCH_WORKERS);
//! each cell owns its instance and trace, and results come back in grid
//! order so repeated runs produce identical bytes apart from the wall_ms
//! column.

use crate::algo::{
    a_poly, generic_khier, weight_augmented_solve, GenericParams,
};
use crate::checkers::{check_khier, check_weight_augmented, check_weighted};
use crate::gen::{iterated_log, permute_ids, x_factor, GenError};
use crate::labels::Variant;
use crate::level::compute_levels;
use crate::sim::{total_rounds, worst_case, RunTrace};
use crate::tree::Tree;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("n_grid must be non-empty and strictly increasing")]
    BadGrid,
    #[error("seeds must be at least 1")]
    NoSeeds,
    #[error("variant must be \"2.5\" or \"3.5\", got {0:?}")]
    BadVariant(String),
    #[error("family {family} needs {need} exponents for k={k}, got {got}")]
    BadExponents { family: &'static str, need: usize, got: usize, k: u32 },
    #[error("generation failed at n={n} seed={seed}: {source}")]
    Gen { n: u64, seed: u64, source: GenError },
    #[error("solve failed at n={n} seed={seed}: {msg}")]
    Solve { n: u64, seed: u64, msg: String },
    #[error("checker rejected the output at n={n} seed={seed}: {first}")]
    Invalid { n: u64, seed: u64, first: String },
}

/// One experiment: a family swept over target sizes with several seeds.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentConfig {
    pub family: FamilySpec,
    /// "2.5" or "3.5"
    pub variant: String,
    pub k: u32,
    pub n_grid: Vec<u64>,
    pub seeds: u32,
    /// ids are drawn from {1, ..., n * id_factor} per cell seed
    #[serde(default = "default_id_factor")]
    pub id_factor: u64,
    /// run the matching checker on every cell
    #[serde(default = "default_true")]
    pub validate: bool,
}

fn default_id_factor() -> u64 {
    3
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Lower-bound graph, solved by generic_khier. Path length l_i =
    /// ceil(base^{exponents[i-1]}) for i < k where base is n (or log* n
    /// with `logstar`); the level-k spine absorbs the residual so the node
    /// count lands near n. The phase budgets reuse the lengths:
    /// gamma_i = l_i.
    Lb {
        exponents: Vec<f64>,
        #[serde(default)]
        logstar: bool,
    },
    /// weighted_construction, solved by a_poly.
    Weighted { delta: usize, d: usize },
    /// Active spine with one balanced weight tree per spine node, solved by
    /// weight_augmented_solve. The weight trees absorb n: w = n/spine - 1.
    Waug { delta: usize, spine: usize },
}

impl FamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Lb { .. } => "lb",
            FamilySpec::Weighted { .. } => "weighted",
            FamilySpec::Waug { .. } => "waug",
        }
    }

    pub fn algorithm_name(&self) -> &'static str {
        match self {
            FamilySpec::Lb { .. } => "generic",
            FamilySpec::Weighted { .. } => "apoly",
            FamilySpec::Waug { .. } => "waug",
        }
    }

    fn delta(&self) -> Option<usize> {
        match *self {
            FamilySpec::Lb { .. } => None,
            FamilySpec::Weighted { delta, .. } | FamilySpec::Waug { delta, .. } => Some(delta),
        }
    }

    fn d(&self) -> Option<usize> {
        match *self {
            FamilySpec::Weighted { d, .. } => Some(d),
            _ => None,
        }
    }
}

/// One (n, seed) measurement. `avg` is exported as total / n, so the
/// identity total = avg * n holds exactly in the integers kept here.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: u64,
    pub seed: u64,
    pub family: &'static str,
    pub algorithm: &'static str,
    pub variant: Variant,
    pub delta: Option<usize>,
    pub d: Option<usize>,
    pub k: u32,
    pub worst_rounds: u64,
    pub total_rounds: u128,
    pub wall_ms: u64,
}

impl Row {
    pub fn avg_rounds(&self) -> f64 {
        self.total_rounds as f64 / self.n as f64
    }
}

/// Everything one run produced: the rows plus invariant counters that the
/// acceptance gate checks across all benchmark traffic.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub rows: Vec<Row>,
    /// algorithm-A copy balls checked against |ball_copies| <= 6 * |ball|^x
    pub copy_balls_checked: u64,
    pub copy_violations: u64,
    /// generic phases checked against the 2(1+2^k) shrinkage bound
    pub shrinkage_checked: u64,
    pub shrinkage_violations: u64,
}

pub fn parse_variant(s: &str) -> Result<Variant, BenchError> {
    match s {
        "2.5" => Ok(Variant::TwoHalf),
        "3.5" => Ok(Variant::ThreeHalf),
        other => Err(BenchError::BadVariant(other.to_string())),
    }
}

/// Worker count for the rayon pool: explicit flag first, then the
/// LCL_BENCH_WORKERS environment variable, else one thread per core.
pub fn effective_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("LCL_BENCH_WORKERS").ok().and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

pub fn run_experiment(
    config: &ExperimentConfig,
    workers: Option<usize>,
) -> Result<ExperimentReport, BenchError> {
    if config.n_grid.is_empty() || config.n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BenchError::BadGrid);
    }
    if config.seeds == 0 {
        return Err(BenchError::NoSeeds);
    }
    let variant = parse_variant(&config.variant)?;
    if let FamilySpec::Lb { exponents, .. } = &config.family {
        if exponents.len() + 1 != config.k as usize {
            return Err(BenchError::BadExponents {
                family: "lb",
                need: config.k as usize - 1,
                got: exponents.len(),
                k: config.k,
            });
        }
    }

    let cells: Vec<(u64, u64)> = config
        .n_grid
        .iter()
        .flat_map(|&n| (0..config.seeds as u64).map(move |s| (n, s)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(effective_workers(workers))
        .build()
        .expect("thread pool");
    let results: Vec<Result<CellResult, BenchError>> = pool.install(|| {
        cells.par_iter().map(|&(n, seed)| run_cell(config, variant, n, seed)).collect()
    });

    let mut report = ExperimentReport {
        rows: Vec::with_capacity(cells.len()),
        copy_balls_checked: 0,
        copy_violations: 0,
        shrinkage_checked: 0,
        shrinkage_violations: 0,
    };
    for r in results {
        let c = r?;
        report.rows.push(c.row);
        report.copy_balls_checked += c.copy_balls_checked;
        report.copy_violations += c.copy_violations;
        report.shrinkage_checked += c.shrinkage_checked;
        report.shrinkage_violations += c.shrinkage_violations;
    }
    Ok(report)
}

struct CellResult {
    row: Row,
    copy_balls_checked: u64,
    copy_violations: u64,
    shrinkage_checked: u64,
    shrinkage_violations: u64,
}

fn cell_id_seed(n: u64, seed: u64) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(n)
}

fn run_cell(
    config: &ExperimentConfig,
    variant: Variant,
    n: u64,
    seed: u64,
) -> Result<CellResult, BenchError> {
    let started = Instant::now();
    let k = config.k;
    let mut copy = (0u64, 0u64);
    let mut shrink = (0u64, 0u64);

    let (tree, trace): (Tree, RunTrace) = match &config.family {
        FamilySpec::Lb { exponents, logstar } => {
            let lengths = lb_lengths(n, exponents, *logstar);
            let g = crate::gen::lower_bound_graph(&lengths)
                .map_err(|source| BenchError::Gen { n, seed, source })?;
            let tree = permute_ids(&g.tree, config.id_factor, cell_id_seed(n, seed));
            let gammas = lengths[..k as usize - 1].to_vec();
            let levels = compute_levels(&tree, k);
            let r = generic_khier(&tree, &levels, &GenericParams { gammas: gammas.clone(), variant })
                .map_err(|e| BenchError::Solve { n, seed, msg: e.to_string() })?;
            for (s, &g) in r.stats.iter().zip(&gammas) {
                shrink.0 += 1;
                let bound =
                    2.0 * (1.0 + 2f64.powi(k as i32)) * s.undecided_before as f64 / g as f64;
                if s.undecided_after as f64 > bound {
                    shrink.1 += 1;
                }
            }
            if config.validate {
                let v = check_khier(&tree, &levels, &r.out, k, variant);
                first_violation(v, n, seed)?;
            }
            (tree, r.trace)
        }
        FamilySpec::Weighted { delta, d } => {
            let x = x_factor(*delta, *d)
                .map_err(|e| BenchError::Solve { n, seed, msg: e.to_string() })?;
            let alphas = crate::gen::alpha_seq_poly(x, k)
                .map_err(|e| BenchError::Solve { n, seed, msg: e.to_string() })?;
            let lengths = crate::gen::lengths_from_exponents(n, &alphas, crate::gen::Regime::Poly)
                .map_err(|e| BenchError::Solve { n, seed, msg: e.to_string() })?;
            let inst = crate::gen::weighted_construction(n, &lengths, *delta, *d, k)
                .map_err(|source| BenchError::Gen { n, seed, source })?;
            let tree = permute_ids(&inst.tree, config.id_factor, cell_id_seed(n, seed));
            let r = a_poly(&tree, &inst.inputs, *delta, *d, k, variant)
                .map_err(|e| BenchError::Solve { n, seed, msg: e.to_string() })?;
            for s in &r.seeds {
                copy.0 += 1;
                if s.copies as f64 > 6.0 * (s.ball_size as f64).powf(x) {
                    copy.1 += 1;
                }
            }
            if config.validate {
                let v = check_weighted(&tree, &inst.inputs, &r.out, variant, *delta, *d, k)
                    .map_err(|e| BenchError::Solve { n, seed, msg: e.to_string() })?;
                first_violation(v, n, seed)?;
            }
            (tree, r.trace)
        }
        FamilySpec::Waug { delta, spine } => {
            let w = (n as usize / spine.max(&1)).saturating_sub(1).max(1);
            let (tree0, inputs) =
                crate::algo::active_path_with_weight_trees(*spine, *delta, w);
            let tree = permute_ids(&tree0, config.id_factor, cell_id_seed(n, seed));
            let r = weight_augmented_solve(&tree, &inputs, k)
                .map_err(|e| BenchError::Solve { n, seed, msg: e.to_string() })?;
            if config.validate {
                let v = check_weight_augmented(&tree, &inputs, &r.out, k);
                first_violation(v, n, seed)?;
            }
            (tree, r.trace)
        }
    };

    let row = Row {
        n: tree.node_count() as u64,
        seed,
        family: config.family.family_name(),
        algorithm: config.family.algorithm_name(),
        variant,
        delta: config.family.delta(),
        d: config.family.d(),
        k,
        worst_rounds: worst_case(&trace),
        total_rounds: total_rounds(&trace),
        wall_ms: started.elapsed().as_millis() as u64,
    };
    Ok(CellResult {
        row,
        copy_balls_checked: copy.0,
        copy_violations: copy.1,
        shrinkage_checked: shrink.0,
        shrinkage_violations: shrink.1,
    })
}

fn first_violation(v: crate::checkers::Verdict, n: u64, seed: u64) -> Result<(), BenchError> {
    match v.violations.first() {
        None => Ok(()),
        Some(first) => Err(BenchError::Invalid { n, seed, first: format!("{first:?}") }),
    }
}

/// Path lengths for the lower-bound family: l_i = ceil(base^{e_i}) capped
/// below at 1, with the spine length chosen so the recursive construction
/// totals about n nodes.
pub fn lb_lengths(n: u64, exponents: &[f64], logstar: bool) -> Vec<u64> {
    let base = if logstar { iterated_log(n) as f64 } else { n as f64 };
    let mut lengths: Vec<u64> =
        exponents.iter().map(|&e| (base.powf(e).ceil() as u64).max(1)).collect();
    // cost of one spine node with its full recursive attachment
    let mut per_spine = 1.0;
    for &l in lengths.iter().rev() {
        per_spine = 1.0 + l as f64 * per_spine;
    }
    lengths.push(((n as f64 / per_spine).round() as u64).max(1));
    lengths
}

pub const CSV_HEADER: &str =
    "n,seed,family,algorithm,variant,delta,d,k,avg_rounds,worst_rounds,total_rounds,wall_ms";

/// Frozen CSV export; the average is printed with 12 significant digits.
pub fn write_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let variant = match r.variant {
            Variant::TwoHalf => "2.5",
            Variant::ThreeHalf => "3.5",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{:.11e},{},{},{}\n",
            r.n,
            r.seed,
            r.family,
            r.algorithm,
            variant,
            opt(r.delta),
            opt(r.d),
            r.k,
            r.avg_rounds(),
            r.worst_rounds,
            r.total_rounds,
            r.wall_ms,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lb_config(n_grid: Vec<u64>) -> ExperimentConfig {
        ExperimentConfig {
            family: FamilySpec::Lb { exponents: vec![1.0 / 3.0], logstar: false },
            variant: "2.5".into(),
            k: 2,
            n_grid,
            seeds: 1,
            id_factor: 3,
            validate: true,
        }
    }

    #[test]
    fn smoke_single_cell() {
        let report = run_experiment(&lb_config(vec![1000]), Some(1)).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert!(row.avg_rounds() >= 1.0);
        assert!(row.n >= 900 && row.n <= 1100, "n={}", row.n);
        // exact rational bookkeeping before float export
        assert_eq!(row.total_rounds, (row.avg_rounds() * row.n as f64).round() as u128);
        assert_eq!(report.shrinkage_violations, 0);
        assert!(report.shrinkage_checked >= 1);
    }

    #[test]
    fn bad_configs_rejected() {
        let mut c = lb_config(vec![1000, 500]);
        assert!(matches!(run_experiment(&c, Some(1)), Err(BenchError::BadGrid)));
        c.n_grid = vec![500, 1000];
        c.seeds = 0;
        assert!(matches!(run_experiment(&c, Some(1)), Err(BenchError::NoSeeds)));
        c.seeds = 1;
        c.variant = "4.5".into();
        assert!(matches!(run_experiment(&c, Some(1)), Err(BenchError::BadVariant(_))));
        c.variant = "2.5".into();
        c.family = FamilySpec::Lb { exponents: vec![], logstar: false };
        assert!(matches!(run_experiment(&c, Some(1)), Err(BenchError::BadExponents { .. })));
    }

    #[test]
    fn deterministic_modulo_wall_ms() {
        let cfg = lb_config(vec![500, 2000]);
        let a = run_experiment(&cfg, Some(2)).unwrap();
        let b = run_experiment(&cfg, Some(1)).unwrap();
        let strip = |rows: &[Row]| {
            rows.iter().map(|r| Row { wall_ms: 0, ..r.clone() }).collect::<Vec<_>>()
        };
        assert_eq!(strip(&a.rows), strip(&b.rows));
        // the CSVs agree except for the final wall_ms column
        let cut = |csv: String| {
            csv.lines()
                .map(|l| l.rsplit_once(',').unwrap().0.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(cut(write_csv(&a.rows)), cut(write_csv(&b.rows)));
    }

    #[test]
    fn weighted_and_waug_smoke() {
        let cfg = ExperimentConfig {
            family: FamilySpec::Weighted { delta: 5, d: 2 },
            variant: "2.5".into(),
            k: 2,
            n_grid: vec![4000],
            seeds: 2,
            id_factor: 3,
            validate: true,
        };
        let report = run_experiment(&cfg, Some(2)).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report.copy_balls_checked > 0);
        assert_eq!(report.copy_violations, 0);

        let cfg = ExperimentConfig {
            family: FamilySpec::Waug { delta: 4, spine: 3 },
            variant: "2.5".into(),
            k: 2,
            n_grid: vec![2000],
            seeds: 1,
            id_factor: 3,
            validate: true,
        };
        let report = run_experiment(&cfg, Some(1)).unwrap();
        let row = &report.rows[0];
        // spine of 3 with trees of 665 -> 1998 nodes
        assert_eq!(row.n, 1998);
        // active nodes wait 2*ceil(sqrt(n)) rounds and everything else
        // cascades off them
        assert!(row.avg_rounds() >= 2.0 * (row.n as f64).sqrt() * 0.5);
    }

    #[test]
    fn config_json_round_trip() {
        let cfg = lb_config(vec![100, 1000]);
        let s = serde_json::to_string(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cfg);
        // defaults fill in when omitted
        let min = r#"{"family":{"name":"weighted","delta":5,"d":2},
                      "variant":"3.5","k":2,"n_grid":[100],"seeds":1}"#;
        let back: ExperimentConfig = serde_json::from_str(min).unwrap();
        assert_eq!(back.id_factor, 3);
        assert!(back.validate);
    }

    #[test]
    fn lb_lengths_sizing() {
        // k=2 with e=1/3: l1 = ceil(n^(1/3)), spine * (1+l1) ~ n
        let l = lb_lengths(100_000, &[1.0 / 3.0], false);
        assert_eq!(l[0], 47);
        assert_eq!(l[1], (100_000f64 / 48.0).round() as u64);
        // logstar base
        let l = lb_lengths(10_000_000, &[0.5], true);
        assert_eq!(l[0], 3); // ceil(sqrt(log* 10^7)) = ceil(sqrt 5)
    }

    #[test]
    fn worker_env_parsing() {
        assert_eq!(effective_workers(Some(4)), 4);
        // without a flag this falls back to the env var or 0 (pool default);
        // only check it does not panic
        let _ = effective_workers(None);
    }
}
