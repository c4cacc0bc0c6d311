//! `lcl`: generate instances, run solvers, validate labelings, and drive
//! benchmark sweeps from the command line.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lcl_trees::algo::{
    a_poly, generic_khier, hier_labeling_solve, weight_augmented_solve, GenericParams,
};
use lcl_trees::bench::{
    fit_exponent, parse_variant, predict, run_experiment, write_csv, ExperimentConfig, XTransform,
};
use lcl_trees::checkers::{
    check_dfree, check_hier_labeling, check_khier, check_weight_augmented, check_weighted, Verdict,
};
use lcl_trees::gen::{
    lower_bound_graph, permute_ids, weighted_construction, Regime,
};
use lcl_trees::io::{
    decode_dfree, decode_hier, decode_khier, decode_waug, decode_weighted, encode_hier,
    encode_khier, encode_waug, encode_weighted, GraphFile, LabelFile, Meta,
};
use lcl_trees::level::compute_levels;
use lcl_trees::sim::{summary_json, trace_csv, RunTrace};
use lcl_trees::tree::{InputLabel, Tree};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "lcl", version, about = "LCL experiments on bounded-degree trees")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance and write it as canonical graph JSON
    Gen(GenArgs),
    /// Run a solver on a graph file and write the labeling
    Solve(SolveArgs),
    /// Validate a labeling; exits 0 iff the checker accepts
    Check(CheckArgs),
    /// Sweep an experiment config and write the measurement CSV
    Bench(BenchArgs),
    /// Fit a scaling exponent to a measurement CSV
    Fit(FitArgs),
    /// Closed-form exponent prediction for the weighted problems
    Predict(PredictArgs),
}

#[derive(Args)]
struct GenArgs {
    /// lb | weighted | waug
    #[arg(long)]
    family: String,
    /// target node count
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u32,
    /// lb: exponents e_1..e_{k-1}, path length l_i = ceil(base^{e_i})
    #[arg(long, value_delimiter = ',')]
    exponents: Vec<f64>,
    /// lb: use log* n as the base for the lengths
    #[arg(long, default_value_t = false)]
    logstar: bool,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// waug: number of active spine nodes
    #[arg(long)]
    spine: Option<usize>,
    /// reassign ids from a seeded draw out of {1, ..., n * id_factor}
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    id_factor: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// generic | apoly | labeling | waug
    #[arg(long)]
    algorithm: String,
    /// 2.5 | 3.5
    #[arg(long, default_value = "2.5")]
    variant: String,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// per-node termination rounds as CSV
    #[arg(long)]
    trace: Option<PathBuf>,
    /// generic: phase budgets gamma_1..gamma_{k-1}
    #[arg(long, value_delimiter = ',')]
    gammas: Vec<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    /// khier | dfree | weighted | hier | waug
    #[arg(long)]
    problem: String,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    #[arg(long, default_value = "2.5")]
    variant: String,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    csv: PathBuf,
    /// worker cap; falls back to LCL_BENCH_WORKERS, then one per core
    #[arg(long)]
    workers: Option<usize>,
    /// override the seed count from the config
    #[arg(long)]
    seeds: Option<u32>,
    /// skip per-cell output validation
    #[arg(long, default_value_t = false)]
    no_validate: bool,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    csv: PathBuf,
    /// n | logstar
    #[arg(long, default_value = "n")]
    x: String,
    /// avg_rounds | worst_rounds | total_rounds
    #[arg(long, default_value = "avg_rounds")]
    y: String,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: u32,
    /// poly | logstar
    #[arg(long, default_value = "poly")]
    regime: String,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Cmd::Gen(a) => gen(a),
        Cmd::Solve(a) => solve(a),
        Cmd::Check(a) => check(a),
        Cmd::Bench(a) => bench(a),
        Cmd::Fit(a) => fit(a),
        Cmd::Predict(a) => run_predict(a),
    }
}

fn gen(a: GenArgs) -> Result<()> {
    let mut meta = Meta::new();
    meta.insert("family".into(), serde_json::json!(a.family));
    meta.insert("k".into(), serde_json::json!(a.k));
    let (tree, inputs): (Tree, Option<Vec<InputLabel>>) = match a.family.as_str() {
        "lb" => {
            if a.exponents.len() + 1 != a.k as usize {
                bail!("lb needs {} exponents for k={}", a.k - 1, a.k);
            }
            let lengths = lcl_trees::bench::lb_lengths(a.n, &a.exponents, a.logstar);
            meta.insert("lengths".into(), serde_json::json!(lengths));
            let g = lower_bound_graph(&lengths)?;
            (g.tree, None)
        }
        "weighted" => {
            let (delta, d) = (req(a.delta, "--delta")?, req(a.d, "--d")?);
            let x = lcl_trees::gen::x_factor(delta, d)?;
            let alphas = lcl_trees::gen::alpha_seq_poly(x, a.k)?;
            let lengths = lcl_trees::gen::lengths_from_exponents(a.n, &alphas, Regime::Poly)?;
            let inst = weighted_construction(a.n, &lengths, delta, d, a.k)?;
            meta = inst.meta.to_meta();
            meta.insert("family".into(), serde_json::json!("weighted"));
            (inst.tree, Some(inst.inputs))
        }
        "waug" => {
            let (delta, spine) = (req(a.delta, "--delta")?, req(a.spine, "--spine")?);
            let w = (a.n as usize / spine.max(1)).saturating_sub(1).max(1);
            meta.insert("delta".into(), serde_json::json!(delta));
            meta.insert("spine".into(), serde_json::json!(spine));
            meta.insert("w".into(), serde_json::json!(w));
            let (tree, inputs) =
                lcl_trees::algo::active_path_with_weight_trees(spine, delta, w);
            (tree, Some(inputs))
        }
        other => bail!("unknown family {other:?}"),
    };
    let tree = match a.seed {
        Some(seed) => {
            meta.insert("seed".into(), serde_json::json!(seed));
            meta.insert("id_factor".into(), serde_json::json!(a.id_factor));
            permute_ids(&tree, a.id_factor, seed)
        }
        None => tree,
    };
    let file = GraphFile::from_tree(&tree, inputs.as_deref(), Some(meta));
    fs::write(&a.out, file.to_canonical_json()).context("writing graph file")?;
    eprintln!("wrote {} nodes to {}", tree.node_count(), a.out.display());
    Ok(())
}

fn solve(a: SolveArgs) -> Result<()> {
    let gf = read_graph(&a.graph)?;
    let tree = gf.to_tree()?;
    let variant = parse_variant(&a.variant)?;
    let mut params = Meta::new();
    params.insert("algorithm".into(), serde_json::json!(a.algorithm));

    let (file, trace): (LabelFile, RunTrace) = match a.algorithm.as_str() {
        "generic" => {
            if a.gammas.is_empty() {
                bail!("generic needs --gammas");
            }
            let k = a.gammas.len() as u32 + 1;
            let levels = compute_levels(&tree, k);
            let r = generic_khier(
                &tree,
                &levels,
                &GenericParams { gammas: a.gammas.clone(), variant },
            )?;
            params.insert("k".into(), serde_json::json!(k));
            params.insert("gammas".into(), serde_json::json!(a.gammas));
            params.insert("variant".into(), serde_json::json!(variant.as_str()));
            (encode_khier(&r.out, params), r.trace)
        }
        "apoly" => {
            let inputs = req_inputs(&gf)?;
            let (delta, d, k) =
                (req(a.delta, "--delta")?, req(a.d, "--d")?, req(a.k, "--k")?);
            let r = a_poly(&tree, &inputs, delta, d, k, variant)?;
            params.insert("delta".into(), serde_json::json!(delta));
            params.insert("d".into(), serde_json::json!(d));
            params.insert("k".into(), serde_json::json!(k));
            params.insert("variant".into(), serde_json::json!(variant.as_str()));
            (encode_weighted(&r.out, params), r.trace)
        }
        "labeling" => {
            let k = req(a.k, "--k")?;
            let (out, trace) = hier_labeling_solve(&tree, k)?;
            params.insert("k".into(), serde_json::json!(k));
            (encode_hier(&tree, &out, params), trace)
        }
        "waug" => {
            let inputs = req_inputs(&gf)?;
            let k = req(a.k, "--k")?;
            let r = weight_augmented_solve(&tree, &inputs, k)?;
            params.insert("k".into(), serde_json::json!(k));
            (encode_waug(&tree, &r.out, params), r.trace)
        }
        other => bail!("unknown algorithm {other:?}"),
    };

    fs::write(&a.out, file.to_canonical_json()).context("writing label file")?;
    if let Some(path) = &a.trace {
        let csv = trace_csv(&tree, None, gf.inputs.as_deref(), &trace);
        fs::write(path, csv).context("writing trace file")?;
    }
    println!("{}", summary_json(&trace));
    Ok(())
}

fn check(a: CheckArgs) -> Result<()> {
    let gf = read_graph(&a.graph)?;
    let tree = gf.to_tree()?;
    let lf = LabelFile::from_json(&fs::read_to_string(&a.labels).context("reading labels")?)?;
    let variant = parse_variant(&a.variant)?;
    let n = tree.node_count();

    let verdict: Verdict = match a.problem.as_str() {
        "khier" => {
            let k = req(a.k, "--k")?;
            let out = decode_khier(&lf, n)?;
            check_khier(&tree, &compute_levels(&tree, k), &out, k, variant)
        }
        "dfree" => {
            let inputs = req_inputs(&gf)?;
            let out = decode_dfree(&lf, n)?;
            check_dfree(&tree, &inputs, &out, req(a.d, "--d")?)
        }
        "weighted" => {
            let inputs = req_inputs(&gf)?;
            let out = decode_weighted(&lf, &inputs)?;
            let (delta, d, k) =
                (req(a.delta, "--delta")?, req(a.d, "--d")?, req(a.k, "--k")?);
            check_weighted(&tree, &inputs, &out, variant, delta, d, k)?
        }
        "hier" => {
            let out = decode_hier(&lf, n)?;
            check_hier_labeling(&tree, &out, req(a.k, "--k")?)
        }
        "waug" => {
            let inputs = req_inputs(&gf)?;
            let out = decode_waug(&lf, &inputs)?;
            check_weight_augmented(&tree, &inputs, &out, req(a.k, "--k")?)
        }
        other => bail!("unknown problem {other:?}"),
    };

    if verdict.ok() {
        println!("ok");
        Ok(())
    } else {
        for v in verdict.violations.iter().take(5) {
            eprintln!("violation: {v:?}");
        }
        eprintln!("{} violations total", verdict.violations.len());
        std::process::exit(1);
    }
}

fn bench(a: BenchArgs) -> Result<()> {
    let mut config: ExperimentConfig =
        serde_json::from_str(&fs::read_to_string(&a.config).context("reading config")?)?;
    if let Some(seeds) = a.seeds {
        config.seeds = seeds;
    }
    if a.no_validate {
        config.validate = false;
    }
    let report = run_experiment(&config, a.workers)?;
    fs::write(&a.csv, write_csv(&report.rows)).context("writing csv")?;
    eprintln!(
        "{} rows; copy balls {}/{} ok; shrinkage phases {}/{} ok",
        report.rows.len(),
        report.copy_balls_checked - report.copy_violations,
        report.copy_balls_checked,
        report.shrinkage_checked - report.shrinkage_violations,
        report.shrinkage_checked,
    );
    if report.copy_violations > 0 || report.shrinkage_violations > 0 {
        bail!("invariant violations in benchmark run");
    }
    Ok(())
}

fn fit(a: FitArgs) -> Result<()> {
    let text = fs::read_to_string(&a.csv).context("reading csv")?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().context("empty csv")?.split(',').collect();
    let col = |name: &str| {
        header
            .iter()
            .position(|&h| h == name)
            .with_context(|| format!("csv has no column {name:?}"))
    };
    let (xi, yi) = (col("n")?, col(&a.y)?);
    let mut points = Vec::new();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        points.push((f[xi].parse::<f64>()?, f[yi].parse::<f64>()?));
    }
    let xt = match a.x.as_str() {
        "n" => XTransform::N,
        "logstar" => XTransform::LogstarN,
        other => bail!("unknown x transform {other:?}"),
    };
    let fit = fit_exponent(&points, xt)?;
    println!("{}", serde_json::to_string(&fit)?);
    Ok(())
}

fn run_predict(a: PredictArgs) -> Result<()> {
    let regime = match a.regime.as_str() {
        "poly" => Regime::Poly,
        "logstar" => Regime::Logstar,
        other => bail!("unknown regime {other:?}"),
    };
    let p = predict(a.delta, a.d, a.k, regime)?;
    println!("{}", serde_json::to_string(&p)?);
    Ok(())
}

fn read_graph(path: &Path) -> Result<GraphFile> {
    GraphFile::from_json(&fs::read_to_string(path).context("reading graph")?).map_err(Into::into)
}

fn req<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.with_context(|| format!("{flag} is required here"))
}

fn req_inputs(gf: &GraphFile) -> Result<Vec<InputLabel>> {
    gf.inputs.clone().context("graph file has no inputs")
}
