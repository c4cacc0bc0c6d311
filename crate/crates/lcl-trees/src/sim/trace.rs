//! Metrics over run traces and trace export.

use crate::level::LevelMap;
use crate::sim::engine::RunTrace;
use crate::tree::{InputLabel, Tree};

impl RunTrace {
    /// Builds a trace directly from per-node termination rounds, for solvers
    /// that charge rounds analytically instead of running the engine.
    pub fn from_rounds(termination_round: Vec<u64>) -> RunTrace {
        let rounds_executed = termination_round.iter().copied().max().unwrap_or(0);
        RunTrace { termination_round, rounds_executed, messages_sent: 0 }
    }
}

/// Exact total of termination rounds; the node-averaged complexity is
/// total / n without any float rounding.
pub fn total_rounds(trace: &RunTrace) -> u128 {
    trace.termination_round.iter().map(|&r| r as u128).sum()
}

/// Node-averaged complexity of the run as a float.
pub fn node_averaged(trace: &RunTrace) -> f64 {
    total_rounds(trace) as f64 / trace.termination_round.len() as f64
}

/// Worst-case (maximum) termination round.
pub fn worst_case(trace: &RunTrace) -> u64 {
    trace.termination_round.iter().copied().max().unwrap_or(0)
}

/// CSV with one row per node: node_id,level,input,termination_round.
/// Level and input columns are empty when not supplied.
pub fn trace_csv(
    tree: &Tree,
    levels: Option<&LevelMap>,
    inputs: Option<&[InputLabel]>,
    trace: &RunTrace,
) -> String {
    let mut out = String::from("node_id,level,input,termination_round\n");
    for v in 0..tree.node_count() {
        let level = levels.map(|l| l.level(v).to_string()).unwrap_or_default();
        let input = inputs
            .map(|i| match i[v] {
                InputLabel::Active => "Active",
                InputLabel::Weight => "Weight",
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{}\n",
            tree.id(v),
            level,
            input,
            trace.termination_round[v]
        ));
    }
    out
}

/// Summary JSON {"avg": .., "n": .., "total": .., "worst": ..} with the
/// average printed to 12 significant digits.
pub fn summary_json(trace: &RunTrace) -> String {
    let n = trace.termination_round.len();
    let total = total_rounds(trace);
    format!(
        "{{\"avg\":{:.11e},\"n\":{},\"total\":{},\"worst\":{}}}",
        total as f64 / n as f64,
        n,
        total,
        worst_case(trace)
    )
}
