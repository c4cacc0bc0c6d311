//! Round-synchronous LOCAL simulation and the node-averaged metric.

mod engine;
mod trace;

pub use crate::gen::iterated_log;
pub use engine::{run, NodeCtx, NodeProgram, RunTrace, SimError, SimResult, Step};
pub use trace::{node_averaged, summary_json, total_rounds, trace_csv, worst_case};
