//! Synchronous LOCAL-model round engine with per-node termination accounting.

use crate::tree::{InputLabel, Tree};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("max rounds {0} exceeded with {1} nodes still running")]
    MaxRounds(u64, usize),
}

/// What the engine hands a node each step.
pub struct NodeCtx<'a> {
    pub tree: &'a Tree,
    pub inputs: Option<&'a [InputLabel]>,
}

impl NodeCtx<'_> {
    pub fn id(&self, v: usize) -> u64 {
        self.tree.id(v)
    }

    pub fn input(&self, v: usize) -> Option<InputLabel> {
        self.inputs.map(|i| i[v])
    }
}

/// One step's result: messages keyed by receiving neighbor, and an optional
/// final output. Emitting the output terminates the node; its messages from
/// the same step are still delivered.
pub struct Step<M, O> {
    pub messages: Vec<(usize, M)>,
    pub output: Option<O>,
}

impl<M, O> Step<M, O> {
    pub fn silent() -> Step<M, O> {
        Step { messages: Vec::new(), output: None }
    }

    pub fn done(output: O) -> Step<M, O> {
        Step { messages: Vec::new(), output: Some(output) }
    }
}

/// A deterministic per-node program. `init` runs before round 0; `step` runs
/// once per round with the messages sent to this node in the previous round.
pub trait NodeProgram {
    type State;
    type Msg: Clone;
    type Out: Clone;

    fn init(&self, v: usize, ctx: &NodeCtx) -> Self::State;

    fn step(
        &self,
        round: u64,
        v: usize,
        ctx: &NodeCtx,
        state: &mut Self::State,
        inbox: &[(usize, Self::Msg)],
    ) -> Step<Self::Msg, Self::Out>;
}

/// Execution record of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub termination_round: Vec<u64>,
    pub rounds_executed: u64,
    pub messages_sent: u64,
}

pub struct SimResult<O> {
    pub outputs: Vec<O>,
    pub trace: RunTrace,
}

/// Runs the program to completion. In round r a node sees exactly the
/// messages sent in round r-1, so a node terminating in round r has seen its
/// r-hop neighborhood at most. Terminated nodes are never stepped again and
/// messages addressed to them are dropped.
pub fn run<P: NodeProgram>(
    tree: &Tree,
    inputs: Option<&[InputLabel]>,
    program: &P,
    max_rounds: u64,
) -> Result<SimResult<P::Out>, SimError> {
    let n = tree.node_count();
    let ctx = NodeCtx { tree, inputs };
    let mut states: Vec<P::State> = (0..n).map(|v| program.init(v, &ctx)).collect();
    let mut outputs: Vec<Option<P::Out>> = vec![None; n];
    let mut termination_round = vec![0u64; n];
    let mut inboxes: Vec<Vec<(usize, P::Msg)>> = vec![Vec::new(); n];
    let mut next_inboxes: Vec<Vec<(usize, P::Msg)>> = vec![Vec::new(); n];
    let mut running = n;
    let mut messages_sent = 0u64;
    let mut round = 0u64;

    while running > 0 {
        if round > max_rounds {
            return Err(SimError::MaxRounds(max_rounds, running));
        }
        for v in 0..n {
            if outputs[v].is_some() {
                continue;
            }
            let step = program.step(round, v, &ctx, &mut states[v], &inboxes[v]);
            for (to, msg) in step.messages {
                debug_assert!(tree.neighbors(v).any(|u| u == to), "message to non-neighbor");
                messages_sent += 1;
                if outputs[to].is_none() {
                    next_inboxes[to].push((v, msg));
                }
            }
            if let Some(out) = step.output {
                outputs[v] = Some(out);
                termination_round[v] = round;
                running -= 1;
            }
        }
        for v in 0..n {
            inboxes[v].clear();
        }
        std::mem::swap(&mut inboxes, &mut next_inboxes);
        round += 1;
    }

    Ok(SimResult {
        outputs: outputs.into_iter().map(|o| o.unwrap()).collect(),
        trace: RunTrace {
            termination_round,
            rounds_executed: round,
            messages_sent,
        },
    })
}
