//! Node-averaged complexity experiments for locally checkable labelings on
//! bounded-degree trees.
//!
//! The crate covers one family of problems end to end: hierarchical
//! half-colorings and their weighted variants, whose node-averaged round
//! complexity can be dialed to any rational exponent. It provides
//!
//! - tree construction and level decomposition ([tree], [level]),
//! - validity checkers and a small-instance enumeration oracle ([checkers]),
//! - instance generators and the exponent arithmetic behind them ([gen]),
//! - a deterministic round-based simulator ([sim]),
//! - solvers with honest per-node termination rounds ([algo]),
//! - experiment drivers and power-law fitting ([bench]).
//!
//! ```
//! use lcl_trees::tree::path_graph;
//! use lcl_trees::level::compute_levels;
//!
//! let t = path_graph(7).unwrap();
//! let lm = compute_levels(&t, 2);
//! // a path never survives a peeling round, so every node has level 1
//! assert!((0..7).all(|v| lm.level(v) == 1));
//! ```

pub mod algo;
pub mod bench;
pub mod checkers;
pub mod gen;
pub mod io;
pub mod labels;
pub mod level;
pub mod sim;
pub mod tree;
