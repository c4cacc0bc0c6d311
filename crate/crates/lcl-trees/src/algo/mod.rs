//! Solvers.

mod apoly;
mod dfree_a;
mod generic;
mod hier_solve;
mod khier_program;
mod mincopy;
mod path_color;
mod rakecompress;
mod waug_solve;

pub use apoly::{a_poly, ApolyError, ApolyResult};
pub use dfree_a::{dfree_algorithm_a, log_ceil, DfreeResult, SeedStat};
pub use generic::{generic_khier, GenericError, GenericParams, GenericResult, PhaseStat};
pub use hier_solve::{hier_gamma, hier_labeling_solve, labels_from_decomposition, HierSolveError};
pub use khier_program::{KhierMsg, KhierProgram, KhierState};
pub use mincopy::{greedy_copy_count, min_copy_assignment, CopyAssignment, MinCopyError};
pub use path_color::{cv_iterations, three_color_path, three_color_path_with, two_color_path};
pub use rakecompress::{rake_compress, validate_decomposition, Decomposition, LayerKind, RcError};
pub use waug_solve::{
    active_path_with_weight_trees, weight_augmented_solve, WaugResult, WaugSolveError,
};
