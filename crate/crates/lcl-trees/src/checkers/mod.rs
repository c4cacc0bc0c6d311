//! Validity checkers for every problem in the crate, plus an exhaustive
//! enumeration oracle for small instances.
//!
//! Checkers are pure functions over immutable inputs and report every
//! violation they find, not just the first.
//!
//! ```
//! use lcl_trees::checkers::check_khier;
//! use lcl_trees::labels::{ColoringLabel::*, Variant};
//! use lcl_trees::level::compute_levels;
//! use lcl_trees::tree::path_graph;
//!
//! let t = path_graph(3).unwrap();
//! let levels = compute_levels(&t, 2);
//! // W B W properly 2-colors the single level-1 path
//! assert!(check_khier(&t, &levels, &[W, B, W], 2, Variant::TwoHalf).ok());
//! // W W B clashes in the middle
//! let v = check_khier(&t, &levels, &[W, W, B], 2, Variant::TwoHalf);
//! assert!(!v.ok());
//! ```

mod brute;
mod dfree;
mod hier;
mod khier;
mod verdict;
mod waug;
mod weighted;

pub use brute::{
    brute_dfree, brute_force, brute_hier, brute_khier, brute_weighted, BruteError, BruteProblem,
    BruteSolution, DEFAULT_CAP,
};
pub use dfree::check_dfree;
pub use hier::check_hier_labeling;
pub use khier::check_khier;
pub use verdict::{Verdict, Violation};
pub use waug::check_weight_augmented;
pub use weighted::{check_weighted, ParamError};
