//! Solve a 2.5-coloring instance and validate the output.
//!
//! Builds a lower-bound instance, runs the generic hierarchical solver, and
//! feeds the result to the checker.
//!
//! Run with: cargo run --example solve_check

use lcl_trees::algo::{generic_khier, GenericParams};
use lcl_trees::checkers::check_khier;
use lcl_trees::gen::lower_bound_graph;
use lcl_trees::labels::Variant;
use lcl_trees::level::compute_levels;
use lcl_trees::sim::{node_averaged, worst_case};

fn main() {
    // 20 level-1 paths of 12 nodes hanging off a spine of 20 level-2 nodes
    let g = lower_bound_graph(&[12, 20]).unwrap();
    let tree = &g.tree;
    let k = 2;
    let levels = compute_levels(tree, k);

    let params = GenericParams { gammas: vec![12], variant: Variant::TwoHalf };
    let result = generic_khier(tree, &levels, &params).unwrap();

    let verdict = check_khier(tree, &levels, &result.out, k, Variant::TwoHalf);
    assert!(verdict.ok(), "{:?}", verdict.violations);

    println!("n = {}", tree.node_count());
    println!("node-averaged rounds = {:.2}", node_averaged(&result.trace));
    println!("worst-case rounds    = {}", worst_case(&result.trace));
    for phase in &result.stats {
        println!(
            "phase {}: {} -> {} undecided ({} paths declined, {} colored)",
            phase.phase,
            phase.undecided_before,
            phase.undecided_after,
            phase.declined_paths,
            phase.colored_paths
        );
    }
}
