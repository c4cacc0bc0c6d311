//! Peel a small tree and print the level of every node.
//!
//! Run with: cargo run --example levels

use lcl_trees::level::compute_levels;
use lcl_trees::tree::build_tree;

fn main() {
    // a spider: center 0 with three legs of length 2
    let edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)];
    let tree = build_tree(&edges, None).unwrap();

    let k = 2;
    let levels = compute_levels(&tree, k);
    for v in 0..tree.node_count() {
        println!("node {v} (id {}) has level {}", tree.id(v), levels.level(v));
    }
    // the leaves and chain nodes go in the first peel, the center survives it
    assert_eq!(levels.level(0), 2);
    assert_eq!(levels.level(1), 1);
}
