//! The exact configuration-space oracle: shortest transformations by
//! breadth-first search, for both move rules.
//!
//! ```bash
//! cargo run --example exact_oracle
//! ```

use isrecon::graph::{Graph, VertexSet};
use isrecon::oracle::{bfs_distance, bfs_witness, BfsOutcome, OracleOptions};
use isrecon::sequence::{Instance, Rule};

fn main() {
    // two tokens walking along a path
    let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
    let inst = Instance::new(
        g,
        VertexSet::new(vec![0, 2]),
        VertexSet::new(vec![3, 5]),
        2,
        10,
        None,
    )
    .unwrap();

    let opts = OracleOptions::default();
    for rule in [Rule::Slide, Rule::Jump] {
        match bfs_distance(&inst, rule, &opts).unwrap().outcome {
            BfsOutcome::Reached { distance } => println!("{rule}: distance {distance}"),
            BfsOutcome::Unreachable => println!("{rule}: unreachable"),
        }
        if let (Some(w), _) = bfs_witness(&inst, rule, &opts).unwrap() {
            println!("  witness:");
            for (i, cfg) in w.steps.iter().enumerate() {
                println!("    step {i}: {:?}", cfg.as_slice());
            }
        }
    }

    // a frozen instance: every move from S breaks independence
    let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let frozen = Instance::new(
        c4,
        VertexSet::new(vec![0, 2]),
        VertexSet::new(vec![1, 3]),
        2,
        100,
        None,
    )
    .unwrap();
    for rule in [Rule::Slide, Rule::Jump] {
        let outcome = bfs_distance(&frozen, rule, &opts).unwrap().outcome;
        println!("frozen C4 under {rule}: {outcome:?}");
    }
}
