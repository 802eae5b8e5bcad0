//! Shortest token sliding and jumping through the constraint-propagation
//! solver, with the witness extracted from the accepting frontier chain.
//!
//! ```bash
//! cargo run --example shortest_reconfiguration
//! ```

use isrecon::covering::exact_family;
use isrecon::fpt::{solve_opt, OptOutcome, SolveOptions};
use isrecon::graph::{Graph, VertexSet};
use isrecon::sequence::{Instance, Rule};

fn main() {
    // two tokens on a 6-cycle must rotate around it
    let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    let inst = Instance::new(
        g,
        VertexSet::new(vec![0, 2]),
        VertexSet::new(vec![1, 3]),
        2,
        6,
        None,
    )
    .unwrap();

    let fam = exact_family(&inst.graph, inst.k, 10_000).unwrap();
    println!("covering family has {} members", fam.len());

    for rule in [Rule::Slide, Rule::Jump] {
        let report = solve_opt(&inst, &fam, rule, &SolveOptions::default()).unwrap();
        match report.outcome {
            OptOutcome::Yes(seq) => {
                println!("\n{rule}: yes, {} moves", seq.move_count());
                for (i, cfg) in seq.steps.iter().enumerate() {
                    println!("  step {i}: {:?}", cfg.as_slice());
                }
            }
            OptOutcome::No => println!("\n{rule}: no sequence within {} moves", inst.ell),
            OptOutcome::BudgetExceeded => println!("\n{rule}: guess budget exhausted"),
        }
        println!(
            "  guesses evaluated: {}, frontier steps: {}, frontier peak: {} sets",
            report.stats.guesses, report.stats.steps, report.stats.frontier_peak
        );
    }
}
