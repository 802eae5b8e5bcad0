//! The Monte-Carlo random-separation solver on a graph with a modulator:
//! color the low-degree part, guess the touched modulator vertices,
//! shrink, and brute-force what is left.
//!
//! ```bash
//! cargo run --example random_separation
//! ```

use isrecon::graph::{Graph, VertexSet};
use isrecon::separation::{
    color_h, default_trials, solve_separation, ColoringStrategy, SepOutcome, SeparationOptions,
};
use isrecon::sequence::{Instance, Rule};

fn main() {
    // a hub vertex (the modulator) over two disjoint paths
    let g = Graph::new(
        7,
        &[(0, 1), (1, 2), (3, 4), (4, 5), (6, 0), (6, 3), (6, 5), (6, 2)],
    )
    .unwrap();
    let modulator = VertexSet::new(vec![6]);
    let inst = Instance::new(
        g,
        VertexSet::new(vec![0, 4]),
        VertexSet::new(vec![2, 4]),
        2,
        3,
        Some(modulator.clone()),
    )
    .unwrap();

    let chi = color_h(&inst.graph, &modulator, 1).unwrap();
    println!(
        "one random coloring turns {} of {} low-degree vertices red",
        chi.red_count(),
        chi.h.len()
    );
    println!("suggested trial count: {}", default_trials(&inst, &modulator));

    for strategy in [
        ColoringStrategy::Randomized { trials: 64, seed: 7 },
        ColoringStrategy::Exhaustive,
    ] {
        let opts = SeparationOptions { strategy, ..Default::default() };
        let report = solve_separation(&inst, &modulator, Rule::Slide, &opts).unwrap();
        match report.outcome {
            SepOutcome::Yes(seq) => {
                println!(
                    "\n{strategy:?}: yes after {} colorings ({} reductions), {} slides",
                    report.colorings,
                    report.reductions,
                    seq.move_count()
                );
                for (i, cfg) in seq.steps.iter().enumerate() {
                    println!("  step {i}: {:?}", cfg.as_slice());
                }
            }
            SepOutcome::ProbablyNo => {
                println!(
                    "\n{strategy:?}: probably no (after {} colorings)",
                    report.colorings
                );
            }
        }
    }
}
