//! The 2-degenerate clique-encoding gadgets, with their constructive
//! optimal witnesses replayed and validated.
//!
//! ```bash
//! cargo run --example hardness_gadgets
//! ```

use isrecon::gadgets::{
    gen_tjo_gadget, gen_tso_gadget, tjo_witness, tso_witness, MulticoloredGraph,
};
use isrecon::graph::{Graph, VertexSet};
use isrecon::sequence::{validate_sequence, Rule};

fn main() {
    let triangle = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
    let clique = VertexSet::new(vec![0, 1, 2]);

    // sliding gadget from a properly 3-colored triangle
    let mc = MulticoloredGraph::new(triangle.clone(), vec![1, 2, 3], 3).unwrap();
    let (inst, layout) = gen_tso_gadget(&mc, 3).unwrap();
    println!(
        "sliding gadget: {} vertices, {} edges, {} tokens, budget {} slides, degeneracy {}",
        inst.graph.vertex_count(),
        inst.graph.edge_count(),
        inst.k,
        inst.ell,
        inst.graph.degeneracy()
    );
    let witness = tso_witness(&inst, &layout, &clique).unwrap();
    assert_eq!(validate_sequence(&inst, &witness, Rule::Slide), Ok(()));
    println!(
        "  witness from the planted clique uses exactly {} slides (budget {})",
        witness.move_count(),
        inst.ell
    );

    // jumping gadget straight from the triangle
    let (inst, layout) = gen_tjo_gadget(&triangle, 3).unwrap();
    println!(
        "\njumping gadget: {} vertices, {} edges, {} tokens, budget {} jumps, degeneracy {}",
        inst.graph.vertex_count(),
        inst.graph.edge_count(),
        inst.k,
        inst.ell,
        inst.graph.degeneracy()
    );
    let witness = tjo_witness(&inst, &layout, &clique).unwrap();
    assert_eq!(validate_sequence(&inst, &witness, Rule::Jump), Ok(()));
    println!(
        "  witness from the planted clique uses exactly {} jumps (budget {})",
        witness.move_count(),
        inst.ell
    );

    // first few configurations of the jump witness
    println!("\n  opening moves:");
    for (i, cfg) in witness.steps.iter().take(5).enumerate() {
        println!("    step {i}: {:?}", cfg.as_slice());
    }
}
