//! Token-jumping reachability via the meta-graph over a covering family:
//! members sharing k-1 vertices become adjacent, and connectivity decides
//! the instance.
//!
//! ```bash
//! cargo run --example jump_reachability
//! ```

use isrecon::covering::exact_family;
use isrecon::graph::{Graph, VertexSet};
use isrecon::sequence::Instance;
use isrecon::tjr::{build_meta, solve_tjr, TjrOutcome};

fn main() {
    // a long path: tokens can always spread out, so everything reaches
    let g = Graph::new(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
    let inst = Instance::new(
        g,
        VertexSet::new(vec![0, 2, 4]),
        VertexSet::new(vec![2, 4, 6]),
        3,
        0, // reachability ignores the move budget
        None,
    )
    .unwrap();

    let fam = exact_family(&inst.graph, inst.k, 10_000).unwrap();
    let pruned = fam
        .with_members(&inst.graph, &[inst.source.clone(), inst.target.clone()])
        .unwrap()
        .prune_small(inst.k);
    let meta = build_meta(&pruned, inst.k);
    println!(
        "meta-graph: {} nodes, {} edges over {} family members",
        meta.node_count,
        meta.edges.len(),
        pruned.len()
    );

    let report = solve_tjr(&inst, &fam).unwrap();
    match report.outcome {
        TjrOutcome::Yes(seq) => {
            println!(
                "reachable: {} jumps across a meta-path of {} edges",
                seq.move_count(),
                report.meta_path_len.unwrap()
            );
            for (i, cfg) in seq.steps.iter().enumerate() {
                println!("  step {i}: {:?}", cfg.as_slice());
            }
        }
        TjrOutcome::No => println!("unreachable"),
    }

    // frozen 4-cycle: the meta-graph falls apart
    let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let frozen = Instance::new(
        c4,
        VertexSet::new(vec![0, 2]),
        VertexSet::new(vec![1, 3]),
        2,
        0,
        None,
    )
    .unwrap();
    let fam = exact_family(&frozen.graph, frozen.k, 10_000).unwrap();
    let report = solve_tjr(&frozen, &fam).unwrap();
    println!(
        "\nfrozen C4: {} ({} meta nodes, {} meta edges)",
        match report.outcome {
            TjrOutcome::Yes(_) => "reachable",
            TjrOutcome::No => "unreachable",
        },
        report.meta_nodes,
        report.meta_edges
    );
}
