//! Degeneracy orders: the structural measure the solvers are
//! parameterized by.
//!
//! ```bash
//! cargo run --example degeneracy
//! ```

use isrecon::graph::Graph;

fn main() {
    let samples: Vec<(&str, Graph)> = vec![
        ("path P5", Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap()),
        ("cycle C6", Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap()),
        (
            "complete K5",
            Graph::new(5, &{
                let mut e = vec![];
                for u in 0..5 {
                    for v in u + 1..5 {
                        e.push((u, v));
                    }
                }
                e
            })
            .unwrap(),
        ),
        (
            "wheel W6 (hub 0)",
            Graph::new(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6),
                            (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap(),
        ),
    ];

    for (name, g) in samples {
        let d = g.degeneracy_order();
        println!(
            "{name}: n = {}, m = {}, degeneracy = {}",
            g.vertex_count(),
            g.edge_count(),
            d.degeneracy
        );
        println!("  removal order: {:?}", d.order);
        // every vertex keeps at most `degeneracy` neighbors later in the order
        let mut pos = vec![0; g.vertex_count()];
        for (i, &v) in d.order.iter().enumerate() {
            pos[v] = i;
        }
        let max_forward = (0..g.vertex_count())
            .map(|v| g.neighbors(v).iter().filter(|&&w| pos[w] > pos[v]).count())
            .max()
            .unwrap();
        println!("  max forward degree along the order: {max_forward}");
    }
}
