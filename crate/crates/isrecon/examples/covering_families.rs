//! Independence covering families three ways: exact maximal-set
//! enumeration, randomized sampling with verification, and the modulator
//! decomposition.
//!
//! ```bash
//! cargo run --example covering_families
//! ```

use isrecon::covering::{
    exact_family, modulator_family, sampled_family, sampled_family_verified, verify_cover,
    CoverCheck, FamilyMode,
};
use isrecon::graph::{Graph, VertexSet};

fn main() {
    let c6 = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    let k = 2;

    let exact = exact_family(&c6, k, 10_000).unwrap();
    println!("exact family of C6 (all maximal independent sets):");
    for s in exact.sets() {
        println!("  {:?}", s.as_slice());
    }
    println!("covers (G, {k}): {:?}", verify_cover(&c6, k, &exact, 100_000).unwrap());

    // a raw sample may miss sets; the verified loop keeps sampling until
    // the covering property holds
    let d = c6.degeneracy();
    let raw = sampled_family(&c6, k, d, 4, 42).unwrap();
    println!("\n4 sampled rounds give {} distinct sets:", raw.len());
    match verify_cover(&c6, k, &raw, 100_000).unwrap() {
        CoverCheck::Ok => println!("  already a cover"),
        CoverCheck::Missing(w) => println!("  not yet a cover, e.g. {:?} is uncovered", w.as_slice()),
    }
    let verified = sampled_family_verified(&c6, k, d, 42, 1 << 20, 100_000).unwrap();
    println!("verified sampling terminated with {} sets", verified.len());

    // modulator route: deleting the hub of a wheel leaves a cycle
    let wheel = Graph::new(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6),
                                (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
    let hub = VertexSet::new(vec![0]);
    let fam = modulator_family(&wheel, &hub, k, 2, FamilyMode::Exact).unwrap();
    println!("\nmodulator family of the wheel through its hub: {} sets", fam.len());
    println!("covers (G, {k}): {:?}", verify_cover(&wheel, k, &fam, 100_000).unwrap());
}
