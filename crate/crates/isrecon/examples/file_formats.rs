//! The JSON instance and result formats the CLI speaks, plus the DIMACS
//! importer.
//!
//! ```bash
//! cargo run --example file_formats
//! ```

use isrecon::formats::{
    family_to_json, parse_dimacs, sequence_to_json, AnswerKind, InstanceFile, ResultFile, ResultStats,
};
use isrecon::covering::exact_family;
use isrecon::oracle::{bfs_witness, OracleOptions};
use isrecon::sequence::Rule;

fn main() {
    let text = r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4]],"s":[0,2],"t":[2,4],"k":2,"ell":4}"#;
    let file = InstanceFile::parse(text).unwrap();
    let inst = file.to_instance().unwrap();
    println!("parsed instance: n = {}, k = {}, ell = {}", file.n, inst.k, inst.ell);
    println!("re-emitted: {}", file.emit().trim());

    let (witness, nodes) = bfs_witness(&inst, Rule::Slide, &OracleOptions::default()).unwrap();
    let witness = witness.expect("reachable");
    let result = ResultFile {
        answer: AnswerKind::Yes,
        sequence: Some(sequence_to_json(&witness)),
        stats: ResultStats { nodes_expanded: nodes, seed: Some(0), ..Default::default() },
        warnings: vec![],
    };
    println!("\nresult file: {}", result.emit().trim());

    let fam = exact_family(&inst.graph, inst.k, 10_000).unwrap();
    println!("\nfamily dump: {}", family_to_json(&fam).trim());

    let dimacs = "c tiny instance\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n";
    let gf = parse_dimacs(dimacs).unwrap();
    println!("\nDIMACS import: n = {}, edges = {:?}", gf.n, gf.edges);
}
