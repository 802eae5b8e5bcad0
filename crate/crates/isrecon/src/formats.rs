//! File formats: JSON instance and result files, family dumps, and a
//! DIMACS edge-list importer for graph-only sources. Vertex-id arrays are
//! always emitted sorted ascending, and emission is byte-deterministic.

use crate::covering::CoveringFamily;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::sequence::{Instance, ReconfigSequence};
use serde::{Deserialize, Serialize};

/// On-disk instance: graph, endpoints, parameters, optional modulator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub k: usize,
    pub ell: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulator: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.k == 0 {
            return Err(Error::InvalidInstance("field \"k\" must be positive".into()));
        }
        let graph = Graph::new(self.n, &self.edges)
            .map_err(|e| Error::InvalidInstance(format!("field \"edges\": {e}")))?;
        let s = VertexSet::new(self.s.clone());
        let t = VertexSet::new(self.t.clone());
        let modulator = self.modulator.as_ref().map(|m| VertexSet::new(m.clone()));
        Instance::new(graph, s, t, self.k, self.ell, modulator)
    }

    pub fn from_instance(inst: &Instance) -> InstanceFile {
        InstanceFile {
            n: inst.graph.vertex_count(),
            edges: inst.graph.edges(),
            s: inst.source.iter().copied().collect(),
            t: inst.target.iter().copied().collect(),
            k: inst.k,
            ell: inst.ell,
            modulator: inst.modulator.as_ref().map(|m| m.iter().copied().collect()),
            meta: None,
        }
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string(self).expect("instance serialization");
        s.push('\n');
        s
    }
}

/// Graph-only source (for generators and family construction); any
/// instance file also parses as one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<usize>>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, &self.edges)
    }
}

/// DIMACS edge-list import: `p edge <n> <m>` then `e <u> <v>` lines with
/// 1-indexed vertices.
pub fn parse_dimacs(text: &str) -> Result<GraphFile> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        let diag = |msg: String| Error::InvalidInput(format!("line {}: {msg}", lineno + 1));
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if fields.len() < 4 || (fields[1] != "edge" && fields[1] != "col") {
                    return Err(diag("expected `p edge <n> <m>`".into()));
                }
                n = Some(fields[2].parse().map_err(|_| diag("bad vertex count".into()))?);
            }
            "e" => {
                if fields.len() != 3 {
                    return Err(diag("expected `e <u> <v>`".into()));
                }
                let u: usize = fields[1].parse().map_err(|_| diag("bad endpoint".into()))?;
                let v: usize = fields[2].parse().map_err(|_| diag("bad endpoint".into()))?;
                if u == 0 || v == 0 {
                    return Err(diag("DIMACS vertices are 1-indexed".into()));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(diag(format!("unknown record `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::invalid_input("missing `p edge` header"))?;
    Ok(GraphFile { n, edges, colors: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerKind {
    Yes,
    No,
    ProbablyNo,
    BudgetExceeded,
}

impl AnswerKind {
    /// CLI exit-code contract: 0 yes, 1 no/probably-no, 3 budget.
    pub fn exit_code(self) -> u8 {
        match self {
            AnswerKind::Yes => 0,
            AnswerKind::No | AnswerKind::ProbablyNo => 1,
            AnswerKind::BudgetExceeded => 3,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ResultStats {
    pub guesses: u64,
    pub frontier_peak: usize,
    pub nodes_expanded: u64,
    /// Only emitted when timing is requested: wall time breaks
    /// byte-for-byte reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// On-disk result: answer, witness when the answer is yes, run statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultFile {
    pub answer: AnswerKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<Vec<usize>>>,
    pub stats: ResultStats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ResultFile {
    pub fn parse(text: &str) -> Result<ResultFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string(self).expect("result serialization");
        s.push('\n');
        s
    }

    pub fn sequence(&self) -> Result<Option<ReconfigSequence>> {
        match &self.sequence {
            None => Ok(None),
            Some(steps) => {
                let steps = steps.iter().map(|s| VertexSet::new(s.clone())).collect();
                Ok(Some(ReconfigSequence::new(steps)))
            }
        }
    }
}

pub fn sequence_to_json(seq: &ReconfigSequence) -> Vec<Vec<usize>> {
    seq.steps.iter().map(|s| s.iter().copied().collect()).collect()
}

/// Family dump: a JSON array of vertex-id arrays.
pub fn family_to_json(fam: &CoveringFamily) -> String {
    let arrays: Vec<Vec<usize>> = fam.sets().iter().map(|s| s.iter().copied().collect()).collect();
    let mut s = serde_json::to_string(&arrays).expect("family serialization");
    s.push('\n');
    s
}

/// Loads a family dump. The covering property of external families is
/// unknown until verified, so `verified` starts false.
pub fn family_from_json(g: &Graph, k: usize, text: &str) -> Result<CoveringFamily> {
    let arrays: Vec<Vec<usize>> = serde_json::from_str(text)?;
    let sets = arrays.into_iter().map(VertexSet::new).collect();
    CoveringFamily::new(g, sets, k, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip() {
        let text = r#"{"n":3,"edges":[[0,1],[1,2]],"s":[0],"t":[2],"k":1,"ell":2}"#;
        let file = InstanceFile::parse(text).unwrap();
        let inst = file.to_instance().unwrap();
        let back = InstanceFile::from_instance(&inst);
        assert_eq!(file.emit(), back.emit());
    }

    #[test]
    fn instance_rejects_zero_k() {
        let text = r#"{"n":1,"edges":[],"s":[],"t":[],"k":0,"ell":1}"#;
        let file = InstanceFile::parse(text).unwrap();
        assert!(file.to_instance().is_err());
    }

    #[test]
    fn dimacs_import() {
        let text = "c a path\np edge 3 2\ne 1 2\ne 2 3\n";
        let gf = parse_dimacs(text).unwrap();
        assert_eq!(gf.n, 3);
        assert_eq!(gf.edges, vec![(0, 1), (1, 2)]);
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 0 1\n").is_err());
    }

    #[test]
    fn result_answers_serialize_snake_case() {
        let rf = ResultFile {
            answer: AnswerKind::ProbablyNo,
            sequence: None,
            stats: ResultStats::default(),
            warnings: vec![],
        };
        assert!(rf.emit().contains("\"probably_no\""));
        let rf = ResultFile { answer: AnswerKind::BudgetExceeded, ..rf };
        assert!(rf.emit().contains("\"budget_exceeded\""));
    }

    #[test]
    fn graph_file_accepts_instance_files() {
        let text = r#"{"n":3,"edges":[[0,1]],"s":[2],"t":[2],"k":1,"ell":0}"#;
        let gf = GraphFile::parse(text).unwrap();
        assert_eq!(gf.n, 3);
        assert!(gf.colors.is_none());
    }
}
