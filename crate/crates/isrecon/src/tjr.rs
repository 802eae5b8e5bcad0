//! Token-jumping reachability through a meta-graph over a covering family:
//! two family members are meta-adjacent when they share at least `k - 1`
//! vertices, and S reaches T iff their meta-nodes are connected.

use crate::covering::CoveringFamily;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::sequence::{validate_sequence_bounded, Instance, LengthBound, ReconfigSequence, Rule};
use std::collections::VecDeque;

/// Meta-graph over family members (post pruning, with S and T appended).
#[derive(Debug, Clone)]
pub struct MetaGraph {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl MetaGraph {
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }
}

/// Builds the meta-graph: an edge joins members `i` and `i'` iff
/// `|I_i ∩ I_{i'}| ≥ k - 1`.
pub fn build_meta(fam: &CoveringFamily, k: usize) -> MetaGraph {
    let sets = fam.sets();
    let q = sets.len();
    let mut edges = Vec::new();
    let mut adj = vec![Vec::new(); q];
    for i in 0..q {
        for j in i + 1..q {
            if sets[i].intersection(&sets[j]).len() + 1 >= k {
                edges.push((i, j));
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    MetaGraph { node_count: q, edges, adj }
}

/// Standard connectivity query.
pub fn reachable(meta: &MetaGraph, s_idx: usize, t_idx: usize) -> bool {
    shortest_meta_path(meta, s_idx, t_idx).is_some()
}

/// Shortest path between meta-nodes, by breadth-first search; shortest is
/// chosen to keep witness sequences short.
pub fn shortest_meta_path(meta: &MetaGraph, s_idx: usize, t_idx: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; meta.node_count];
    let mut seen = vec![false; meta.node_count];
    let mut queue = VecDeque::new();
    seen[s_idx] = true;
    queue.push_back(s_idx);
    while let Some(v) = queue.pop_front() {
        if v == t_idx {
            let mut path = vec![t_idx];
            let mut at = t_idx;
            while at != s_idx {
                at = parent[at];
                path.push(at);
            }
            path.reverse();
            return Some(path);
        }
        for &w in meta.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Walks a meta-path and emits the jump sequence. Crossing one meta-edge
/// `(I_j, I_{j+1})` aligns all but one token into a shared `(k-1)`-subset
/// (at most `k - 1` jumps, every intermediate configuration stays inside
/// the independent member `I_j`) and then jumps the remaining token across,
/// so each edge costs at most `k` jumps.
pub fn extract_jump_sequence(
    meta: &MetaGraph,
    fam: &CoveringFamily,
    k: usize,
    source: &VertexSet,
    target: &VertexSet,
    g: &Graph,
) -> Result<ReconfigSequence> {
    let sets = fam.sets();
    let s_idx = sets
        .iter()
        .position(|s| s == source)
        .ok_or_else(|| Error::invalid_input("family does not contain S"))?;
    let t_idx = sets
        .iter()
        .position(|s| s == target)
        .ok_or_else(|| Error::invalid_input("family does not contain T"))?;
    let path = shortest_meta_path(meta, s_idx, t_idx)
        .ok_or_else(|| Error::invalid_input("extract_jump_sequence called on an unreachable pair"))?;

    let mut steps = vec![source.clone()];
    let mut current = source.clone();
    for win in path.windows(2) {
        let next_member = &sets[win[1]];
        if current.is_subset(next_member) {
            continue; // already inside the next member, zero jumps
        }
        let shared = sets[win[0]].intersection(next_member);
        debug_assert!(shared.len() + 1 >= k);
        // prefer keeping tokens that are already in place
        let mut anchor: Vec<usize> = current.intersection(&shared).iter().copied().collect();
        for &v in shared.iter() {
            if anchor.len() >= k - 1 {
                break;
            }
            if !anchor.contains(&v) {
                anchor.push(v);
            }
        }
        anchor.truncate(k - 1);
        let anchor = VertexSet::new(anchor);

        // align: move tokens of current \ anchor into anchor \ current,
        // leaving a single crossing token behind
        let movers: Vec<usize> = current.difference(&anchor).iter().copied().collect();
        let landings: Vec<usize> = anchor.difference(&current).iter().copied().collect();
        debug_assert_eq!(movers.len(), landings.len() + 1);
        for (m, l) in movers.iter().skip(1).zip(landings.iter()) {
            current = current.without(*m).with(*l);
            steps.push(current.clone());
        }
        let crossing = movers[0];
        // land anywhere in the next member that is still free
        if !next_member.contains(crossing) {
            let landing = next_member
                .difference(&current)
                .iter()
                .next()
                .copied()
                .ok_or_else(|| Error::Internal("no free landing vertex in the next member".into()))?;
            current = current.without(crossing).with(landing);
            steps.push(current.clone());
        }
    }
    if current != *target {
        return Err(Error::Internal("meta-path walk did not terminate at T".into()));
    }
    let _ = g;
    Ok(ReconfigSequence::new(steps))
}

#[derive(Debug, Clone)]
pub enum TjrOutcome {
    Yes(ReconfigSequence),
    No,
}

#[derive(Debug, Clone)]
pub struct TjrReport {
    pub outcome: TjrOutcome,
    /// Meta-path length the witness was extracted from, when one exists.
    pub meta_path_len: Option<usize>,
    pub meta_nodes: usize,
    pub meta_edges: usize,
    /// Set when the family's covering property has not been verified; a
    /// "no" from an unverified family is not trustworthy.
    pub unverified_family: bool,
}

/// Full reachability pipeline: prune undersized members, append S and T,
/// build the meta-graph, test connectivity, and extract a witness on yes.
pub fn solve_tjr(inst: &Instance, fam: &CoveringFamily) -> Result<TjrReport> {
    let unverified_family = !fam.verified;
    let fam = fam
        .with_members(&inst.graph, &[inst.source.clone(), inst.target.clone()])?
        .prune_small(inst.k);
    let meta = build_meta(&fam, inst.k);
    let sets = fam.sets();
    let s_idx = sets.iter().position(|s| s == &inst.source).expect("S appended");
    let t_idx = sets.iter().position(|s| s == &inst.target).expect("T appended");
    let report = |outcome, meta_path_len| TjrReport {
        outcome,
        meta_path_len,
        meta_nodes: meta.node_count,
        meta_edges: meta.edges.len(),
        unverified_family,
    };
    match shortest_meta_path(&meta, s_idx, t_idx) {
        None => Ok(report(TjrOutcome::No, None)),
        Some(path) => {
            let seq = extract_jump_sequence(&meta, &fam, inst.k, &inst.source, &inst.target, &inst.graph)?;
            if let Err(v) = validate_sequence_bounded(inst, &seq, Rule::Jump, LengthBound::Unbounded) {
                return Err(Error::Internal(format!("reachability witness failed validation: {v}")));
            }
            if seq.move_count() > (path.len() - 1) * inst.k {
                return Err(Error::Internal("witness exceeds the meta-path length bound".into()));
            }
            Ok(report(TjrOutcome::Yes(seq), Some(path.len() - 1)))
        }
    }
}
