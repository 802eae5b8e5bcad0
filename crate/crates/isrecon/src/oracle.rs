//! Exact baseline: breadth-first search over the space of token
//! configurations. Ground truth for every other solver's tests, so the
//! search is kept as plain as possible.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::sequence::{Instance, ReconfigSequence, Rule};
use std::collections::HashMap;

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Abort with a resource error once this many configurations have been
    /// discovered.
    pub node_cap: u64,
    /// Explore only configurations within this many moves of S.
    pub max_depth: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { node_cap: DEFAULT_NODE_CAP, max_depth: None }
    }
}

/// Outcome of an exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BfsOutcome {
    Reached { distance: usize },
    Unreachable,
}

#[derive(Debug)]
pub struct BfsReport {
    pub outcome: BfsOutcome,
    pub nodes_expanded: u64,
}

/// Exact minimum number of moves from S to T under `rule`, or
/// `Unreachable`. With `max_depth` set, `Unreachable` means "no sequence of
/// at most that many moves".
pub fn bfs_distance(inst: &Instance, rule: Rule, opts: &OracleOptions) -> Result<BfsReport> {
    let (report, _) = bfs_core(inst, rule, opts, false)?;
    Ok(report)
}

/// A shortest witness sequence, or `None` if T is unreachable (within the
/// depth bound, when one is set).
pub fn bfs_witness(
    inst: &Instance,
    rule: Rule,
    opts: &OracleOptions,
) -> Result<(Option<ReconfigSequence>, u64)> {
    let (report, witness) = bfs_core(inst, rule, opts, true)?;
    Ok((witness, report.nodes_expanded))
}

fn bfs_core(
    inst: &Instance,
    rule: Rule,
    opts: &OracleOptions,
    want_witness: bool,
) -> Result<(BfsReport, Option<ReconfigSequence>)> {
    let start = inst.source.clone();
    let goal = &inst.target;

    // configs[i] = configuration, parent[i] = predecessor index
    let mut configs: Vec<VertexSet> = vec![start.clone()];
    let mut parent: Vec<usize> = vec![usize::MAX];
    let mut depth: Vec<usize> = vec![0];
    let mut seen: HashMap<VertexSet, usize> = HashMap::new();
    seen.insert(start, 0);

    let mut expanded = 0u64;
    let mut goal_idx = if configs[0] == *goal { Some(0) } else { None };

    let mut head = 0;
    while head < configs.len() && goal_idx.is_none() {
        let cur_idx = head;
        head += 1;
        let cur_depth = depth[cur_idx];
        if let Some(max) = opts.max_depth {
            if cur_depth >= max {
                continue;
            }
        }
        expanded += 1;
        let cur = configs[cur_idx].clone();
        for next in successors(&inst.graph, &cur, rule) {
            if seen.contains_key(&next) {
                continue;
            }
            if configs.len() as u64 >= opts.node_cap {
                return Err(Error::resource("oracle configuration count", opts.node_cap));
            }
            let idx = configs.len();
            seen.insert(next.clone(), idx);
            let is_goal = next == *goal;
            configs.push(next);
            parent.push(cur_idx);
            depth.push(cur_depth + 1);
            if is_goal {
                goal_idx = Some(idx);
                break;
            }
        }
    }

    match goal_idx {
        Some(idx) => {
            let witness = want_witness.then(|| {
                let mut steps = Vec::with_capacity(depth[idx] + 1);
                let mut at = idx;
                loop {
                    steps.push(configs[at].clone());
                    if parent[at] == usize::MAX {
                        break;
                    }
                    at = parent[at];
                }
                steps.reverse();
                ReconfigSequence::new(steps)
            });
            Ok((
                BfsReport { outcome: BfsOutcome::Reached { distance: depth[idx] }, nodes_expanded: expanded },
                witness,
            ))
        }
        None => Ok((BfsReport { outcome: BfsOutcome::Unreachable, nodes_expanded: expanded }, None)),
    }
}

/// All configurations reachable from `cfg` by one move, in deterministic
/// (token id, target id) order.
pub fn successors(g: &Graph, cfg: &VertexSet, rule: Rule) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for &u in cfg.iter() {
        let rest = cfg.without(u);
        let candidates: Vec<usize> = match rule {
            Rule::Slide => g.neighbors(u).to_vec(),
            Rule::Jump => (0..g.vertex_count()).collect(),
        };
        for v in candidates {
            if v == u || cfg.contains(v) {
                continue;
            }
            if rest.iter().any(|&w| g.has_edge(v, w)) {
                continue;
            }
            out.push(rest.with(v));
        }
    }
    out
}
