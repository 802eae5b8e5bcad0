//! Generators for the two 2-degenerate hardness constructions: a sliding
//! gadget built from a properly colored graph and a jumping gadget built
//! from an arbitrary graph. Both encode a clique question; when a clique
//! is supplied, the explicit optimal witness sequence is emitted.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::sequence::{validate_sequence, Instance, ReconfigSequence, Rule};
use serde::{Deserialize, Serialize};

/// A graph whose vertices carry colors in `1..=k`, with no edge joining
/// two vertices of the same color.
#[derive(Debug, Clone)]
pub struct MulticoloredGraph {
    pub graph: Graph,
    pub colors: Vec<usize>,
}

impl MulticoloredGraph {
    pub fn new(graph: Graph, colors: Vec<usize>, k: usize) -> Result<Self> {
        if colors.len() != graph.vertex_count() {
            return Err(Error::invalid_input("one color per vertex required"));
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::InvalidInput(format!("color {c} outside 1..={k}")));
        }
        for (u, w) in graph.edges() {
            if colors[u] == colors[w] {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {w}) joins two vertices of color {}",
                    colors[u]
                )));
            }
        }
        Ok(MulticoloredGraph { graph, colors })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Tso,
    Tjo,
}

/// Role of one generated vertex. Positions on subdivided connectors count
/// 1..=3 from the hub side; position 2 is the parking spot that starts
/// and ends occupied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    Original { v: usize },
    Matched { v: usize },
    EdgeVertex { edge: (usize, usize), part: (usize, usize), label: usize },
    SourceHub { label: usize },
    TargetHub { label: usize },
    SourceConnector { edge: (usize, usize), pos: u8 },
    TargetConnector { edge: (usize, usize), pos: u8 },
    /// Subdivision vertex adjacent to the source side of biclique edge
    /// `(a, b)`.
    BicliqueSource { pair: (usize, usize) },
    /// Subdivision vertex adjacent to the target side of biclique edge
    /// `(a, b)`.
    BicliqueTarget { pair: (usize, usize) },
}

/// Per-vertex role map of a generated instance, with the original edges
/// kept for provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GadgetLayout {
    pub kind: GadgetKind,
    pub k: usize,
    pub roles: Vec<Role>,
    pub source_edges: Vec<(usize, usize)>,
    pub colors: Option<Vec<usize>>,
}

impl GadgetLayout {
    pub fn find(&self, role: &Role) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    fn get(&self, role: Role) -> Result<usize> {
        self.find(&role)
            .ok_or_else(|| Error::Internal(format!("layout is missing {role:?}")))
    }

    pub fn vertices_with(&self, pred: impl Fn(&Role) -> bool) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| pred(r))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Color pairs `(i, j)` with `i < j` in lexicographic order; their index is
/// the part label.
fn color_pairs(k: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            pairs.push((i, j));
        }
    }
    pairs
}

fn choose2(k: usize) -> usize {
    k * (k - 1) / 2
}

/// Builds the sliding gadget: subdivide every edge, wire hub sets X and Y
/// to the edge vertices through triply subdivided connectors, and give
/// every original vertex a matched partner. Tokens start on the original
/// vertices, X, and the connector midpoints; the target moves the hub
/// tokens to Y. The budget is `8·C(k,2) + 2k` slides.
pub fn gen_tso_gadget(mc: &MulticoloredGraph, k: usize) -> Result<(Instance, GadgetLayout)> {
    if k < 2 {
        return Err(Error::invalid_input("gadgets need k >= 2"));
    }
    let g = &mc.graph;
    let n = g.vertex_count();
    let src_edges = g.edges();
    let pairs = color_pairs(k);
    let p = choose2(k);

    let mut roles: Vec<Role> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for v in 0..n {
        roles.push(Role::Original { v });
    }
    let z_base = roles.len();
    for v in 0..n {
        roles.push(Role::Matched { v });
        edges.push((v, z_base + v));
    }
    let e_base = roles.len();
    for (idx, &(u, w)) in src_edges.iter().enumerate() {
        let part = {
            let (a, b) = (mc.colors[u], mc.colors[w]);
            (a.min(b), a.max(b))
        };
        let label = pairs.iter().position(|&pr| pr == part).expect("proper coloring");
        roles.push(Role::EdgeVertex { edge: (u, w), part, label });
        edges.push((u, e_base + idx));
        edges.push((w, e_base + idx));
    }
    let x_base = roles.len();
    for label in 0..p {
        roles.push(Role::SourceHub { label });
    }
    let y_base = roles.len();
    for label in 0..p {
        roles.push(Role::TargetHub { label });
    }
    // connectors: three subdivision vertices per (hub, edge-vertex) pair
    let add_connector = |hub: usize, ev: usize, edge: (usize, usize), source_side: bool,
                             roles: &mut Vec<Role>, edges: &mut Vec<(usize, usize)>| {
        let base = roles.len();
        for pos in 1..=3u8 {
            roles.push(if source_side {
                Role::SourceConnector { edge, pos }
            } else {
                Role::TargetConnector { edge, pos }
            });
        }
        edges.push((hub, base));
        edges.push((base, base + 1));
        edges.push((base + 1, base + 2));
        edges.push((base + 2, ev));
    };
    for (idx, &(u, w)) in src_edges.iter().enumerate() {
        let label = match roles[e_base + idx] {
            Role::EdgeVertex { label, .. } => label,
            _ => unreachable!(),
        };
        add_connector(x_base + label, e_base + idx, (u, w), true, &mut roles, &mut edges);
    }
    for (idx, &(u, w)) in src_edges.iter().enumerate() {
        let label = match roles[e_base + idx] {
            Role::EdgeVertex { label, .. } => label,
            _ => unreachable!(),
        };
        add_connector(y_base + label, e_base + idx, (u, w), false, &mut roles, &mut edges);
    }

    let graph = Graph::new(roles.len(), &edges)?;
    let layout = GadgetLayout {
        kind: GadgetKind::Tso,
        k,
        roles,
        source_edges: src_edges,
        colors: Some(mc.colors.clone()),
    };
    let parked = layout.vertices_with(|r| {
        matches!(r, Role::SourceConnector { pos: 2, .. } | Role::TargetConnector { pos: 2, .. })
    });
    let source: VertexSet = (0..n)
        .chain((0..p).map(|l| x_base + l))
        .chain(parked.iter().copied())
        .collect();
    let target: VertexSet = (0..n)
        .chain((0..p).map(|l| y_base + l))
        .chain(parked)
        .collect();
    let kappa = source.len();
    let ell = 8 * p + 2 * k;
    let inst = Instance::new(graph, source, target, kappa, ell, None)?;
    Ok((inst, layout))
}

/// The three-phase optimal sliding sequence for a multicolored clique:
/// park the clique tokens on their matched partners, route one hub token
/// per color pair through the clique's edge vertex (8 slides each), and
/// return the parked tokens.
pub fn tso_witness(inst: &Instance, layout: &GadgetLayout, clique: &VertexSet) -> Result<ReconfigSequence> {
    if layout.kind != GadgetKind::Tso {
        return Err(Error::invalid_input("layout does not describe a sliding gadget"));
    }
    let k = layout.k;
    let colors = layout.colors.as_ref().ok_or_else(|| Error::invalid_input("layout carries no colors"))?;
    check_clique(layout, clique, k)?;
    let clique_colors: Vec<usize> = clique.iter().map(|&v| colors[v]).collect();
    {
        let mut sorted = clique_colors.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Err(Error::invalid_input("clique is not multicolored"));
        }
    }

    let mut seq = SeqBuilder::new(inst.source.clone());
    // phase 1: park the clique tokens
    for &v in clique.iter() {
        seq.slide(v, layout.get(Role::Matched { v })?)?;
    }
    // phase 2: route one hub token per color pair
    for (label, &(i, j)) in color_pairs(k).iter().enumerate() {
        let (u, w) = clique_edge_with_colors(clique, colors, i, j)?;
        let edge = if u < w { (u, w) } else { (w, u) };
        let ev = layout.get(Role::EdgeVertex {
            edge,
            part: (i, j),
            label,
        })?;
        let a = |pos: u8| layout.get(Role::SourceConnector { edge, pos });
        let c = |pos: u8| layout.get(Role::TargetConnector { edge, pos });
        let x_hub = layout.get(Role::SourceHub { label })?;
        let y_hub = layout.get(Role::TargetHub { label })?;
        // target-side parker vacates toward Y (2 slides)
        seq.slide(c(2)?, c(1)?)?;
        seq.slide(c(1)?, y_hub)?;
        // source-side parker crosses the edge vertex (4 slides)
        seq.slide(a(2)?, a(3)?)?;
        seq.slide(a(3)?, ev)?;
        seq.slide(ev, c(3)?)?;
        seq.slide(c(3)?, c(2)?)?;
        // hub token refills the source-side parking spot (2 slides)
        seq.slide(x_hub, a(1)?)?;
        seq.slide(a(1)?, a(2)?)?;
    }
    // phase 3: return the parked tokens
    for &v in clique.iter() {
        seq.slide(layout.get(Role::Matched { v })?, v)?;
    }
    let seq = seq.finish();
    if let Err(violation) = validate_sequence(inst, &seq, Rule::Slide) {
        return Err(Error::Internal(format!("gadget witness failed validation: {violation}")));
    }
    Ok(seq)
}

/// Builds the jumping gadget: subdivide every edge, add a twice-subdivided
/// biclique between hub sets L and R, and matched partners for the
/// original vertices. The budget is `2·C(k,2) + C(k,2)² + 2k` jumps.
pub fn gen_tjo_gadget(g: &Graph, k: usize) -> Result<(Instance, GadgetLayout)> {
    if k < 2 {
        return Err(Error::invalid_input("gadgets need k >= 2"));
    }
    let n = g.vertex_count();
    let src_edges = g.edges();
    let p = choose2(k);

    let mut roles: Vec<Role> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        roles.push(Role::Original { v });
    }
    let z_base = roles.len();
    for v in 0..n {
        roles.push(Role::Matched { v });
        edges.push((v, z_base + v));
    }
    let e_base = roles.len();
    for (idx, &(u, w)) in src_edges.iter().enumerate() {
        roles.push(Role::EdgeVertex { edge: (u, w), part: (0, 0), label: idx });
        edges.push((u, e_base + idx));
        edges.push((w, e_base + idx));
    }
    let l_base = roles.len();
    for label in 0..p {
        roles.push(Role::SourceHub { label });
    }
    let r_base = roles.len();
    for label in 0..p {
        roles.push(Role::TargetHub { label });
    }
    let nl_base = roles.len();
    for a in 0..p {
        for b in 0..p {
            roles.push(Role::BicliqueSource { pair: (a, b) });
        }
    }
    let nr_base = roles.len();
    for a in 0..p {
        for b in 0..p {
            roles.push(Role::BicliqueTarget { pair: (a, b) });
            let pl = nl_base + a * p + b;
            let qr = nr_base + a * p + b;
            edges.push((l_base + a, pl));
            edges.push((pl, qr));
            edges.push((qr, r_base + b));
        }
    }

    let graph = Graph::new(roles.len(), &edges)?;
    let layout = GadgetLayout {
        kind: GadgetKind::Tjo,
        k,
        roles,
        source_edges: src_edges,
        colors: None,
    };
    let source: VertexSet = (0..n)
        .chain((0..p).map(|l| l_base + l))
        .chain((nr_base..nr_base + p * p).collect::<Vec<_>>())
        .collect();
    let target: VertexSet = (0..n)
        .chain((0..p).map(|l| r_base + l))
        .chain((nl_base..nl_base + p * p).collect::<Vec<_>>())
        .collect();
    let kappa = source.len();
    let ell = 2 * p + p * p + 2 * k;
    let inst = Instance::new(graph, source, target, kappa, ell, None)?;
    Ok((inst, layout))
}

/// The five-phase optimal jumping sequence for a clique: park the clique
/// tokens, jump the L tokens onto the clique's edge vertices, shift every
/// biclique-target token to its adjacent biclique-source vertex, jump the
/// edge-vertex tokens into R, and return the parked tokens.
pub fn tjo_witness(inst: &Instance, layout: &GadgetLayout, clique: &VertexSet) -> Result<ReconfigSequence> {
    if layout.kind != GadgetKind::Tjo {
        return Err(Error::invalid_input("layout does not describe a jumping gadget"));
    }
    let k = layout.k;
    check_clique(layout, clique, k)?;
    let p = choose2(k);

    // the clique's edge vertices, in edge order
    let members: Vec<usize> = clique.iter().copied().collect();
    let mut clique_edges = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            clique_edges.push((members[i], members[j]));
        }
    }
    clique_edges.sort_unstable();
    debug_assert_eq!(clique_edges.len(), p);
    let edge_vertex = |edge: (usize, usize)| -> Result<usize> {
        layout
            .roles
            .iter()
            .position(|r| matches!(r, Role::EdgeVertex { edge: e, .. } if *e == edge))
            .ok_or_else(|| Error::Internal(format!("no edge vertex for {edge:?}")))
    };

    let mut seq = SeqBuilder::new(inst.source.clone());
    for &v in clique.iter() {
        seq.jump(v, layout.get(Role::Matched { v })?)?;
    }
    for (a, &edge) in clique_edges.iter().enumerate() {
        seq.jump(layout.get(Role::SourceHub { label: a })?, edge_vertex(edge)?)?;
    }
    for a in 0..p {
        for b in 0..p {
            seq.jump(
                layout.get(Role::BicliqueTarget { pair: (a, b) })?,
                layout.get(Role::BicliqueSource { pair: (a, b) })?,
            )?;
        }
    }
    for (b, &edge) in clique_edges.iter().enumerate() {
        seq.jump(edge_vertex(edge)?, layout.get(Role::TargetHub { label: b })?)?;
    }
    for &v in clique.iter() {
        seq.jump(layout.get(Role::Matched { v })?, v)?;
    }
    let seq = seq.finish();
    if let Err(violation) = validate_sequence(inst, &seq, Rule::Jump) {
        return Err(Error::Internal(format!("gadget witness failed validation: {violation}")));
    }
    Ok(seq)
}

fn check_clique(layout: &GadgetLayout, clique: &VertexSet, k: usize) -> Result<()> {
    if clique.len() != k {
        return Err(Error::InvalidInput(format!("clique must have {k} vertices")));
    }
    let n = layout.roles.iter().filter(|r| matches!(r, Role::Original { .. })).count();
    clique.check_range(n)?;
    let members: Vec<usize> = clique.iter().copied().collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let e = (members[i], members[j]);
            if !layout.source_edges.contains(&e) {
                return Err(Error::InvalidInput(format!("clique pair {e:?} is not an edge")));
            }
        }
    }
    Ok(())
}

fn clique_edge_with_colors(
    clique: &VertexSet,
    colors: &[usize],
    i: usize,
    j: usize,
) -> Result<(usize, usize)> {
    let u = clique.iter().find(|&&v| colors[v] == i);
    let w = clique.iter().find(|&&v| colors[v] == j);
    match (u, w) {
        (Some(&u), Some(&w)) => Ok((u, w)),
        _ => Err(Error::InvalidInput(format!("clique has no vertices colored {i} and {j}"))),
    }
}

struct SeqBuilder {
    cur: VertexSet,
    steps: Vec<VertexSet>,
}

impl SeqBuilder {
    fn new(start: VertexSet) -> Self {
        SeqBuilder { steps: vec![start.clone()], cur: start }
    }

    fn jump(&mut self, from: usize, to: usize) -> Result<()> {
        if !self.cur.contains(from) || self.cur.contains(to) {
            return Err(Error::Internal(format!("move {from} -> {to} is not applicable")));
        }
        self.cur = self.cur.without(from).with(to);
        self.steps.push(self.cur.clone());
        Ok(())
    }

    fn slide(&mut self, from: usize, to: usize) -> Result<()> {
        self.jump(from, to)
    }

    fn finish(self) -> ReconfigSequence {
        ReconfigSequence::new(self.steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{bfs_distance, BfsOutcome, OracleOptions};

    fn triangle_mc() -> MulticoloredGraph {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        MulticoloredGraph::new(g, vec![1, 2, 3], 3).unwrap()
    }

    #[test]
    fn tso_gadget_on_colored_triangle() {
        let (inst, layout) = gen_tso_gadget(&triangle_mc(), 3).unwrap();
        assert_eq!(inst.ell, 30);
        assert_eq!(inst.k, 12); // n + C(k,2) + 2m = 3 + 3 + 6
        assert_eq!(inst.graph.degeneracy(), 2);
        assert_eq!(layout.roles.len(), inst.graph.vertex_count());
    }

    fn moves_of(w: &crate::sequence::ReconfigSequence) -> Vec<(usize, usize)> {
        w.steps
            .windows(2)
            .map(|pair| {
                let (out, into) = pair[0].exchanged(&pair[1]);
                (out.as_slice()[0], into.as_slice()[0])
            })
            .collect()
    }

    #[test]
    fn tso_witness_has_exact_length_and_phases() {
        let (inst, layout) = gen_tso_gadget(&triangle_mc(), 3).unwrap();
        let clique = VertexSet::new(vec![0, 1, 2]);
        let w = tso_witness(&inst, &layout, &clique).unwrap();
        assert_eq!(w.move_count(), 30);
        assert_eq!(validate_sequence(&inst, &w, Rule::Slide), Ok(()));

        // phase 1: k slides park the clique on its matched partners;
        // phase 3: k slides bring them back
        let moves = moves_of(&w);
        for (i, &v) in clique.iter().enumerate() {
            let z = layout.find(&Role::Matched { v }).unwrap();
            assert_eq!(moves[i], (v, z));
            assert_eq!(moves[moves.len() - 3 + i], (z, v));
        }
        // phase 2: eight slides per color pair, starting by clearing the
        // target-side parking spot and ending with the hub refill
        for (label, chunk) in moves[3..27].chunks(8).enumerate() {
            let x_hub = layout.find(&Role::SourceHub { label }).unwrap();
            let y_hub = layout.find(&Role::TargetHub { label }).unwrap();
            assert_eq!(chunk[1].1, y_hub);
            assert_eq!(chunk[6].0, x_hub);
        }
    }

    #[test]
    fn tso_witness_rejects_non_clique() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let mc = MulticoloredGraph::new(g, vec![1, 2, 3], 3).unwrap();
        let (inst, layout) = gen_tso_gadget(&mc, 3).unwrap();
        let not_clique = VertexSet::new(vec![0, 1, 2]);
        assert!(tso_witness(&inst, &layout, &not_clique).is_err());
    }

    #[test]
    fn tjo_gadget_on_k3() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let (inst, _) = gen_tjo_gadget(&g, 3).unwrap();
        assert_eq!(inst.ell, 21); // 2*3 + 9 + 6
        assert_eq!(inst.k, 15); // 3 + 3 + 9
        assert_eq!(inst.graph.degeneracy(), 2);
    }

    #[test]
    fn tjo_witness_has_exact_length_and_phases() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let (inst, layout) = gen_tjo_gadget(&g, 3).unwrap();
        let clique = VertexSet::new(vec![0, 1, 2]);
        let w = tjo_witness(&inst, &layout, &clique).unwrap();
        assert_eq!(w.move_count(), 21);
        assert_eq!(validate_sequence(&inst, &w, Rule::Jump), Ok(()));

        // phases: k parking jumps, C(k,2) hub-to-edge jumps, C(k,2)^2
        // biclique shifts, C(k,2) edge-to-hub jumps, k returns
        let moves = moves_of(&w);
        let is = |v: usize, pred: &dyn Fn(&Role) -> bool| pred(&layout.roles[v]);
        for &(from, to) in &moves[0..3] {
            assert!(is(from, &|r| matches!(r, Role::Original { .. })));
            assert!(is(to, &|r| matches!(r, Role::Matched { .. })));
        }
        for &(from, to) in &moves[3..6] {
            assert!(is(from, &|r| matches!(r, Role::SourceHub { .. })));
            assert!(is(to, &|r| matches!(r, Role::EdgeVertex { .. })));
        }
        for &(from, to) in &moves[6..15] {
            assert!(is(from, &|r| matches!(r, Role::BicliqueTarget { .. })));
            assert!(is(to, &|r| matches!(r, Role::BicliqueSource { .. })));
        }
        for &(from, to) in &moves[15..18] {
            assert!(is(from, &|r| matches!(r, Role::EdgeVertex { .. })));
            assert!(is(to, &|r| matches!(r, Role::TargetHub { .. })));
        }
        for &(from, to) in &moves[18..21] {
            assert!(is(from, &|r| matches!(r, Role::Matched { .. })));
            assert!(is(to, &|r| matches!(r, Role::Original { .. })));
        }
    }

    #[test]
    fn improper_coloring_is_rejected() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(MulticoloredGraph::new(g, vec![1, 1], 2).is_err());
    }

    #[test]
    fn empty_color_pair_is_accepted_and_unsolvable() {
        // three colors but only parts (1,2) and (2,3) have edges: the
        // (1,3) hubs end up isolated, so the instance is a no-instance and
        // small enough for the oracle to confirm
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let mc = MulticoloredGraph::new(g, vec![1, 2, 3], 3).unwrap();
        let (inst, _) = gen_tso_gadget(&mc, 3).unwrap();
        let opts = OracleOptions { node_cap: 2_000_000, max_depth: None };
        let rep = bfs_distance(&inst, Rule::Slide, &opts).unwrap();
        match rep.outcome {
            BfsOutcome::Unreachable => {}
            BfsOutcome::Reached { distance } => {
                assert!(distance > inst.ell, "no-instance solved within budget");
            }
        }
    }

    #[test]
    fn k2_gadgets_are_small_and_consistent() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let mc = MulticoloredGraph::new(
            Graph::new(4, &[(0, 1), (2, 3), (0, 3)]).unwrap(),
            vec![1, 2, 1, 2],
            2,
        )
        .unwrap();
        let (ti, tl) = gen_tso_gadget(&mc, 2).unwrap();
        assert_eq!(ti.ell, 8 + 4);
        let w = tso_witness(&ti, &tl, &VertexSet::new(vec![0, 1])).unwrap();
        assert_eq!(w.move_count(), ti.ell);

        let (ji, jl) = gen_tjo_gadget(&g, 2).unwrap();
        assert_eq!(ji.ell, 2 + 1 + 4);
        let w = tjo_witness(&ji, &jl, &VertexSet::new(vec![0, 2])).unwrap();
        assert_eq!(w.move_count(), ji.ell);
    }
}
