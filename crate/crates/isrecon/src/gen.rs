//! Seeded random generators for graphs and instances: the benchmark
//! suites and the oracle-agreement test harness both draw from here, so
//! everything is deterministic in the seed.

use crate::error::Result;
use crate::gadgets::MulticoloredGraph;
use crate::graph::{Graph, VertexSet};
use crate::sequence::Instance;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph with degeneracy at most `d`: each vertex links to at most
/// `d` uniformly chosen earlier vertices.
pub fn random_degenerate_graph(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let cap = d.min(v);
        let deg = rng.gen_range(0..=cap);
        let mut earlier: Vec<usize> = (0..v).collect();
        earlier.shuffle(rng);
        for &u in earlier.iter().take(deg) {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("generated edges are valid")
}

/// Erdős–Rényi style graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("generated edges are valid")
}

/// Random graph where every vertex of `0..h` keeps degree at most `delta`
/// inside that range; vertices `h..h+m` form the modulator and attach
/// freely.
pub fn random_modulator_graph(
    h: usize,
    m: usize,
    delta: usize,
    p_h: f64,
    p_m: f64,
    rng: &mut ChaCha8Rng,
) -> (Graph, VertexSet) {
    let n = h + m;
    let mut deg = vec![0usize; h];
    let mut edges = Vec::new();
    for u in 0..h {
        for v in u + 1..h {
            if deg[u] < delta && deg[v] < delta && rng.gen_bool(p_h) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
    }
    for u in h..n {
        for v in 0..u {
            if rng.gen_bool(p_m) {
                edges.push((v, u));
            }
        }
    }
    let g = Graph::new(n, &edges).expect("generated edges are valid");
    let modulator: VertexSet = (h..n).collect();
    (g, modulator)
}

/// Greedy random independent set of size exactly `k`, if one is found.
pub fn random_independent_set(g: &Graph, k: usize, rng: &mut ChaCha8Rng) -> Option<VertexSet> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(rng);
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for v in order {
        if chosen.len() == k {
            break;
        }
        if !chosen.iter().any(|&u| g.has_edge(u, v)) {
            chosen.push(v);
        }
    }
    (chosen.len() == k).then(|| VertexSet::new(chosen))
}

#[derive(Debug, Clone, Copy)]
pub struct InstanceGenConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub degeneracy: usize,
    pub k_max: usize,
    pub ell_max: usize,
}

impl Default for InstanceGenConfig {
    fn default() -> Self {
        InstanceGenConfig { n_min: 4, n_max: 10, degeneracy: 3, k_max: 3, ell_max: 5 }
    }
}

/// Random bounded-degeneracy instance; retries until S and T of the drawn
/// size exist.
pub fn random_instance(cfg: &InstanceGenConfig, rng: &mut ChaCha8Rng) -> Instance {
    loop {
        let n = rng.gen_range(cfg.n_min..=cfg.n_max);
        let g = random_degenerate_graph(n, cfg.degeneracy, rng);
        let k = rng.gen_range(1..=cfg.k_max);
        let ell = rng.gen_range(0..=cfg.ell_max);
        let (s, t) = match (random_independent_set(&g, k, rng), random_independent_set(&g, k, rng)) {
            (Some(s), Some(t)) => (s, t),
            _ => continue,
        };
        if let Ok(inst) = Instance::new(g, s, t, k, ell, None) {
            return inst;
        }
    }
}

/// Random modulator instance for the separation solver: `G[H]` keeps
/// maximum degree at most `delta`.
pub fn random_separation_instance(
    h_max: usize,
    m_max: usize,
    delta: usize,
    k_max: usize,
    ell_max: usize,
    rng: &mut ChaCha8Rng,
) -> Instance {
    loop {
        let h = rng.gen_range(3..=h_max);
        let m = rng.gen_range(0..=m_max);
        let (g, modulator) = random_modulator_graph(h, m, delta, 0.25, 0.3, rng);
        let k = rng.gen_range(1..=k_max);
        let ell = rng.gen_range(0..=ell_max);
        let (s, t) = match (random_independent_set(&g, k, rng), random_independent_set(&g, k, rng)) {
            (Some(s), Some(t)) => (s, t),
            _ => continue,
        };
        if let Ok(inst) = Instance::new(g, s, t, k, ell, Some(modulator)) {
            return inst;
        }
    }
}

/// Properly k-colored graph with a planted multicolored k-clique, padded
/// with random properly-colored edges. For `k = 2` at least two planted
/// edges keep the generated sliding gadget at degeneracy exactly 2.
pub fn random_colored_graph_with_clique(
    k: usize,
    n: usize,
    extra_edge_prob: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(MulticoloredGraph, VertexSet)> {
    let n = n.max(k + 2);
    let mut colors: Vec<usize> = (0..n).map(|v| (v % k) + 1).collect();
    // the planted clique takes vertices 0..k, one per color
    for (v, color) in colors.iter_mut().enumerate().take(k) {
        *color = v + 1;
    }
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    // guarantee a second edge in some color part
    if let Some((u, v)) = (k..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .find(|&(u, v)| colors[u] != colors[v])
    {
        edges.push((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] && rng.gen_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, &edges)?;
    let mc = MulticoloredGraph::new(g, colors, k)?;
    Ok((mc, (0..k).collect()))
}

/// Graph with a planted k-clique plus a triangle (so the jumping gadget
/// stays at degeneracy exactly 2 even for `k = 2`), padded with random
/// edges.
pub fn random_graph_with_clique(
    k: usize,
    n: usize,
    extra_edge_prob: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(Graph, VertexSet)> {
    let n = n.max(k.max(3) + 1);
    let mut edges = Vec::new();
    let planted = k.max(3);
    for u in 0..planted {
        for v in u + 1..planted {
            edges.push((u, v));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, &edges)?;
    Ok((g, (0..k).collect()))
}
