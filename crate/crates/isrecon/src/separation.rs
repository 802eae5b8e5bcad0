//! Monte-Carlo random-separation solver for shortest reconfiguration on
//! graphs with a modulator whose deletion leaves bounded degree.
//!
//! Each trial 2-colors the non-modulator part, guesses the touched
//! modulator vertices, shrinks the instance with the deletion rules,
//! deduplicates equivalent small components, and finishes with a bounded
//! exhaustive search. Yes answers always carry a validated witness lifted
//! back to the original instance; failures only ever produce
//! `probably_no` (one-sided error).

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{self, OracleOptions};
use crate::sequence::{validate_sequence, Instance, ReconfigSequence, Rule};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_TRIAL_CAP: u64 = 100_000;
pub const MAX_EXHAUSTIVE_H: usize = 24;
pub const MAX_MODULATOR_GUESS: usize = 20;

/// A red/blue coloring of `H = V(G) \ M`.
#[derive(Debug, Clone)]
pub struct Coloring {
    pub h: VertexSet,
    red: Vec<bool>,
}

impl Coloring {
    pub fn from_mask(h: VertexSet, mask: u64) -> Self {
        let red = (0..h.len()).map(|i| mask >> i & 1 == 1).collect();
        Coloring { h, red }
    }

    /// `Some(true)` red, `Some(false)` blue, `None` outside H.
    pub fn is_red(&self, v: usize) -> Option<bool> {
        self.h.as_slice().binary_search(&v).ok().map(|i| self.red[i])
    }

    pub fn red_count(&self) -> usize {
        self.red.iter().filter(|&&r| r).count()
    }
}

/// Independent fair coin per vertex of `H`, reproducible from the seed.
pub fn color_h(g: &Graph, m: &VertexSet, seed: u64) -> Result<Coloring> {
    m.check_range(g.vertex_count())?;
    let h = all_vertices(g).difference(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let red = (0..h.len()).map(|_| rng.gen_bool(0.5)).collect();
    Ok(Coloring { h, red })
}

fn all_vertices(g: &Graph) -> VertexSet {
    (0..g.vertex_count()).collect()
}

/// Instance shrunk by the deletion rules, on compacted vertex ids.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub source: VertexSet,
    pub target: VertexSet,
    pub k: usize,
    pub ell: usize,
    /// local id → original id
    pub to_orig: Vec<usize>,
    /// deleted tokens of `S ∩ T` (original ids); they sit still in any
    /// lifted witness, and all of their neighbors are deleted with them
    pub lift: VertexSet,
    /// surviving guessed-touched modulator vertices (local ids)
    pub m_prime: VertexSet,
    /// surviving red vertices of H (local ids)
    pub red: VertexSet,
}

#[derive(Debug, Clone)]
pub enum Reduction {
    /// The coloring deletes a vertex that must move; it cannot be a
    /// successful coloring.
    Infeasible,
    Reduced(ReducedInstance),
}

/// Applies the five deletion rules for a guessed touched set `M' ⊆ M`:
/// blue `S ∩ T` vertices and their neighbors, untouched-modulator `S ∩ T`
/// vertices and their neighbors, red `S ∩ T` vertices in oversized red
/// components plus neighbors, blue non-`S ∩ T` vertices, and red
/// non-`S ∩ T` vertices in oversized red components.
pub fn reduce_instance(inst: &Instance, m: &VertexSet, m_prime: &VertexSet, chi: &Coloring) -> Result<Reduction> {
    if !m_prime.is_subset(m) {
        return Err(Error::invalid_input("M' must be a subset of the modulator"));
    }
    let g = &inst.graph;
    let n = g.vertex_count();
    let two_ell = 2 * inst.ell;
    let s_and_t = inst.source.intersection(&inst.target);
    let symm_diff = inst.source.union(&inst.target).difference(&s_and_t);

    // components of the red subgraph, in the original graph
    let comp_of = red_components(g, chi);
    let mut comp_size: HashMap<usize, usize> = HashMap::new();
    for &c in comp_of.values() {
        *comp_size.entry(c).or_insert(0) += 1;
    }
    let oversized = |v: usize| -> bool {
        comp_of.get(&v).map(|c| comp_size[c] > two_ell).unwrap_or(false)
    };

    let mut delete = vec![false; n];
    let delete_with_neighbors = |v: usize, delete: &mut Vec<bool>| {
        delete[v] = true;
        for &w in g.neighbors(v) {
            delete[w] = true;
        }
    };
    for &v in s_and_t.iter() {
        match chi.is_red(v) {
            Some(false) => delete_with_neighbors(v, &mut delete),
            Some(true) if oversized(v) => delete_with_neighbors(v, &mut delete),
            Some(true) => {}
            None => {
                if !m_prime.contains(v) {
                    delete_with_neighbors(v, &mut delete);
                }
            }
        }
    }
    for &v in chi.h.iter() {
        if s_and_t.contains(v) {
            continue;
        }
        match chi.is_red(v) {
            Some(false) => delete[v] = true,
            Some(true) if oversized(v) => delete[v] = true,
            _ => {}
        }
    }

    if symm_diff.iter().any(|&v| delete[v]) {
        return Ok(Reduction::Infeasible);
    }

    let keep: VertexSet = (0..n).filter(|&v| !delete[v]).collect();
    let deleted: VertexSet = (0..n).filter(|&v| delete[v]).collect();
    let lift = s_and_t.intersection(&deleted);
    let (graph, to_orig) = g.induced_subgraph(&keep)?;
    let local = |set: &VertexSet| -> VertexSet {
        set.iter()
            .filter_map(|&v| to_orig.binary_search(&v).ok())
            .collect()
    };
    let source = local(&inst.source);
    let target = local(&inst.target);
    let m_prime_local = local(m_prime);
    let red: VertexSet = chi
        .h
        .iter()
        .filter(|&&v| chi.is_red(v) == Some(true))
        .filter_map(|&v| to_orig.binary_search(&v).ok())
        .collect();
    let k = source.len();
    debug_assert_eq!(k, target.len());
    Ok(Reduction::Reduced(ReducedInstance {
        graph,
        source,
        target,
        k,
        ell: inst.ell,
        to_orig,
        lift,
        m_prime: m_prime_local,
        red,
    }))
}

/// Connected components of the red induced subgraph, as vertex → component
/// id (component ids are the smallest member vertex).
fn red_components(g: &Graph, chi: &Coloring) -> HashMap<usize, usize> {
    let mut comp = HashMap::new();
    for &v in chi.h.iter() {
        if chi.is_red(v) != Some(true) || comp.contains_key(&v) {
            continue;
        }
        let mut stack = vec![v];
        comp.insert(v, v);
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if chi.is_red(w) == Some(true) && !comp.contains_key(&w) {
                    comp.insert(w, v);
                    stack.push(w);
                }
            }
        }
    }
    comp
}

/// One surviving red component with its context (all local ids).
#[derive(Debug, Clone)]
pub struct Component {
    pub vertices: VertexSet,
    /// neighborhood inside the surviving guessed modulator, fixed
    /// point-wise by the equivalence
    pub boundary: VertexSet,
    /// intersection with `S' ∩ T'`
    pub marked: VertexSet,
    /// touches `S' Δ T'`; such components are never pruned
    pub important: bool,
}

/// Equivalence-class key: boundary (original ids, fixed point-wise),
/// component size, and the canonical form of the 2-colored component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentKey {
    pub boundary: Vec<usize>,
    pub size: usize,
    canon: Vec<u64>,
}

#[derive(Debug)]
pub struct ComponentClasses {
    /// unimportant components grouped by equivalence class
    pub classes: BTreeMap<ComponentKey, Vec<Component>>,
    /// important components, kept unconditionally
    pub important: Vec<Component>,
}

/// Cache for canonical forms, keyed by original-id triples so hits carry
/// across colorings of the same instance.
pub type CanonCache = HashMap<(Vec<usize>, Vec<usize>, Vec<usize>), Vec<u64>>;

/// Splits the surviving red subgraph into components and groups the
/// unimportant ones by color-preserving isomorphism with the boundary
/// fixed point-wise.
pub fn classify_components(
    red: &ReducedInstance,
    two_ell: usize,
    cache: &mut CanonCache,
) -> Result<ComponentClasses> {
    let s_and_t = red.source.intersection(&red.target);
    let symm_diff = red.source.union(&red.target).difference(&s_and_t);
    let mut seen = vec![false; red.graph.vertex_count()];
    let mut classes: BTreeMap<ComponentKey, Vec<Component>> = BTreeMap::new();
    let mut important = Vec::new();
    for &start in red.red.iter() {
        if seen[start] {
            continue;
        }
        let mut verts = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < verts.len() {
            let u = verts[head];
            head += 1;
            for &w in red.graph.neighbors(u) {
                if red.red.contains(w) && !seen[w] {
                    seen[w] = true;
                    verts.push(w);
                }
            }
        }
        let vertices = VertexSet::new(verts);
        let boundary = red.graph.neighborhood(&vertices)?.intersection(&red.m_prime);
        let marked = vertices.intersection(&s_and_t);
        let is_important = !vertices.intersection(&symm_diff).is_empty();
        let comp = Component { vertices, boundary, marked, important: is_important };
        if is_important {
            important.push(comp);
            continue;
        }
        if comp.vertices.len() > two_ell {
            return Err(Error::Internal(format!(
                "unimportant component of size {} survived a 2ℓ = {two_ell} reduction",
                comp.vertices.len()
            )));
        }
        let key = component_key(red, &comp, cache)?;
        classes.entry(key).or_default().push(comp);
    }
    Ok(ComponentClasses { classes, important })
}

fn component_key(red: &ReducedInstance, comp: &Component, cache: &mut CanonCache) -> Result<ComponentKey> {
    let orig = |s: &VertexSet| -> Vec<usize> { s.iter().map(|&v| red.to_orig[v]).collect() };
    let cache_key = (orig(&comp.vertices), orig(&comp.boundary), orig(&comp.marked));
    if let Some(canon) = cache.get(&cache_key) {
        return Ok(ComponentKey { boundary: cache_key.1, size: comp.vertices.len(), canon: canon.clone() });
    }
    let canon = canonical_form(&red.graph, comp)?;
    cache.insert(cache_key.clone(), canon.clone());
    Ok(ComponentKey { boundary: cache_key.1, size: comp.vertices.len(), canon })
}

/// Minimum encoding of (component adjacency, marks, boundary adjacency)
/// over vertex orderings consistent with an iterated-refinement partition.
/// The boundary stays fixed point-wise; only component vertices permute.
fn canonical_form(g: &Graph, comp: &Component) -> Result<Vec<u64>> {
    let verts: Vec<usize> = comp.vertices.iter().copied().collect();
    let c = verts.len();
    if c > 64 {
        return Err(Error::resource("component canonicalization size", 64));
    }
    let idx_of = |v: usize| verts.binary_search(&v).unwrap();
    let mut adj = vec![0u64; c];
    for (i, &v) in verts.iter().enumerate() {
        for &w in g.neighbors(v) {
            if comp.vertices.contains(w) {
                adj[i] |= 1 << idx_of(w);
            }
        }
    }
    let bnd: Vec<usize> = comp.boundary.iter().copied().collect();
    let mut bnd_mask = vec![0u64; c];
    for (i, &v) in verts.iter().enumerate() {
        for (bpos, &b) in bnd.iter().enumerate() {
            if g.has_edge(v, b) {
                bnd_mask[i] |= 1 << bpos;
            }
        }
    }
    let marked: Vec<bool> = verts.iter().map(|&v| comp.marked.contains(v)).collect();

    // iterated color refinement from (marked, boundary row, degree)
    let mut color: Vec<usize> = {
        let mut sig: Vec<(bool, u64, u32)> = (0..c)
            .map(|i| (marked[i], bnd_mask[i], adj[i].count_ones()))
            .collect();
        let mut sorted = sig.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sig.iter_mut().map(|s| sorted.binary_search(s).unwrap()).collect()
    };
    loop {
        let mut sig: Vec<(usize, Vec<usize>)> = (0..c)
            .map(|i| {
                let mut nb: Vec<usize> =
                    (0..c).filter(|&j| adj[i] >> j & 1 == 1).map(|j| color[j]).collect();
                nb.sort_unstable();
                (color[i], nb)
            })
            .collect();
        let mut sorted = sig.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sig.drain(..).map(|s| sorted.binary_search(&s).unwrap()).collect();
        if next == color {
            break;
        }
        color = next;
    }

    // enumerate orderings consistent with the stable partition
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &col) in color.iter().enumerate() {
        cells.entry(col).or_default().push(i);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let perm_count: u64 = cells.iter().map(|c| factorial(c.len())).product();
    if perm_count > 1_000_000 {
        return Err(Error::resource("canonical labeling permutations", 1_000_000));
    }

    let mut best: Option<Vec<u64>> = None;
    let mut order: Vec<usize> = Vec::with_capacity(c);
    enumerate_orders(&cells, 0, &mut order, &mut |order: &[usize]| {
        let enc = encode(order, &adj, &bnd_mask, &marked);
        if best.as_ref().map(|b| enc < *b).unwrap_or(true) {
            best = Some(enc);
        }
    });
    Ok(best.expect("at least one ordering"))
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

fn enumerate_orders(cells: &[Vec<usize>], at: usize, order: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if at == cells.len() {
        visit(order);
        return;
    }
    permute(&mut cells[at].clone(), 0, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        enumerate_orders(cells, at + 1, order, visit);
        order.truncate(len);
    });
}

fn permute(items: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

fn encode(order: &[usize], adj: &[u64], bnd_mask: &[u64], marked: &[bool]) -> Vec<u64> {
    let c = order.len();
    let mut out = Vec::with_capacity(2 + c);
    let mut tri = 0u64;
    let mut bit = 0;
    let mut tri_words = Vec::new();
    for p in 0..c {
        for q in p + 1..c {
            if adj[order[p]] >> order[q] & 1 == 1 {
                tri |= 1 << bit;
            }
            bit += 1;
            if bit == 64 {
                tri_words.push(tri);
                tri = 0;
                bit = 0;
            }
        }
    }
    tri_words.push(tri);
    out.extend(tri_words);
    let mut marks = 0u64;
    for (p, &i) in order.iter().enumerate() {
        if marked[i] {
            marks |= 1 << (p % 64);
        }
        if p % 64 == 63 {
            out.push(marks);
            marks = 0;
        }
    }
    out.push(marks);
    out.extend(order.iter().map(|&i| bnd_mask[i]));
    out
}

/// Keeps all important components and at most `2ℓ` unimportant components
/// per equivalence class.
pub fn prune_classes(classes: ComponentClasses, two_ell: usize) -> Vec<Component> {
    let mut kept = classes.important;
    for (_, comps) in classes.classes {
        kept.extend(comps.into_iter().take(two_ell.max(1)));
    }
    kept
}

/// Drops every unimportant component not in `kept`. Their stationary
/// tokens move to the lift set, and, exactly like the reduction rules,
/// the neighbors of those tokens are deleted too, so lifted witnesses stay
/// conflict-free.
pub fn apply_pruning(red: &ReducedInstance, kept: &[Component]) -> Result<ReducedInstance> {
    let n = red.graph.vertex_count();
    let mut keep_mask = vec![true; n];
    let kept_union: VertexSet = kept.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    let mut new_lift = red.lift.clone();
    for &v in red.red.iter() {
        if !kept_union.contains(v) {
            keep_mask[v] = false;
        }
    }
    let s_and_t = red.source.intersection(&red.target);
    for &v in red.red.iter() {
        if keep_mask[v] {
            continue;
        }
        if s_and_t.contains(v) {
            new_lift = new_lift.with(red.to_orig[v]);
            for &w in red.graph.neighbors(v) {
                keep_mask[w] = false;
            }
        }
    }
    let keep: VertexSet = (0..n).filter(|&v| keep_mask[v]).collect();
    // dropped components are unimportant, so no moving token disappears
    debug_assert!({
        let symm = red.source.union(&red.target).difference(&s_and_t);
        symm.iter().all(|&v| keep_mask[v])
    });
    let (graph, local_to_old) = red.graph.induced_subgraph(&keep)?;
    let relabel = |set: &VertexSet| -> VertexSet {
        set.iter().filter_map(|&v| local_to_old.binary_search(&v).ok()).collect()
    };
    let source = relabel(&red.source);
    let target = relabel(&red.target);
    let k = source.len();
    Ok(ReducedInstance {
        graph,
        source,
        target,
        k,
        ell: red.ell,
        to_orig: local_to_old.iter().map(|&v| red.to_orig[v]).collect(),
        lift: new_lift,
        m_prime: relabel(&red.m_prime),
        red: relabel(&red.red),
    })
}

/// Exhaustive bounded search on the final instance: breadth-first over
/// configurations, exploring no deeper than `ℓ` moves.
pub fn brute_search(red: &ReducedInstance, rule: Rule, node_cap: u64) -> Result<Option<ReconfigSequence>> {
    let inst = Instance::new(
        red.graph.clone(),
        red.source.clone(),
        red.target.clone(),
        red.k,
        red.ell,
        None,
    )?;
    let opts = OracleOptions { node_cap, max_depth: Some(red.ell) };
    let (witness, _) = oracle::bfs_witness(&inst, rule, &opts)?;
    Ok(witness)
}

/// Maps a local witness back to original ids and re-adds the stationary
/// lifted tokens.
pub fn lift_witness(red: &ReducedInstance, seq: &ReconfigSequence) -> ReconfigSequence {
    let steps = seq
        .steps
        .iter()
        .map(|cfg| {
            let mapped: VertexSet = cfg.iter().map(|&v| red.to_orig[v]).collect();
            mapped.union(&red.lift)
        })
        .collect();
    ReconfigSequence::new(steps)
}

#[derive(Debug, Clone, Copy)]
pub enum ColoringStrategy {
    /// Iterate all `2^|H|` colorings; deterministic and exact at desk
    /// scale.
    Exhaustive,
    /// Monte-Carlo trials with derived seeds; false negatives only.
    Randomized { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct SeparationOptions {
    pub strategy: ColoringStrategy,
    pub node_cap: u64,
}

impl Default for SeparationOptions {
    fn default() -> Self {
        SeparationOptions {
            strategy: ColoringStrategy::Randomized { trials: DEFAULT_TRIAL_CAP, seed: 0 },
            node_cap: oracle::DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SepOutcome {
    Yes(ReconfigSequence),
    ProbablyNo,
}

#[derive(Debug, Clone)]
pub struct SepReport {
    pub outcome: SepOutcome,
    pub colorings: u64,
    pub reductions: u64,
}

/// Default trial count `min(4^{ℓΔ}, cap)`, where `Δ` is the maximum degree
/// of `G[H]`.
pub fn default_trials(inst: &Instance, m: &VertexSet) -> u64 {
    let h = all_vertices(&inst.graph).difference(m);
    let (gh, _) = inst.graph.induced_subgraph(&h).expect("modulator in range");
    let delta = gh.max_degree() as u32;
    let exponent = (inst.ell as u32).saturating_mul(delta);
    if exponent >= 32 {
        DEFAULT_TRIAL_CAP
    } else {
        4u64.saturating_pow(exponent).min(DEFAULT_TRIAL_CAP)
    }
}

/// Full solver: for each coloring and each guessed touched set `M' ⊆ M`,
/// reduce, classify, prune, and brute-force. The first validated witness
/// wins; exhausting all trials yields `probably_no`.
pub fn solve_separation(
    inst: &Instance,
    m: &VertexSet,
    rule: Rule,
    opts: &SeparationOptions,
) -> Result<SepReport> {
    m.check_range(inst.graph.vertex_count())?;
    if m.len() > MAX_MODULATOR_GUESS {
        return Err(Error::resource("modulator guess enumeration", 1 << MAX_MODULATOR_GUESS));
    }
    let h = all_vertices(&inst.graph).difference(m);
    let two_ell = 2 * inst.ell;
    let mod_vec: Vec<usize> = m.iter().copied().collect();
    let mut cache = CanonCache::new();
    let mut colorings = 0u64;
    let mut reductions = 0u64;

    let run_coloring = |chi: &Coloring,
                            colorings: &mut u64,
                            reductions: &mut u64,
                            cache: &mut CanonCache|
     -> Result<Option<ReconfigSequence>> {
        *colorings += 1;
        for mask in 0u64..(1u64 << mod_vec.len()) {
            let m_prime: VertexSet = mod_vec
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            *reductions += 1;
            let reduced = match reduce_instance(inst, m, &m_prime, chi)? {
                Reduction::Infeasible => continue,
                Reduction::Reduced(r) => r,
            };
            let classes = classify_components(&reduced, two_ell, cache)?;
            let kept = prune_classes(classes, two_ell);
            let final_inst = apply_pruning(&reduced, &kept)?;
            if let Some(local) = brute_search(&final_inst, rule, opts.node_cap)? {
                let lifted = lift_witness(&final_inst, &local);
                if let Err(v) = validate_sequence(inst, &lifted, rule) {
                    return Err(Error::Internal(format!("lifted witness failed validation: {v}")));
                }
                return Ok(Some(lifted));
            }
        }
        Ok(None)
    };

    match opts.strategy {
        ColoringStrategy::Exhaustive => {
            if h.len() > MAX_EXHAUSTIVE_H {
                return Err(Error::resource("exhaustive coloring enumeration", 1 << MAX_EXHAUSTIVE_H));
            }
            for mask in 0u64..(1u64 << h.len()) {
                let chi = Coloring::from_mask(h.clone(), mask);
                if let Some(seq) = run_coloring(&chi, &mut colorings, &mut reductions, &mut cache)? {
                    return Ok(SepReport { outcome: SepOutcome::Yes(seq), colorings, reductions });
                }
            }
        }
        ColoringStrategy::Randomized { trials, seed } => {
            if trials == 0 {
                return Err(Error::invalid_input("trial count must be positive"));
            }
            for t in 0..trials {
                let chi = color_h(&inst.graph, m, seed.wrapping_add(t))?;
                if let Some(seq) = run_coloring(&chi, &mut colorings, &mut reductions, &mut cache)? {
                    return Ok(SepReport { outcome: SepOutcome::Yes(seq), colorings, reductions });
                }
            }
        }
    }
    Ok(SepReport { outcome: SepOutcome::ProbablyNo, colorings, reductions })
}
