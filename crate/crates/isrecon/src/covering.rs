//! Independence covering families: constructors for degenerate graphs and
//! for graphs with a modulator to a degenerate graph, plus an enumeration
//! verifier for the covering property.
//!
//! A family covers `(G, k)` when every independent set of size at most `k`
//! is contained in some member.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub const DEFAULT_FAMILY_CAP: u64 = 1_000_000;
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;
pub const DEFAULT_VERIFIED_ROUND_CAP: u64 = 1_000_000;

/// How to build the inner family in [`modulator_family`].
#[derive(Debug, Clone, Copy)]
pub enum FamilyMode {
    Exact,
    Sampled { rounds: u64, seed: u64 },
    SampledVerified { seed: u64 },
}

/// A family of independent sets, deduplicated and kept in lexicographic
/// order so downstream guess enumeration is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringFamily {
    sets: Vec<VertexSet>,
    pub k: usize,
    /// True when the covering property is known to hold, either by
    /// construction or because [`verify_cover`] succeeded.
    pub verified: bool,
}

impl CoveringFamily {
    /// Every member must be independent in `g`; violations are construction
    /// errors, never latent state.
    pub fn new(g: &Graph, sets: Vec<VertexSet>, k: usize, verified: bool) -> Result<Self> {
        for s in &sets {
            if !g.is_independent(s)? {
                return Err(Error::InvalidInput(format!("family member {s:?} is not independent")));
            }
        }
        Ok(Self::from_independent(sets, k, verified))
    }

    fn from_independent(mut sets: Vec<VertexSet>, k: usize, verified: bool) -> Self {
        sets.sort();
        sets.dedup();
        CoveringFamily { sets, k, verified }
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Family plus the given sets (deduplicated). Used to append S and T of
    /// the active instance before solving.
    pub fn with_members(&self, g: &Graph, extra: &[VertexSet]) -> Result<Self> {
        let mut sets = self.sets.clone();
        for s in extra {
            if !g.is_independent(s)? {
                return Err(Error::InvalidInput(format!("appended member {s:?} is not independent")));
            }
            sets.push(s.clone());
        }
        Ok(Self::from_independent(sets, self.k, self.verified))
    }

    /// Keeps only members of size at least `k`. Coverage of size-`k`
    /// independent sets is preserved, which is what the reachability
    /// meta-graph needs.
    pub fn prune_small(&self, k: usize) -> Self {
        let sets = self.sets.iter().filter(|s| s.len() >= k).cloned().collect();
        Self::from_independent(sets, self.k, self.verified)
    }
}

/// All maximal independent sets of `g`. Every independent set extends to a
/// maximal one, so this is a covering family for any `k`.
pub fn exact_family(g: &Graph, k: usize, cap: u64) -> Result<CoveringFamily> {
    let n = g.vertex_count();
    // Bron-Kerbosch with pivoting on the complement graph: cliques of the
    // complement are exactly the independent sets of g.
    let mut comp_nbr: Vec<BitSet> = Vec::with_capacity(n);
    let mut all = BitSet::empty(n);
    for v in 0..n {
        all.insert(v);
    }
    for v in 0..n {
        let mut mask = all.clone();
        mask.remove(v);
        for &w in g.neighbors(v) {
            mask.remove(w);
        }
        comp_nbr.push(mask);
    }

    let mut out: Vec<VertexSet> = Vec::new();
    let mut r = BitSet::empty(n);
    bron_kerbosch(&comp_nbr, &mut r, all.clone(), BitSet::empty(n), &mut out, cap)?;
    CoveringFamily::new(g, out, k, true)
}

fn bron_kerbosch(
    comp_nbr: &[BitSet],
    r: &mut BitSet,
    p: BitSet,
    x: BitSet,
    out: &mut Vec<VertexSet>,
    cap: u64,
) -> Result<()> {
    if p.is_empty() && x.is_empty() {
        if out.len() as u64 >= cap {
            return Err(Error::resource("covering family size", cap));
        }
        out.push(r.to_vertex_set());
        return Ok(());
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| p.and_count(&comp_nbr[u]))
        .expect("p or x nonempty");
    let candidates: Vec<usize> = p.minus(&comp_nbr[pivot]).iter().collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        r.insert(v);
        bron_kerbosch(comp_nbr, r, p.and(&comp_nbr[v]), x.and(&comp_nbr[v]), out, cap)?;
        r.remove(v);
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// Randomized construction for `d`-degenerate graphs. Each round marks each
/// vertex independently with probability `1/(k(d+1))`, then scans a
/// degeneracy order and discards any marked vertex with a marked neighbor
/// later in the order; the survivors form an independent set. Coverage is
/// probabilistic; pair with [`verify_cover`] or use
/// [`sampled_family_verified`].
pub fn sampled_family(g: &Graph, k: usize, d: usize, rounds: u64, seed: u64) -> Result<CoveringFamily> {
    if k == 0 {
        return Err(Error::invalid_input("k must be positive"));
    }
    let order = g.degeneracy_order();
    if d < order.degeneracy {
        return Err(Error::InvalidInput(format!(
            "d = {d} is below the graph's degeneracy {}",
            order.degeneracy
        )));
    }
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.order.iter().enumerate() {
        pos[v] = i;
    }
    let p = 1.0 / (k as f64 * (d as f64 + 1.0));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut distinct: BTreeSet<VertexSet> = BTreeSet::new();
    for _ in 0..rounds {
        let marked: Vec<bool> = (0..n).map(|_| rng.gen_bool(p)).collect();
        let survivors: Vec<usize> = (0..n)
            .filter(|&v| {
                marked[v] && !g.neighbors(v).iter().any(|&w| marked[w] && pos[w] > pos[v])
            })
            .collect();
        distinct.insert(VertexSet::from_sorted_unchecked(survivors));
    }
    CoveringFamily::new(g, distinct.into_iter().collect(), k, false)
}

/// Sample-then-verify loop: keeps adding sampled rounds until the family
/// passes [`verify_cover`], or the round cap is exhausted.
pub fn sampled_family_verified(
    g: &Graph,
    k: usize,
    d: usize,
    seed: u64,
    round_cap: u64,
    enum_cap: u64,
) -> Result<CoveringFamily> {
    let mut rounds = 16u64.min(round_cap.max(1));
    loop {
        let fam = sampled_family(g, k, d, rounds, seed)?;
        match verify_cover(g, k, &fam, enum_cap)? {
            CoverCheck::Ok => {
                return Ok(CoveringFamily { verified: true, ..fam });
            }
            CoverCheck::Missing(_) => {
                if rounds >= round_cap {
                    return Err(Error::resource("sampled family rounds", round_cap));
                }
                rounds = (rounds * 2).min(round_cap);
            }
        }
    }
}

/// Covering family for a graph with a modulator whose deletion leaves a
/// `d`-degenerate graph. For every independent subset `A` of the modulator,
/// an inner family is built on the degenerate part minus `N[A]` and each
/// member is unioned with `A`: any independent set decomposes as
/// `(I ∩ modulator) ∪ rest` with `rest` avoiding `N[I ∩ modulator]`, so the
/// result covers `(g, k)` whenever the inner construction covers.
pub fn modulator_family(
    g: &Graph,
    modulator: &VertexSet,
    k: usize,
    d: usize,
    inner: FamilyMode,
) -> Result<CoveringFamily> {
    modulator.check_range(g.vertex_count())?;
    if modulator.len() > 24 {
        return Err(Error::resource("modulator subset enumeration", 1 << 24));
    }
    let mod_vec: Vec<usize> = modulator.iter().copied().collect();
    let all: VertexSet = (0..g.vertex_count()).collect();
    let outside = all.difference(modulator);

    let mut members: Vec<VertexSet> = Vec::new();
    let mut inner_verified = true;
    for mask in 0u64..(1u64 << mod_vec.len()) {
        let a: VertexSet = mod_vec
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if !g.is_independent(&a)? {
            continue;
        }
        let keep = outside.difference(&g.closed_neighborhood(&a)?);
        let (inner_graph, to_old) = g.induced_subgraph(&keep)?;
        let inner_fam = match inner {
            FamilyMode::Exact => exact_family(&inner_graph, k, DEFAULT_FAMILY_CAP)?,
            FamilyMode::Sampled { rounds, seed } => {
                let fam = sampled_family(&inner_graph, k, d, rounds, seed.wrapping_add(mask))?;
                inner_verified = false;
                fam
            }
            FamilyMode::SampledVerified { seed } => sampled_family_verified(
                &inner_graph,
                k,
                d,
                seed.wrapping_add(mask),
                DEFAULT_VERIFIED_ROUND_CAP,
                DEFAULT_ENUMERATION_CAP,
            )?,
        };
        for set in inner_fam.sets() {
            let lifted: VertexSet = set.iter().map(|&v| to_old[v]).collect();
            members.push(lifted.union(&a));
        }
        if inner_fam.is_empty() {
            // empty inner graph still contributes A itself
            members.push(a);
        }
    }
    CoveringFamily::new(g, members, k, inner_verified)
}

/// Outcome of a covering check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverCheck {
    Ok,
    /// A smallest independent set not contained in any family member.
    Missing(VertexSet),
}

/// Checks the covering property by enumerating independent sets of size at
/// most `k` in increasing size (branching on the lowest-id vertex first),
/// so the returned witness is a smallest uncovered set.
pub fn verify_cover(g: &Graph, k: usize, fam: &CoveringFamily, cap: u64) -> Result<CoverCheck> {
    let n = g.vertex_count();
    let members: Vec<BitSet> = fam.sets().iter().map(|s| BitSet::from_vertex_set(n, s)).collect();
    let mut enumerated = 0u64;
    for size in 0..=k {
        let mut stack: Vec<usize> = Vec::with_capacity(size);
        if let Some(missing) =
            enumerate_layer(g, &members, size, 0, &mut stack, &mut enumerated, cap)?
        {
            return Ok(CoverCheck::Missing(missing));
        }
    }
    Ok(CoverCheck::Ok)
}

fn enumerate_layer(
    g: &Graph,
    members: &[BitSet],
    size: usize,
    from: usize,
    stack: &mut Vec<usize>,
    enumerated: &mut u64,
    cap: u64,
) -> Result<Option<VertexSet>> {
    if stack.len() == size {
        *enumerated += 1;
        if *enumerated > cap {
            return Err(Error::resource("independent set enumeration", cap));
        }
        let set = BitSet::from_slice(g.vertex_count(), stack);
        if !members.iter().any(|m| set.is_subset(m)) {
            return Ok(Some(VertexSet::new(stack.clone())));
        }
        return Ok(None);
    }
    for v in from..g.vertex_count() {
        if stack.iter().any(|&u| g.has_edge(u, v)) {
            continue;
        }
        stack.push(v);
        let found = enumerate_layer(g, members, size, v + 1, stack, enumerated, cap)?;
        stack.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ids: &[usize]) -> VertexSet {
        VertexSet::new(ids.to_vec())
    }

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn exact_family_of_c4() {
        let fam = exact_family(&c4(), 2, DEFAULT_FAMILY_CAP).unwrap();
        assert_eq!(fam.sets(), &[vs(&[0, 2]), vs(&[1, 3])]);
        assert!(fam.verified);
    }

    #[test]
    fn exact_family_of_star() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let fam = exact_family(&g, 2, DEFAULT_FAMILY_CAP).unwrap();
        assert_eq!(fam.sets(), &[vs(&[0]), vs(&[1, 2, 3])]);
    }

    #[test]
    fn exact_family_of_edgeless() {
        let g = Graph::empty(3);
        let fam = exact_family(&g, 1, DEFAULT_FAMILY_CAP).unwrap();
        assert_eq!(fam.sets(), &[vs(&[0, 1, 2])]);
    }

    #[test]
    fn exact_family_cap() {
        // a perfect matching on 2m vertices has 2^m maximal independent sets
        let edges: Vec<_> = (0..8).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::new(16, &edges).unwrap();
        assert!(matches!(
            exact_family(&g, 2, 100),
            Err(Error::ResourceExceeded { .. })
        ));
    }

    #[test]
    fn verify_cover_accepts_c4_family() {
        let g = c4();
        let fam = CoveringFamily::new(&g, vec![vs(&[0, 2]), vs(&[1, 3])], 2, false).unwrap();
        assert_eq!(verify_cover(&g, 2, &fam, 10_000).unwrap(), CoverCheck::Ok);
    }

    #[test]
    fn verify_cover_reports_smallest_missing() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let fam = CoveringFamily::new(&g, vec![vs(&[0, 2])], 1, false).unwrap();
        assert_eq!(
            verify_cover(&g, 1, &fam, 10_000).unwrap(),
            CoverCheck::Missing(vs(&[1]))
        );
    }

    #[test]
    fn empty_family_misses_empty_set() {
        let g = Graph::empty(1);
        let fam = CoveringFamily::new(&g, vec![], 1, false).unwrap();
        assert_eq!(
            verify_cover(&g, 1, &fam, 10_000).unwrap(),
            CoverCheck::Missing(VertexSet::empty())
        );
    }

    #[test]
    fn sampled_zero_rounds_is_empty() {
        let g = Graph::empty(3);
        let fam = sampled_family(&g, 1, 0, 0, 7).unwrap();
        assert!(fam.is_empty());
    }

    #[test]
    fn sampled_on_edgeless_keeps_whole_draw() {
        // no neighbors exist, so pruning never discards a marked vertex;
        // every member must equal its round's draw and the family is
        // independent by construction
        let g = Graph::empty(6);
        let fam = sampled_family(&g, 1, 0, 50, 3).unwrap();
        for s in fam.sets() {
            assert!(g.is_independent(s).unwrap());
        }
    }

    #[test]
    fn sampled_is_deterministic_in_seed() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let a = sampled_family(&g, 2, 1, 40, 11).unwrap();
        let b = sampled_family(&g, 2, 1, 40, 11).unwrap();
        assert_eq!(a.sets(), b.sets());
    }

    #[test]
    fn sampled_rejects_d_below_degeneracy() {
        let g = c4();
        assert!(sampled_family(&g, 2, 1, 5, 0).is_err());
    }

    #[test]
    fn sampled_verified_covers_p3() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let fam = sampled_family_verified(&g, 1, 1, 5, 100_000, 100_000).unwrap();
        assert!(fam.verified);
        assert_eq!(verify_cover(&g, 1, &fam, 10_000).unwrap(), CoverCheck::Ok);
    }

    #[test]
    fn modulator_family_on_single_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let fam = modulator_family(&g, &vs(&[0]), 2, 0, FamilyMode::Exact).unwrap();
        assert_eq!(fam.sets(), &[vs(&[0]), vs(&[1])]);
        assert_eq!(verify_cover(&g, 2, &fam, 10_000).unwrap(), CoverCheck::Ok);
    }

    #[test]
    fn modulator_empty_matches_inner_family() {
        let g = c4();
        let fam = modulator_family(&g, &VertexSet::empty(), 2, 2, FamilyMode::Exact).unwrap();
        let inner = exact_family(&g, 2, DEFAULT_FAMILY_CAP).unwrap();
        assert_eq!(fam.sets(), inner.sets());
    }

    #[test]
    fn modulator_whole_graph_gives_all_independent_subsets() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let all: VertexSet = vs(&[0, 1]);
        let fam = modulator_family(&g, &all, 2, 0, FamilyMode::Exact).unwrap();
        assert_eq!(fam.sets(), &[VertexSet::empty(), vs(&[0]), vs(&[1])]);
        assert_eq!(verify_cover(&g, 2, &fam, 10_000).unwrap(), CoverCheck::Ok);
    }

    #[test]
    fn modulator_family_with_sampled_inner() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let m = vs(&[0]);
        let raw = modulator_family(&g, &m, 2, 2, FamilyMode::Sampled { rounds: 64, seed: 1 }).unwrap();
        assert!(!raw.verified);
        let fam = modulator_family(&g, &m, 2, 2, FamilyMode::SampledVerified { seed: 1 }).unwrap();
        assert!(fam.verified);
        assert_eq!(verify_cover(&g, 2, &fam, 100_000).unwrap(), CoverCheck::Ok);
    }

    #[test]
    fn exact_family_covers_every_k_on_small_graphs() {
        use crate::gen::{random_graph, rng_from};
        let mut rng = rng_from(0xE8);
        for trial in 0..15 {
            let n = 6 + trial % 7; // up to 12 vertices
            let g = random_graph(n, 0.3, &mut rng);
            for k in 1..=4 {
                let fam = exact_family(&g, k, DEFAULT_FAMILY_CAP).unwrap();
                assert_eq!(verify_cover(&g, k, &fam, 1_000_000).unwrap(), CoverCheck::Ok);
            }
        }
    }

    #[test]
    fn sampled_verified_terminates_on_degenerate_twelve_vertex_graphs() {
        use crate::gen::{random_degenerate_graph, rng_from};
        let mut rng = rng_from(0x5A);
        for trial in 0..10 {
            let g = random_degenerate_graph(12, 2, &mut rng);
            let k = 1 + trial % 3;
            let fam = sampled_family_verified(&g, k, 2, trial as u64, 1 << 22, 1_000_000).unwrap();
            assert!(fam.verified);
        }
    }

    #[test]
    fn prune_small_drops_undersized_members() {
        let g = Graph::empty(4);
        let fam = CoveringFamily::new(&g, vec![vs(&[0]), vs(&[1, 3])], 2, false).unwrap();
        assert_eq!(fam.prune_small(2).sets(), &[vs(&[1, 3])]);
        let fam2 = CoveringFamily::new(&g, vec![vs(&[0, 2]), vs(&[1, 3])], 2, false).unwrap();
        assert_eq!(fam2.prune_small(2).sets(), fam2.sets());
        let empty = CoveringFamily::new(&g, vec![], 2, false).unwrap();
        assert!(empty.prune_small(2).is_empty());
    }
}
