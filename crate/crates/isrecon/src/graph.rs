//! Undirected simple graphs with dense integer vertex ids, plus the
//! degeneracy machinery every solver in this crate leans on.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Builds a set from arbitrary ids, sorting and deduplicating.
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    /// `ids` must already be strictly increasing.
    pub fn from_sorted_unchecked(ids: Vec<usize>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet(ids)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// All members valid for a graph on `n` vertices. Sets are sorted, so
    /// checking the last element suffices.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.max() {
            Some(v) if v >= n => Err(Error::InvalidVertex { vertex: v, n }),
            _ => Ok(()),
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        out.sort_unstable();
        out.dedup();
        VertexSet(out)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().filter(|v| other.contains(**v)).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().filter(|v| !other.contains(**v)).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// The two one-sided differences between consecutive configurations:
    /// `(self \ other, other \ self)`.
    pub fn exchanged(&self, other: &VertexSet) -> (VertexSet, VertexSet) {
        (self.difference(other), other.difference(self))
    }

    pub fn with(&self, v: usize) -> VertexSet {
        if self.contains(v) {
            self.clone()
        } else {
            let mut out = self.0.clone();
            let pos = out.partition_point(|&x| x < v);
            out.insert(pos, v);
            VertexSet(out)
        }
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet(self.0.iter().filter(|&&x| x != v).copied().collect())
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Result of the minimum-degree removal process: `order[i]` is the vertex
/// removed at step `i`, and every vertex has at most `degeneracy` neighbors
/// later in the order.
#[derive(Debug, Clone)]
pub struct DegeneracyOrder {
    pub degeneracy: usize,
    pub order: Vec<usize>,
}

/// Simple undirected graph on vertices `0..n`, adjacency kept sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Self-loops are
    /// rejected; duplicate edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True iff no edge of the graph has both endpoints in `s`.
    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        s.check_range(self.vertex_count())?;
        for &u in s.iter() {
            for &v in &self.adj[u] {
                if v > u && s.contains(v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Open neighborhood `N(s)`: vertices adjacent to `s` but not in it.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        s.check_range(self.vertex_count())?;
        let mut out: Vec<usize> = s
            .iter()
            .flat_map(|&u| self.adj[u].iter().copied())
            .filter(|v| !s.contains(*v))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(VertexSet(out))
    }

    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        Ok(self.neighborhood(s)?.union(s))
    }

    /// Degeneracy and a removal order witnessing it, computed by repeatedly
    /// deleting a minimum-degree vertex. Ties break on the smallest id so
    /// orderings are reproducible across runs.
    pub fn degeneracy_order(&self) -> DegeneracyOrder {
        let n = self.vertex_count();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .expect("vertex left to remove");
            degeneracy = degeneracy.max(deg[v]);
            removed[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        DegeneracyOrder { degeneracy, order }
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy_order().degeneracy
    }

    /// Induced subgraph on `keep`, relabeled to `0..keep.len()`. Returns the
    /// subgraph together with the new-id → old-id map.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        keep.check_range(self.vertex_count())?;
        let to_old: Vec<usize> = keep.iter().copied().collect();
        let mut to_new = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in to_old.iter().enumerate() {
            to_new[old] = new;
        }
        let mut adj = vec![Vec::new(); to_old.len()];
        for (new, &old) in to_old.iter().enumerate() {
            for &w in &self.adj[old] {
                if to_new[w] != usize::MAX {
                    adj[new].push(to_new[w]);
                }
            }
            adj[new].sort_unstable();
        }
        Ok((Graph { adj }, to_old))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count())
    }
}
