//! Simple undirected graphs with bitset adjacency, named families, tensor
//! products, disjoint unions and graph6 / edge-list I/O.

mod bitset;
mod generate;
pub mod io;
mod ops;
mod transitive;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bitset::{Iter, VertexSet};
pub use generate::{generate, Family};
pub use ops::{disjoint_union, neighborhood, tensor_power, tensor_product};
pub use transitive::{find_automorphism, is_vertex_transitive, Transitivity};

/// Where a graph came from. Generators, products and unions set this; parsed
/// graphs are [`FamilyTag::Raw`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum FamilyTag {
    Raw,
    Cycle { len: usize },
    Path { len: usize },
    Complete { k: usize },
    CompleteBipartite { m: usize, n: usize },
    Star { leaves: usize },
    Kneser { n: usize, k: usize },
    Circular { n: usize, d: usize },
    Petersen,
    /// Tensor product of the listed factors, flattened.
    Product { factors: Vec<FamilyTag> },
    /// Disjoint union; part `i` occupies a contiguous vertex range of `sizes[i]`.
    Union { parts: Vec<FamilyTag>, sizes: Vec<usize> },
}

impl FamilyTag {
    /// The generator family this tag names, if any.
    pub fn family(&self) -> Option<Family> {
        Some(match *self {
            FamilyTag::Cycle { len } => Family::Cycle(len),
            FamilyTag::Path { len } => Family::Path(len),
            FamilyTag::Complete { k } => Family::Complete(k),
            FamilyTag::CompleteBipartite { m, n } => Family::CompleteBipartite(m, n),
            FamilyTag::Star { leaves } => Family::Star(leaves),
            FamilyTag::Kneser { n, k } => Family::Kneser(n, k),
            FamilyTag::Circular { n, d } => Family::Circular(n, d),
            FamilyTag::Petersen => Family::Petersen,
            _ => return None,
        })
    }

    /// True when the tag alone proves vertex-transitivity.
    pub fn is_transitive_by_construction(&self) -> bool {
        match self {
            FamilyTag::Cycle { .. }
            | FamilyTag::Complete { .. }
            | FamilyTag::Kneser { .. }
            | FamilyTag::Circular { .. }
            | FamilyTag::Petersen => true,
            FamilyTag::CompleteBipartite { m, n } => m == n,
            FamilyTag::Product { factors } => {
                !factors.is_empty() && factors.iter().all(|f| f.is_transitive_by_construction())
            }
            _ => false,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, FamilyTag::Cycle { .. })
            || matches!(self, FamilyTag::Circular { n, d } if *d == 1 && *n >= 3)
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, FamilyTag::Complete { .. })
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Raw => write!(f, "raw"),
            FamilyTag::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|t| t.to_string()).collect();
                write!(f, "({})", parts.join(" x "))
            }
            FamilyTag::Union { parts, .. } => {
                let parts: Vec<String> = parts.iter().map(|t| t.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            other => write!(f, "{}", other.family().expect("generator tag")),
        }
    }
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<Vec<usize>>>,
    tag: FamilyTag,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
            labels: None,
            tag: FamilyTag::Raw,
        }
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range
    /// endpoints. Repeated edges collapse.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::ParameterDomain(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::ParameterDomain(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>, tag: FamilyTag) -> Self {
        let g = Graph {
            adj,
            labels: None,
            tag,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).min().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map(|a| a.len())?;
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn tag(&self) -> &FamilyTag {
        &self.tag
    }

    pub fn with_tag(mut self, tag: FamilyTag) -> Self {
        self.tag = tag;
        self
    }

    /// Per-vertex coordinate tuples, present on product graphs.
    pub fn labels(&self) -> Option<&[Vec<usize>]> {
        self.labels.as_deref()
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<Vec<usize>>) {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Graph::from_adjacency(adj, FamilyTag::Raw)
    }

    /// Subgraph induced on `keep`, renumbered in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let index: Vec<usize> = keep.to_vec();
        let m = index.len();
        let mut g = Graph::empty(m);
        for (i, &u) in index.iter().enumerate() {
            for (j, &v) in index.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut unseen = VertexSet::full(n);
        let mut out = Vec::new();
        while let Some(start) = unseen.first() {
            let mut comp = VertexSet::new(n);
            comp.insert(start);
            let mut frontier = comp.clone();
            loop {
                let mut next = VertexSet::new(n);
                for v in &frontier {
                    next.union_with(&self.adj[v]);
                }
                next.difference_with(&comp);
                if next.is_empty() {
                    break;
                }
                comp.union_with(&next);
                frontier = next;
            }
            unseen.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Two-colouring as a left side, when the graph is bipartite.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let n = self.n();
        let mut side = vec![None::<bool>; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(true);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = side[v].unwrap();
                for w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(VertexSet::from_indices(
            n,
            (0..n).filter(|&v| side[v] == Some(true)),
        ))
    }

    /// Checks symmetry, the absence of loops and label length.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        for (v, row) in self.adj.iter().enumerate() {
            if row.universe() != n {
                return Err(Error::UniverseMismatch {
                    expected: n,
                    found: row.universe(),
                });
            }
            if row.contains(v) {
                return Err(Error::Domain(format!("self-loop at {v}")));
            }
            if let Some(u) = row.iter().find(|&u| !self.adj[u].contains(v)) {
                return Err(Error::Domain(format!("edge {v}-{u} is not symmetric")));
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(Error::Domain("label count differs from vertex count".into()));
            }
        }
        Ok(())
    }

    /// Rebuilds the graph from its family tag and compares edge sets.
    /// Raw graphs are trivially consistent.
    pub fn tag_is_consistent(&self) -> bool {
        match &self.tag {
            FamilyTag::Raw => true,
            FamilyTag::Product { .. } | FamilyTag::Union { .. } => match self.rebuild_from_tag() {
                Some(h) => h.adj == self.adj,
                None => false,
            },
            tag => match tag.family().map(|f| generate(&f)) {
                Some(Ok(h)) => h.adj == self.adj,
                _ => false,
            },
        }
    }

    fn rebuild_from_tag(&self) -> Option<Graph> {
        fn build(tag: &FamilyTag) -> Option<Graph> {
            match tag {
                FamilyTag::Raw => None,
                FamilyTag::Product { factors } => {
                    let mut it = factors.iter();
                    let mut acc = build(it.next()?)?;
                    for f in it {
                        acc = tensor_product(&acc, &build(f)?, usize::MAX).ok()?;
                    }
                    Some(acc)
                }
                FamilyTag::Union { parts, sizes } => {
                    let mut acc = Graph::empty(0);
                    for (p, &size) in parts.iter().zip(sizes) {
                        let g = build(p)?;
                        if g.n() != size {
                            return None;
                        }
                        acc = disjoint_union(&acc, &g);
                    }
                    Some(acc)
                }
                t => generate(&t.family()?).ok(),
            }
        }
        build(&self.tag)
    }

    /// The parts recorded by a union tag, each re-tagged with its own tag.
    pub fn union_parts(&self) -> Option<Vec<Graph>> {
        let FamilyTag::Union { parts, sizes } = &self.tag else {
            return None;
        };
        let mut offset = 0;
        let mut out = Vec::with_capacity(parts.len());
        for (tag, &size) in parts.iter().zip(sizes) {
            let keep = VertexSet::from_indices(self.n(), offset..offset + size);
            out.push(self.induced(&keep).with_tag(tag.clone()));
            offset += size;
        }
        Some(out)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("tag", &self.tag)
            .field("edges", &self.edges())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn components_and_bipartition() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        let comps: Vec<Vec<usize>> = g.components().iter().map(|c| c.to_vec()).collect();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3, 4], vec![5]]);
        assert!(g.bipartition().is_none());
        let p = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p.bipartition().unwrap().to_vec(), vec![0, 2]);
    }

    #[test]
    fn complement_of_c5_is_c5() {
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let co = c5.complement();
        assert_eq!(co.edge_count(), 5);
        assert_eq!(co.regular_degree(), Some(2));
    }
}
