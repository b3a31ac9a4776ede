//! Simple undirected graphs and the structural operations the rest of the
//! crate is built on.
//!
//! Vertices are `0..n`. Text formats (see the `bei` crate) use 1-based
//! labels and convert at the boundary.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

mod blocks;
mod cliques;
mod embed;
mod glue;
mod paths;
mod trees;

pub use blocks::{blocks_and_cut_vertices, is_block_graph, BlockDecomposition};
pub use cliques::maximal_cliques;
pub use embed::contains_subtree;
pub use glue::{glue, split, Piece};
pub use paths::{
    longest_induced_path_length, longest_paths, longest_paths_capped, PathKind,
    DEFAULT_PATH_VERTEX_CAP,
};
pub use trees::{
    canonical_tree_code, centers, enumerate_trees, tree_from_code, tree_from_pruefer, TreeCatalogEntry,
    MAX_ENUMERATION_N,
};

/// Vertex index, `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected ({} components)", components.len())]
    Disconnected { components: Vec<Vec<Vertex>> },
    #[error("vertex {0} is not a cut vertex")]
    NotACutVertex(Vertex),
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree is not a lobster")]
    NotALobster,
    #[error("graph is not a block graph")]
    NotABlockGraph,
    #[error("graph has {n} vertices, over the cap of {cap} for this search")]
    SizeCap { n: usize, cap: usize },
    #[error("tree enumeration supports 1 <= n <= {max}, got {n}")]
    EnumerationRange { n: usize, max: usize },
}

/// A simple undirected graph with sorted adjacency lists.
///
/// Equality is labeled equality; use the canonical codes in [`trees`] (or a
/// brute-force canonical form) for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, repeated edges and bad endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph edges are simple")
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges).expect("star edges are simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.n()
    }

    /// True when every pair of `set` is adjacent.
    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        let components = self.components();
        if components.len() > 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(())
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            g.adj[i] = self.adj[v]
                .iter()
                .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                .collect();
            g.adj[i].sort_unstable();
        }
        g
    }

    /// Removes vertex `v`; vertices above it shift down by one.
    pub fn remove_vertex(&self, v: Vertex) -> Graph {
        let keep: Vec<_> = self.vertices().filter(|&w| w != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])
                .expect("a permutation preserves simplicity");
        }
        g
    }

    /// Vertices with at least one neighbour.
    pub fn non_isolated(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) > 0).collect()
    }

    /// Leaves: vertices of degree exactly one.
    pub fn leaves(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    /// Breadth-first distances from `s` (`usize::MAX` when unreachable).
    pub fn distances_from(&self, s: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices whose neighbourhood is a clique (simplicial vertices). An
    /// isolated vertex counts as free.
    pub fn free_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.is_free(v)).collect()
    }

    pub fn is_free(&self, v: Vertex) -> bool {
        self.is_clique(&self.adj[v])
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut g = self.clone();
        g.adj
            .extend(other.adj.iter().map(|nb| nb.iter().map(|&w| w + shift).collect()));
        g
    }
}
