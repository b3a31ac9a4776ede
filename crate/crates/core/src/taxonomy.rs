//! Caterpillars, lobsters and the decompositions the regularity bounds use.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{
    blocks_and_cut_vertices, contains_subtree, is_block_graph, longest_paths, Graph, GraphError,
    PathKind, Vertex,
};

/// Class membership of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeProfile {
    pub is_tree: bool,
    /// `L(T)`: degree-one vertices, sorted.
    pub leaves: Vec<Vertex>,
    /// `m`, the number of non-leaf vertices (0 for `n <= 2`).
    pub internal_count: usize,
    pub is_caterpillar: bool,
    pub is_lobster: bool,
    pub is_pure_lobster: bool,
    pub contains_jewel: bool,
}

/// A star `K_{1,k}` (`k >= 2`) hanging off the spine: one of its leaves is
/// the spine vertex `attachment`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Limb {
    pub attachment: Vertex,
    pub center: Vertex,
    /// The star's other leaves, sorted.
    pub leaves: Vec<Vertex>,
}

impl Limb {
    /// A limb is pure when it is `K_{1,2}`.
    pub fn is_pure(&self) -> bool {
        self.leaves.len() == 1
    }
}

/// Whiskers and limbs of a lobster with respect to one spine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineDecomposition {
    pub spine: Vec<Vertex>,
    /// `ℓ`, the spine length in edges.
    pub ell: usize,
    /// `(spine vertex, leaf)` pendant edges.
    pub whiskers: Vec<(Vertex, Vertex)>,
    pub limbs: Vec<Limb>,
    pub pure_flags: Vec<bool>,
}

impl SpineDecomposition {
    /// Number of whiskers.
    pub fn r(&self) -> usize {
        self.whiskers.len()
    }

    /// Number of limbs.
    pub fn t(&self) -> usize {
        self.limbs.len()
    }

    pub fn all_limbs_pure(&self) -> bool {
        self.pure_flags.iter().all(|&p| p)
    }
}

fn strip_leaves(g: &Graph) -> Graph {
    let keep: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) != 1).collect();
    g.induced_subgraph(&keep)
}

fn is_path_graph(g: &Graph) -> bool {
    g.is_connected() && g.edge_count() + 1 == g.n() && g.vertices().all(|v| g.degree(v) <= 2)
}

fn is_caterpillar_tree(g: &Graph) -> bool {
    let core = strip_leaves(g);
    core.n() == 0 || is_path_graph(&core)
}

fn is_lobster_tree(g: &Graph) -> bool {
    let core = strip_leaves(g);
    core.n() == 0 || is_caterpillar_tree(&core)
}

/// `T` is a tree and `T - L(T)` is empty or a path.
pub fn is_caterpillar(g: &Graph) -> bool {
    g.is_tree() && is_caterpillar_tree(g)
}

/// `T` is a tree and `T - L(T)` is a caterpillar.
pub fn is_lobster(g: &Graph) -> bool {
    g.is_tree() && is_lobster_tree(g)
}

/// A lobster with some spine carrying no whiskers and only pure limbs.
pub fn is_pure_lobster(g: &Graph) -> bool {
    is_lobster(g)
        && spine_decompositions(g)
            .map(|ds| ds.iter().any(|d| d.r() == 0 && d.all_limbs_pure()))
            .unwrap_or(false)
}

/// The 10-vertex tree: center `0` joined to `1, 2, 3`; vertex `b` in
/// `1..=3` carries the leaves `2b + 2` and `2b + 3`.
pub fn build_jewel() -> Graph {
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    for b in 1..=3 {
        edges.push((b, 2 * b + 2));
        edges.push((b, 2 * b + 3));
    }
    Graph::from_edges(10, &edges).expect("static edge list")
}

pub fn classify_tree(g: &Graph) -> Result<TreeProfile, GraphError> {
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    let leaves = g.leaves();
    let internal_count = if g.n() <= 2 { 0 } else { g.n() - leaves.len() };
    let is_caterpillar = is_caterpillar_tree(g);
    let is_lobster = is_lobster_tree(g);
    let is_pure_lobster = is_lobster && is_pure_lobster(g);
    Ok(TreeProfile {
        is_tree: true,
        leaves,
        internal_count,
        is_caterpillar,
        is_lobster,
        is_pure_lobster,
        contains_jewel: contains_subtree(g, &build_jewel())?,
    })
}

/// One decomposition per longest path of the lobster, ordered by spine.
pub fn spine_decompositions(g: &Graph) -> Result<Vec<SpineDecomposition>, GraphError> {
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    if !is_lobster_tree(g) {
        return Err(GraphError::NotALobster);
    }
    longest_paths(g, PathKind::Simple)?
        .into_iter()
        .map(|spine| decompose_along(g, spine))
        .collect()
}

fn decompose_along(g: &Graph, spine: Vec<Vertex>) -> Result<SpineDecomposition, GraphError> {
    let mut on_spine = vec![false; g.n()];
    for &v in &spine {
        on_spine[v] = true;
    }
    let mut whiskers = Vec::new();
    let mut limbs = Vec::new();
    for (pos, &v) in spine.iter().enumerate() {
        for &u in g.neighbors(v).iter().filter(|&&u| !on_spine[u]) {
            // an end of a longest path has no off-spine neighbour
            debug_assert!(pos != 0 && pos + 1 != spine.len());
            if g.degree(u) == 1 {
                whiskers.push((v, u));
                continue;
            }
            let leaves: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&w| w != v).collect();
            if leaves.iter().any(|&w| g.degree(w) != 1) {
                return Err(GraphError::NotALobster);
            }
            limbs.push(Limb {
                attachment: v,
                center: u,
                leaves,
            });
        }
    }
    let pure_flags = limbs.iter().map(Limb::is_pure).collect();
    Ok(SpineDecomposition {
        ell: spine.len() - 1,
        spine,
        whiskers,
        limbs,
        pure_flags,
    })
}

/// Appends a new pendant vertex to the leaf of every whisker. New vertices
/// are numbered from `g.n()` in whisker order.
pub fn extend_whiskers_to_limbs(g: &Graph, spine: &SpineDecomposition) -> Graph {
    let mut out = g.clone();
    for &(_, leaf) in &spine.whiskers {
        let w = out.add_vertex();
        out.add_edge(leaf, w).expect("fresh vertex");
    }
    out
}

/// A part of a path-clique decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCliqueDecomposition {
    pub path: Vec<Vertex>,
    /// Maximal cliques with at least three vertices, each sorted.
    pub cliques: Vec<Vec<Vertex>>,
    pub limbs: Vec<Limb>,
    pub validity: PathCliqueValidity,
}

impl PathCliqueDecomposition {
    pub fn ell(&self) -> usize {
        self.path.len() - 1
    }

    pub fn r(&self) -> usize {
        self.cliques.len()
    }

    pub fn t(&self) -> usize {
        self.limbs.len()
    }
}

/// The hypotheses of the path-clique bound, checked independently of the
/// search that produced the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathCliqueValidity {
    /// (1): every clique has at least three vertices.
    pub cliques_large: bool,
    /// (2a): two distinct parts meet in at most one vertex, lying on `P`.
    pub parts_meet_on_path: bool,
    /// (2b): each part meets `P` in exactly one vertex.
    pub parts_touch_path_once: bool,
    /// Limbs hang from interior path vertices. Without this the bound fails
    /// already for `P_3` read as one vertex plus a limb.
    pub limbs_interior: bool,
    /// The path and the parts cover every edge of the graph.
    pub covers_graph: bool,
}

impl PathCliqueValidity {
    pub fn all(&self) -> bool {
        self.cliques_large
            && self.parts_meet_on_path
            && self.parts_touch_path_once
            && self.limbs_interior
            && self.covers_graph
    }
}

pub const PATHCLIQUE_VERTEX_CAP: usize = 256;

/// Best decomposition `G = P ∪ C_1 ∪ … ∪ C_r ∪ L_1 ∪ … ∪ L_t` of a connected
/// block graph, minimising `ℓ + r + t`; `None` if no path works.
///
/// In a block graph the only induced path between two vertices is the
/// geodesic, and the path of a decomposition must be induced, so the
/// candidates are the geodesics between all pairs (including single
/// vertices). For each, every component of `G - P` has to be a clique or a
/// star hanging from one interior path vertex.
pub fn pathclique_decompose(g: &Graph) -> Result<Option<PathCliqueDecomposition>, GraphError> {
    if g.n() > PATHCLIQUE_VERTEX_CAP {
        return Err(GraphError::SizeCap {
            n: g.n(),
            cap: PATHCLIQUE_VERTEX_CAP,
        });
    }
    g.require_connected()?;
    if !is_block_graph(g) {
        return Err(GraphError::NotABlockGraph);
    }
    let bridges = bridge_matrix(g)?;
    let mut best: Option<PathCliqueDecomposition> = None;
    for s in g.vertices() {
        let parent = bfs_parents(g, s);
        for t in s..g.n() {
            let mut path = vec![t];
            while *path.last().unwrap() != s {
                path.push(parent[*path.last().unwrap()]);
            }
            path.reverse();
            if !path.windows(2).all(|e| bridges[e[0]][e[1]]) {
                continue;
            }
            if let Some(d) = decompose_with_path(g, path) {
                let score = d.ell() + d.r() + d.t();
                if best
                    .as_ref()
                    .is_none_or(|b| score < b.ell() + b.r() + b.t())
                {
                    best = Some(d);
                }
            }
        }
    }
    Ok(best)
}

fn bridge_matrix(g: &Graph) -> Result<Vec<Vec<bool>>, GraphError> {
    let dec = blocks_and_cut_vertices(g)?;
    let mut m = vec![vec![false; g.n()]; g.n()];
    for b in dec.blocks.iter().filter(|b| b.len() == 2) {
        m[b[0]][b[1]] = true;
        m[b[1]][b[0]] = true;
    }
    Ok(m)
}

fn bfs_parents(g: &Graph, s: Vertex) -> Vec<Vertex> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[s] = s;
    let mut queue = vec![s];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push(w);
            }
        }
    }
    parent
}

fn decompose_with_path(g: &Graph, path: Vec<Vertex>) -> Option<PathCliqueDecomposition> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in path.iter().enumerate() {
        pos[v] = i;
    }
    let off: Vec<Vertex> = g.vertices().filter(|&v| pos[v] == usize::MAX).collect();
    let rest = g.induced_subgraph(&off);
    let mut cliques = Vec::new();
    let mut limbs = Vec::new();
    for comp in rest.components() {
        let part: Vec<Vertex> = comp.iter().map(|&i| off[i]).collect();
        let mut anchors: Vec<Vertex> = part
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().copied())
            .filter(|&w| pos[w] != usize::MAX)
            .collect();
        anchors.sort_unstable();
        anchors.dedup();
        if anchors.len() != 1 {
            return None;
        }
        let v = anchors[0];
        let mut whole = part.clone();
        whole.push(v);
        whole.sort_unstable();
        if whole.len() >= 3 && g.is_clique(&whole) {
            cliques.push(whole);
            continue;
        }
        // a star K_{1,k}, k >= 2, with v as one of its leaves
        let attached: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|w| part.contains(w)).collect();
        if attached.len() != 1 || part.len() < 2 {
            return None;
        }
        let center = attached[0];
        let mut leaves: Vec<Vertex> = part.iter().copied().filter(|&w| w != center).collect();
        leaves.sort_unstable();
        let star = g.degree(center) == part.len()
            && leaves.iter().all(|&w| g.degree(w) == 1 && g.has_edge(w, center));
        if !star {
            return None;
        }
        limbs.push(Limb {
            attachment: v,
            center,
            leaves,
        });
    }
    // the path must be induced
    let path_edges = path.len() - 1;
    let induced_edges = g.induced_subgraph(&path).edge_count();
    if induced_edges != path_edges {
        return None;
    }
    let validity = check_validity(g, &path, &cliques, &limbs);
    if !validity.all() {
        return None;
    }
    Some(PathCliqueDecomposition {
        path,
        cliques,
        limbs,
        validity,
    })
}

fn check_validity(
    g: &Graph,
    path: &[Vertex],
    cliques: &[Vec<Vertex>],
    limbs: &[Limb],
) -> PathCliqueValidity {
    let on_path = |v: &Vertex| path.contains(v);
    let mut parts: Vec<Vec<Vertex>> = cliques.to_vec();
    for l in limbs {
        let mut p = vec![l.attachment, l.center];
        p.extend(&l.leaves);
        p.sort_unstable();
        parts.push(p);
    }
    let mut parts_meet_on_path = true;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let common: Vec<Vertex> = parts[i].iter().copied().filter(|v| parts[j].contains(v)).collect();
            if common.len() > 1 || !common.iter().all(on_path) {
                parts_meet_on_path = false;
            }
        }
    }
    let parts_touch_path_once = parts
        .iter()
        .all(|p| p.iter().filter(|v| on_path(v)).count() == 1);
    let last = path.len() - 1;
    let limbs_interior = limbs.iter().all(|l| {
        let i = path.iter().position(|&v| v == l.attachment);
        matches!(i, Some(i) if i != 0 && i != last)
    });
    let mut covered = 0usize;
    covered += path.len() - 1;
    covered += cliques.iter().map(|c| c.len() * (c.len() - 1) / 2).sum::<usize>();
    covered += limbs.iter().map(|l| 1 + l.leaves.len()).sum::<usize>();
    PathCliqueValidity {
        cliques_large: cliques.iter().all(|c| c.len() >= 3 && g.is_clique(c)),
        parts_meet_on_path,
        parts_touch_path_once,
        limbs_interior,
        covers_graph: covered == g.edge_count(),
    }
}
