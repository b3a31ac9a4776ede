use alloc::vec;
use alloc::vec::Vec;

use super::{is_block_graph, Graph, GraphError, Vertex};

/// Vertex cap for exhaustive path search on graphs that are not block
/// graphs.
pub const DEFAULT_PATH_VERTEX_CAP: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Simple,
    Induced,
}

/// All maximum-length paths of the requested kind, one per reversal class
/// (stored with `first <= last`), sorted.
///
/// Trees, and block graphs for induced paths, are handled exactly in
/// polynomial time: there every induced path is the unique geodesic between
/// its ends. Everything else goes through exhaustive backtracking and is
/// refused above [`DEFAULT_PATH_VERTEX_CAP`] vertices.
pub fn longest_paths(g: &Graph, kind: PathKind) -> Result<Vec<Vec<Vertex>>, GraphError> {
    longest_paths_capped(g, kind, DEFAULT_PATH_VERTEX_CAP)
}

pub fn longest_paths_capped(
    g: &Graph,
    kind: PathKind,
    cap: usize,
) -> Result<Vec<Vec<Vertex>>, GraphError> {
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let geodesic = g.edge_count() + g.components().len() == g.n()
        || (kind == PathKind::Induced && is_block_graph(g));
    if geodesic {
        return Ok(longest_geodesics(g));
    }
    if g.n() > cap {
        return Err(GraphError::SizeCap { n: g.n(), cap });
    }
    let mut search = Search {
        g,
        kind,
        best: 0,
        found: Vec::new(),
        on_path: vec![false; g.n()],
        path: Vec::with_capacity(g.n()),
    };
    for s in g.vertices() {
        search.on_path[s] = true;
        search.path.push(s);
        search.extend();
        search.path.pop();
        search.on_path[s] = false;
    }
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found)
}

/// Length (in edges) of a longest induced path.
pub fn longest_induced_path_length(g: &Graph) -> Result<usize, GraphError> {
    Ok(longest_paths(g, PathKind::Induced)?
        .first()
        .map_or(0, |p| p.len() - 1))
}

struct Search<'a> {
    g: &'a Graph,
    kind: PathKind,
    best: usize,
    found: Vec<Vec<Vertex>>,
    on_path: Vec<bool>,
    path: Vec<Vertex>,
}

impl Search<'_> {
    fn extend(&mut self) {
        let len = self.path.len() - 1;
        if len > self.best {
            self.best = len;
            self.found.clear();
        }
        if len == self.best && self.path[0] <= self.path[len] {
            self.found.push(self.path.clone());
        }
        let last = self.path[len];
        for i in 0..self.g.degree(last) {
            let w = self.g.neighbors(last)[i];
            if self.on_path[w] {
                continue;
            }
            if self.kind == PathKind::Induced
                && self.path[..len].iter().any(|&p| self.g.has_edge(p, w))
            {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(w);
            self.extend();
            self.path.pop();
            self.on_path[w] = false;
        }
    }
}

fn longest_geodesics(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let dist: Vec<Vec<usize>> = g.vertices().map(|s| g.distances_from(s)).collect();
    let mut best = 0;
    for u in 0..n {
        for v in u..n {
            if dist[u][v] != usize::MAX {
                best = best.max(dist[u][v]);
            }
        }
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in u..n {
            if dist[u][v] == best {
                // walk from u towards v along decreasing distance to v
                let mut p = vec![u];
                let mut cur = u;
                while cur != v {
                    cur = *g
                        .neighbors(cur)
                        .iter()
                        .find(|&&w| dist[w][v] + 1 == dist[cur][v])
                        .expect("geodesic step exists");
                    p.push(cur);
                }
                out.push(p);
            }
        }
    }
    out.sort();
    out
}
