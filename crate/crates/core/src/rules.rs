//! Regularity intervals assembled from structural bounds.
//!
//! Every rule inspects a graph and contributes a lower bound, an upper bound
//! or an exact value for `reg(S/J_G)`. [`apply_all_rules`] intersects all of
//! them and keeps the list of contributions as provenance. Decomposition
//! rules (disjoint union, gluing at free cut vertices, pendant peeling) call
//! back into a memoized [`RuleEngine`] on the smaller pieces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{
    blocks_and_cut_vertices, canonical_tree_code, contains_subtree, is_block_graph,
    longest_induced_path_length, longest_paths, maximal_cliques, Graph, PathKind, Vertex,
};
use crate::taxonomy::{
    build_jewel, is_caterpillar, is_lobster, is_pure_lobster, pathclique_decompose,
    spine_decompositions, PATHCLIQUE_VERTEX_CAP,
};

/// The closed registry of rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Edgeless,
    ComponentSum,
    InducedPath,
    VertexCount,
    CliqueCount,
    TreeInternal,
    JewelInternal,
    LobsterLower,
    LobsterUpper,
    LobsterNoWhisker,
    PureLobster,
    PathClique,
    PathCliqueWeak,
    Caterpillar,
    BlockSum,
    CatLobSum,
    CompletePaths,
    StarPaths,
    GlueSum,
    PendantPeel,
}

impl RuleId {
    pub const ALL: [RuleId; 20] = [
        RuleId::Edgeless,
        RuleId::ComponentSum,
        RuleId::InducedPath,
        RuleId::VertexCount,
        RuleId::CliqueCount,
        RuleId::TreeInternal,
        RuleId::JewelInternal,
        RuleId::LobsterLower,
        RuleId::LobsterUpper,
        RuleId::LobsterNoWhisker,
        RuleId::PureLobster,
        RuleId::PathClique,
        RuleId::PathCliqueWeak,
        RuleId::Caterpillar,
        RuleId::BlockSum,
        RuleId::CatLobSum,
        RuleId::CompletePaths,
        RuleId::StarPaths,
        RuleId::GlueSum,
        RuleId::PendantPeel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Edgeless => "edgeless",
            RuleId::ComponentSum => "component-sum",
            RuleId::InducedPath => "induced-path-lower",
            RuleId::VertexCount => "vertex-count-upper",
            RuleId::CliqueCount => "clique-count-upper",
            RuleId::TreeInternal => "tree-internal-lower",
            RuleId::JewelInternal => "jewel-internal-lower",
            RuleId::LobsterLower => "lobster-lower",
            RuleId::LobsterUpper => "lobster-upper",
            RuleId::LobsterNoWhisker => "lobster-no-whisker",
            RuleId::PureLobster => "pure-lobster",
            RuleId::PathClique => "path-clique-upper",
            RuleId::PathCliqueWeak => "path-clique-upper-weak",
            RuleId::Caterpillar => "caterpillar",
            RuleId::BlockSum => "block-sum",
            RuleId::CatLobSum => "cat-lob-sum",
            RuleId::CompletePaths => "complete-with-paths",
            RuleId::StarPaths => "star-with-paths",
            RuleId::GlueSum => "glue-sum",
            RuleId::PendantPeel => "pendant-peel",
        }
    }

    /// The bound the rule applies, stated as a formula.
    pub fn statement(self) -> &'static str {
        match self {
            RuleId::Edgeless => "reg = 0 when G has no edges",
            RuleId::ComponentSum => "reg(G + H) = reg(G) + reg(H) for a disjoint union",
            RuleId::InducedPath => "reg >= l, the length of a longest induced path",
            RuleId::VertexCount => "reg <= n - 1 for a connected graph on n vertices",
            RuleId::CliqueCount => "reg <= c(G), the number of maximal cliques, for a block graph",
            RuleId::TreeInternal => {
                "reg >= m + 1 for a tree with m internal vertices and at least one edge"
            }
            RuleId::JewelInternal => "reg >= m + 2 for a tree with m internal vertices containing the jewel",
            RuleId::LobsterLower => "reg >= l + t for a lobster with spine length l and t limbs",
            RuleId::LobsterUpper => {
                "reg <= l + t + r + 2 for a lobster with spine length l, t limbs and r whiskers"
            }
            RuleId::LobsterNoWhisker => "reg <= l + t for a lobster whose spine carries no whiskers",
            RuleId::PureLobster => "reg = l + t for a whiskerless lobster with pure limbs",
            RuleId::PathClique => {
                "reg <= l + r + t for a path of length l carrying r cliques and t interior limbs"
            }
            RuleId::PathCliqueWeak => "reg <= l + r + 2t for the same path-clique decomposition",
            RuleId::Caterpillar => "reg = l for a caterpillar whose longest path has length l",
            RuleId::BlockSum => "reg = c(G) for a block graph with no vertex in three maximal cliques",
            RuleId::CatLobSum => {
                "reg = m + 1 for a tree that splits at degree-2 vertices into caterpillars and pure lobsters"
            }
            RuleId::CompletePaths => {
                "reg = 1 + sum r_i for paths of lengths r_i hung at distinct vertices of K_s"
            }
            RuleId::StarPaths => {
                "reg = 2 + sum r_i for paths of lengths r_i hung at distinct leaves of K_{1,k}"
            }
            RuleId::GlueSum => "reg is additive over pieces glued at vertices free in both pieces",
            RuleId::PendantPeel => "a pendant edge at a free vertex raises reg by 1",
        }
    }

    /// Rules taken from earlier literature rather than proved alongside the
    /// others.
    pub fn is_cited(self) -> bool {
        matches!(
            self,
            RuleId::InducedPath
                | RuleId::VertexCount
                | RuleId::CliqueCount
                | RuleId::Caterpillar
                | RuleId::PathCliqueWeak
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for RuleId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        RuleId::ALL.into_iter().find(|r| r.as_str() == s).ok_or(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contribution {
    Lower(usize),
    Upper(usize),
    Exact(usize),
}

impl Contribution {
    pub fn lo(self) -> usize {
        match self {
            Contribution::Lower(k) | Contribution::Exact(k) => k,
            Contribution::Upper(_) => 0,
        }
    }

    pub fn hi(self) -> Option<usize> {
        match self {
            Contribution::Upper(k) | Contribution::Exact(k) => Some(k),
            Contribution::Lower(_) => None,
        }
    }
}

/// A piece handed to a recursive call, with the interval it came back with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub vertices: Vec<Vertex>,
    pub lo: usize,
    pub hi: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleId,
    /// Named invariants the contribution is computed from.
    pub inputs: Vec<(&'static str, usize)>,
    /// Pieces of a decomposition, empty for the other rules.
    pub parts: Vec<Part>,
    pub contribution: Contribution,
}

impl RuleApplication {
    fn new(rule: RuleId, inputs: Vec<(&'static str, usize)>, contribution: Contribution) -> Self {
        RuleApplication {
            rule,
            inputs,
            parts: Vec::new(),
            contribution,
        }
    }

    pub fn anchor(&self) -> &'static str {
        self.rule.statement()
    }

    pub fn input(&self, name: &str) -> Option<usize> {
        self.inputs.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityInterval {
    pub lo: usize,
    /// `None` is `+∞`.
    pub hi: Option<usize>,
    pub exact: bool,
    pub provenance: Vec<RuleApplication>,
}

impl RegularityInterval {
    pub fn contains(&self, reg: usize) -> bool {
        self.lo <= reg && self.hi.is_none_or(|h| reg <= h)
    }

    /// Applications that attain the final lower or upper end.
    pub fn tight_rules(&self) -> Vec<RuleId> {
        let mut out: Vec<RuleId> = self
            .provenance
            .iter()
            .filter(|a| {
                let c = a.contribution;
                (c.lo() == self.lo && !matches!(c, Contribution::Upper(_)))
                    || (c.hi().is_some() && c.hi() == self.hi)
            })
            .map(|a| a.rule)
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RulesError {
    #[error("rules disagree: lower bound {lo} exceeds upper bound {hi}")]
    Inconsistent {
        lo: usize,
        hi: usize,
        provenance: Vec<RuleApplication>,
    },
}

/// General bounds for a connected graph with at least one edge.
pub fn rule_general(g: &Graph) -> Vec<RuleApplication> {
    let mut out = Vec::new();
    if g.edge_count() == 0 || !g.is_connected() {
        return out;
    }
    if let Ok(l) = longest_induced_path_length(g) {
        out.push(RuleApplication::new(
            RuleId::InducedPath,
            vec![("ell", l)],
            Contribution::Lower(l),
        ));
    }
    out.push(RuleApplication::new(
        RuleId::VertexCount,
        vec![("n", g.n())],
        Contribution::Upper(g.n() - 1),
    ));
    if is_block_graph(g) {
        let c = maximal_cliques(g).len();
        out.push(RuleApplication::new(
            RuleId::CliqueCount,
            vec![("c", c)],
            Contribution::Upper(c),
        ));
    }
    out
}

fn internal_count(g: &Graph) -> usize {
    if g.n() <= 2 {
        0
    } else {
        g.vertices().filter(|&v| g.degree(v) > 1).count()
    }
}

pub fn rule_tree_lower(g: &Graph) -> Option<RuleApplication> {
    if !g.is_tree() || g.edge_count() == 0 {
        return None;
    }
    let m = internal_count(g);
    Some(RuleApplication::new(
        RuleId::TreeInternal,
        vec![("m", m)],
        Contribution::Lower(m + 1),
    ))
}

pub fn rule_jewel_lower(g: &Graph) -> Option<RuleApplication> {
    if !g.is_tree() || g.n() < 10 {
        return None;
    }
    if !contains_subtree(g, &build_jewel()).unwrap_or(false) {
        return None;
    }
    let m = internal_count(g);
    Some(RuleApplication::new(
        RuleId::JewelInternal,
        vec![("m", m)],
        Contribution::Lower(m + 2),
    ))
}

/// Lobster bounds, optimized over every spine: the largest `ℓ + t` as the
/// lower bound and the smallest spine-wise upper bound.
pub fn rule_lobster(g: &Graph) -> Vec<RuleApplication> {
    let mut out = Vec::new();
    if g.edge_count() == 0 || !is_lobster(g) {
        return out;
    }
    let Ok(spines) = spine_decompositions(g) else {
        return out;
    };
    let counts = |d: &crate::taxonomy::SpineDecomposition| {
        vec![("ell", d.ell), ("t", d.t()), ("r", d.r())]
    };
    if let Some(d) = spines.iter().max_by_key(|d| d.ell + d.t()) {
        out.push(RuleApplication::new(
            RuleId::LobsterLower,
            counts(d),
            Contribution::Lower(d.ell + d.t()),
        ));
    }
    let upper = |d: &crate::taxonomy::SpineDecomposition| {
        if d.r() == 0 {
            d.ell + d.t()
        } else {
            d.ell + d.t() + d.r() + 2
        }
    };
    if let Some(d) = spines.iter().min_by_key(|d| upper(d)) {
        let rule = if d.r() == 0 {
            RuleId::LobsterNoWhisker
        } else {
            RuleId::LobsterUpper
        };
        out.push(RuleApplication::new(rule, counts(d), Contribution::Upper(upper(d))));
    }
    if let Some(d) = spines.iter().find(|d| d.r() == 0 && d.all_limbs_pure()) {
        out.push(RuleApplication::new(
            RuleId::PureLobster,
            counts(d),
            Contribution::Exact(d.ell + d.t()),
        ));
    }
    out
}

/// The path-clique upper bound and its weaker predecessor, from the best
/// decomposition of a connected block graph.
pub fn rule_pathclique(g: &Graph) -> Vec<RuleApplication> {
    if g.edge_count() == 0 || g.n() > PATHCLIQUE_VERTEX_CAP || !g.is_connected() || !is_block_graph(g)
    {
        return Vec::new();
    }
    let Ok(Some(d)) = pathclique_decompose(g) else {
        return Vec::new();
    };
    if !d.validity.all() {
        return Vec::new();
    }
    let (l, r, t) = (d.ell(), d.r(), d.t());
    let inputs = vec![("ell", l), ("r", r), ("t", t)];
    vec![
        RuleApplication::new(RuleId::PathClique, inputs.clone(), Contribution::Upper(l + r + t)),
        RuleApplication::new(RuleId::PathCliqueWeak, inputs, Contribution::Upper(l + r + 2 * t)),
    ]
}

/// Upper bound on the memoized pieces explored by the degree-2 split search.
pub const CATLOB_STATE_CAP: usize = 1 << 16;

/// Exact formulas for the classes where one is known.
pub fn rule_exact_classes(g: &Graph) -> Vec<RuleApplication> {
    let mut out = Vec::new();
    if g.edge_count() == 0 || !g.is_connected() {
        return out;
    }
    if is_caterpillar(g) {
        let l = longest_paths(g, PathKind::Simple)
            .ok()
            .and_then(|p| p.first().map(|p| p.len() - 1))
            .unwrap_or(0);
        out.push(RuleApplication::new(
            RuleId::Caterpillar,
            vec![("ell", l)],
            Contribution::Exact(l),
        ));
    }
    if is_block_graph(g) {
        let cliques = maximal_cliques(g);
        let mut per_vertex = vec![0usize; g.n()];
        for c in &cliques {
            for &v in c {
                per_vertex[v] += 1;
            }
        }
        if per_vertex.iter().all(|&k| k <= 2) {
            out.push(RuleApplication::new(
                RuleId::BlockSum,
                vec![("c", cliques.len())],
                Contribution::Exact(cliques.len()),
            ));
        }
        if let Some(app) = complete_with_paths(g) {
            out.push(app);
        }
    }
    if g.is_tree() {
        if let Some(app) = star_with_paths(g) {
            out.push(app);
        }
        if let Some(app) = cat_lob_sum(g) {
            out.push(app);
        }
    }
    out
}

/// One clique block `K_s` (`s >= 3`), every other block a bridge, and each
/// clique vertex carrying at most one hanging path.
fn complete_with_paths(g: &Graph) -> Option<RuleApplication> {
    let bd = blocks_and_cut_vertices(g).ok()?;
    let mut big = bd.blocks.iter().filter(|b| b.len() >= 3);
    let clique = big.next()?;
    if big.next().is_some() {
        return None;
    }
    let in_clique = |v: Vertex| clique.binary_search(&v).is_ok();
    for v in g.vertices() {
        let outside = g.neighbors(v).iter().filter(|&&w| !in_clique(w)).count();
        let ok = if in_clique(v) { outside <= 1 } else { g.degree(v) <= 2 };
        if !ok {
            return None;
        }
    }
    let s = clique.len();
    let sum_r = g.n() - s;
    Some(RuleApplication::new(
        RuleId::CompletePaths,
        vec![("s", s), ("sum_r", sum_r)],
        Contribution::Exact(1 + sum_r),
    ))
}

/// A tree with exactly one vertex of degree at least 3: a star with a path
/// hung at each leaf.
fn star_with_paths(g: &Graph) -> Option<RuleApplication> {
    let mut hubs = g.vertices().filter(|&v| g.degree(v) >= 3);
    let hub = hubs.next()?;
    if hubs.next().is_some() {
        return None;
    }
    let k = g.degree(hub);
    let sum_r = g.n() - 1 - k;
    Some(RuleApplication::new(
        RuleId::StarPaths,
        vec![("k", k), ("sum_r", sum_r)],
        Contribution::Exact(2 + sum_r),
    ))
}

struct CatLobSearch<'a> {
    g: &'a Graph,
    memo: BTreeMap<Vec<Vertex>, Option<Vec<Vec<Vertex>>>>,
    exhausted: bool,
}

impl CatLobSearch<'_> {
    /// A split of the subtree on `piece` into good parts, if one exists.
    fn solve(&mut self, piece: Vec<Vertex>) -> Option<Vec<Vec<Vertex>>> {
        if let Some(known) = self.memo.get(&piece) {
            return known.clone();
        }
        if self.memo.len() >= CATLOB_STATE_CAP {
            self.exhausted = true;
            return None;
        }
        let sub = self.g.induced_subgraph(&piece);
        let result = if is_caterpillar(&sub) || is_pure_lobster(&sub) {
            Some(vec![piece.clone()])
        } else {
            self.try_splits(&piece)
        };
        self.memo.insert(piece, result.clone());
        result
    }

    fn try_splits(&mut self, piece: &[Vertex]) -> Option<Vec<Vec<Vertex>>> {
        let inside: BTreeSet<Vertex> = piece.iter().copied().collect();
        for &v in piece {
            let nb = self.g.neighbors(v);
            if nb.len() != 2 || !nb.iter().all(|w| inside.contains(w)) {
                continue;
            }
            let a = self.side(&inside, v, nb[0]);
            let b = self.side(&inside, v, nb[1]);
            let Some(mut left) = self.solve(a) else { continue };
            let Some(right) = self.solve(b) else { continue };
            left.extend(right);
            return Some(left);
        }
        None
    }

    /// `v` together with everything reachable from `start` inside the piece
    /// without passing through `v`.
    fn side(&self, inside: &BTreeSet<Vertex>, v: Vertex, start: Vertex) -> Vec<Vertex> {
        let mut seen = BTreeSet::new();
        seen.insert(v);
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in self.g.neighbors(u) {
                if inside.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn cat_lob_sum(g: &Graph) -> Option<RuleApplication> {
    let mut search = CatLobSearch {
        g,
        memo: BTreeMap::new(),
        exhausted: false,
    };
    let pieces = search.solve(g.vertices().collect())?;
    let m = internal_count(g);
    let parts = pieces
        .into_iter()
        .map(|vertices| {
            let k = internal_count(&g.induced_subgraph(&vertices)) + 1;
            Part {
                vertices,
                lo: k,
                hi: Some(k),
            }
        })
        .collect();
    Some(RuleApplication {
        rule: RuleId::CatLobSum,
        inputs: vec![("m", m)],
        parts,
        contribution: Contribution::Exact(m + 1),
    })
}

/// Default cap on the number of distinct subgraphs one engine evaluates.
pub const DEFAULT_RECURSION_BUDGET: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum MemoKey {
    Tree(Vec<u8>),
    Labeled(Graph),
}

/// Memoized evaluation of all rules, shared by the recursive decomposition
/// rules. One engine per top-level query.
#[derive(Debug, Clone)]
pub struct RuleEngine {
    memo: BTreeMap<MemoKey, (usize, Option<usize>)>,
    evaluations: usize,
    budget: usize,
}

impl Default for RuleEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl RuleEngine {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_RECURSION_BUDGET)
    }

    pub fn with_budget(budget: usize) -> Self {
        RuleEngine {
            memo: BTreeMap::new(),
            evaluations: 0,
            budget,
        }
    }

    /// Number of distinct subgraphs evaluated so far.
    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    /// The interval for `g` with isolated vertices removed. Vertex labels in
    /// the provenance refer to `g`.
    pub fn apply(&mut self, g: &Graph) -> Result<RegularityInterval, RulesError> {
        let keep = g.non_isolated();
        let h = g.induced_subgraph(&keep);
        let mut provenance = self.evaluate(&h)?;
        for app in &mut provenance {
            for part in &mut app.parts {
                for v in &mut part.vertices {
                    *v = keep[*v];
                }
            }
        }
        let (lo, hi) = combine(&provenance)?;
        Ok(RegularityInterval {
            lo,
            hi,
            exact: hi == Some(lo),
            provenance,
        })
    }

    /// Memoized `(lo, hi)` for a subgraph; `None` once the budget is spent.
    fn interval_of(&mut self, g: &Graph) -> Result<Option<(usize, Option<usize>)>, RulesError> {
        let key = if g.is_tree() {
            MemoKey::Tree(canonical_tree_code(g).expect("checked tree"))
        } else {
            MemoKey::Labeled(g.clone())
        };
        if let Some(&iv) = self.memo.get(&key) {
            return Ok(Some(iv));
        }
        if self.evaluations >= self.budget {
            return Ok(None);
        }
        self.evaluations += 1;
        let apps = self.evaluate(g)?;
        let iv = combine(&apps)?;
        self.memo.insert(key, iv);
        Ok(Some(iv))
    }

    fn evaluate(&mut self, g: &Graph) -> Result<Vec<RuleApplication>, RulesError> {
        if g.edge_count() == 0 {
            return Ok(vec![RuleApplication::new(
                RuleId::Edgeless,
                vec![("n", g.n())],
                Contribution::Exact(0),
            )]);
        }
        if !g.is_connected() {
            return rule_decompose(g, self);
        }
        let mut apps = rule_general(g);
        apps.extend(rule_tree_lower(g));
        apps.extend(rule_jewel_lower(g));
        apps.extend(rule_lobster(g));
        apps.extend(rule_pathclique(g));
        apps.extend(rule_exact_classes(g));
        apps.extend(rule_decompose(g, self)?);
        Ok(apps)
    }
}

fn combine(apps: &[RuleApplication]) -> Result<(usize, Option<usize>), RulesError> {
    let lo = apps.iter().map(|a| a.contribution.lo()).max().unwrap_or(0);
    let hi = apps.iter().filter_map(|a| a.contribution.hi()).min();
    if let Some(h) = hi {
        if lo > h {
            return Err(RulesError::Inconsistent {
                lo,
                hi: h,
                provenance: apps.to_vec(),
            });
        }
    }
    Ok((lo, hi))
}

/// Sums the intervals of `pieces`, or `None` if any recursive call ran out
/// of budget.
fn sum_over(
    g: &Graph,
    pieces: Vec<Vec<Vertex>>,
    engine: &mut RuleEngine,
) -> Result<Option<Vec<Part>>, RulesError> {
    let mut parts = Vec::with_capacity(pieces.len());
    for vertices in pieces {
        let Some((lo, hi)) = engine.interval_of(&g.induced_subgraph(&vertices))? else {
            return Ok(None);
        };
        parts.push(Part { vertices, lo, hi });
    }
    Ok(Some(parts))
}

fn additive(rule: RuleId, parts: Vec<Part>, out: &mut Vec<RuleApplication>) {
    let lo: usize = parts.iter().map(|p| p.lo).sum();
    let hi: Option<usize> = parts.iter().map(|p| p.hi).sum();
    let inputs = vec![("parts", parts.len())];
    let mut push = |contribution| {
        out.push(RuleApplication {
            rule,
            inputs: inputs.clone(),
            parts: parts.clone(),
            contribution,
        })
    };
    match hi {
        Some(h) if h == lo => push(Contribution::Exact(lo)),
        Some(h) => {
            push(Contribution::Lower(lo));
            push(Contribution::Upper(h));
        }
        None => push(Contribution::Lower(lo)),
    }
}

/// Cut vertices lying in exactly two blocks and free on both sides, and the
/// pieces obtained by splitting at all of them at once.
fn glue_pieces(g: &Graph) -> Vec<Vec<Vertex>> {
    let Ok(bd) = blocks_and_cut_vertices(g) else {
        return Vec::new();
    };
    let containing: Vec<Vec<usize>> = {
        let mut c = vec![Vec::new(); g.n()];
        for (i, b) in bd.blocks.iter().enumerate() {
            for &v in b {
                c[v].push(i);
            }
        }
        c
    };
    let splittable: Vec<bool> = g
        .vertices()
        .map(|v| {
            containing[v].len() == 2
                && containing[v].iter().all(|&b| {
                    let block = &bd.blocks[b];
                    let side: Vec<Vertex> = g
                        .neighbors(v)
                        .iter()
                        .copied()
                        .filter(|w| block.binary_search(w).is_ok())
                        .collect();
                    g.is_clique(&side)
                })
        })
        .collect();
    if !splittable.iter().any(|&s| s) {
        return Vec::new();
    }
    // union-find over blocks, merging through vertices that are kept whole
    let mut parent: Vec<usize> = (0..bd.blocks.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for v in g.vertices() {
        if splittable[v] {
            continue;
        }
        let bs = &containing[v];
        for w in bs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<Vertex>> = BTreeMap::new();
    for (i, b) in bd.blocks.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().extend(b.iter().copied());
    }
    let mut pieces: Vec<Vec<Vertex>> = groups.into_values().map(|s| s.into_iter().collect()).collect();
    pieces.sort();
    pieces
}

/// Additivity over disjoint components, over free cut vertices, and under
/// pendant edges. Abstains when the engine's budget runs out.
pub fn rule_decompose(
    g: &Graph,
    engine: &mut RuleEngine,
) -> Result<Vec<RuleApplication>, RulesError> {
    let mut out = Vec::new();
    if !g.is_connected() {
        let comps: Vec<Vec<Vertex>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
        if let Some(parts) = sum_over(g, comps, engine)? {
            additive(RuleId::ComponentSum, parts, &mut out);
        }
        return Ok(out);
    }
    let pieces = glue_pieces(g);
    if pieces.len() >= 2 {
        if let Some(parts) = sum_over(g, pieces, engine)? {
            additive(RuleId::GlueSum, parts, &mut out);
        }
    }
    // peel the first leaf whose neighbour stays free
    for w in g.leaves() {
        let u = g.neighbors(w)[0];
        let rest: Vec<Vertex> = g.vertices().filter(|&x| x != w).collect();
        let g0 = g.induced_subgraph(&rest);
        let u0 = if u < w { u } else { u - 1 };
        if !g0.is_free(u0) {
            continue;
        }
        if let Some((lo, hi)) = engine.interval_of(&g0)? {
            let part = Part {
                vertices: rest,
                lo,
                hi,
            };
            let contribution = match hi {
                Some(h) if h == lo => Contribution::Exact(lo + 1),
                _ => Contribution::Lower(lo + 1),
            };
            let mut push = |c| {
                out.push(RuleApplication {
                    rule: RuleId::PendantPeel,
                    inputs: vec![("leaf", w)],
                    parts: vec![part.clone()],
                    contribution: c,
                })
            };
            push(contribution);
            if let Some(h) = hi.filter(|&h| h != lo) {
                push(Contribution::Upper(h + 1));
            }
        }
        break;
    }
    Ok(out)
}

/// All rules on `g`, intersected.
pub fn apply_all_rules(g: &Graph) -> Result<RegularityInterval, RulesError> {
    RuleEngine::new().apply(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::glue;

    fn interval(g: &Graph) -> (usize, Option<usize>) {
        let iv = apply_all_rules(g).unwrap();
        (iv.lo, iv.hi)
    }

    fn fired(g: &Graph, rule: RuleId) -> Vec<Contribution> {
        apply_all_rules(g)
            .unwrap()
            .provenance
            .into_iter()
            .filter(|a| a.rule == rule)
            .map(|a| a.contribution)
            .collect()
    }

    #[test]
    fn registry_round_trips() {
        for r in RuleId::ALL {
            assert_eq!(r.as_str().parse::<RuleId>(), Ok(r));
        }
    }

    #[test]
    fn general_bounds() {
        let p4 = rule_general(&Graph::path(4));
        assert!(p4.iter().any(|a| a.contribution == Contribution::Lower(3)));
        assert!(p4.iter().any(|a| a.contribution == Contribution::Upper(3)));
        let k3 = rule_general(&Graph::complete(3));
        let got: Vec<_> = k3.iter().map(|a| (a.rule, a.contribution)).collect();
        assert_eq!(
            got,
            vec![
                (RuleId::InducedPath, Contribution::Lower(1)),
                (RuleId::VertexCount, Contribution::Upper(2)),
                (RuleId::CliqueCount, Contribution::Upper(1)),
            ]
        );
        let jewel = rule_general(&build_jewel());
        assert_eq!(jewel[0].contribution, Contribution::Lower(4));
        assert_eq!(jewel[1].contribution, Contribution::Upper(9));
    }

    #[test]
    fn tree_and_jewel_lower() {
        assert_eq!(
            rule_tree_lower(&Graph::path(2)).unwrap().contribution,
            Contribution::Lower(1)
        );
        assert_eq!(
            rule_tree_lower(&build_jewel()).unwrap().contribution,
            Contribution::Lower(5)
        );
        assert!(rule_tree_lower(&Graph::complete(3)).is_none());
        assert_eq!(
            rule_jewel_lower(&build_jewel()).unwrap().contribution,
            Contribution::Lower(6)
        );
        assert!(rule_jewel_lower(&Graph::path(10)).is_none());
    }

    #[test]
    fn lobster_family() {
        // spine 0..=4 with a pure limb 2-5-6
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
        let apps = rule_lobster(&g);
        assert!(apps
            .iter()
            .any(|a| a.rule == RuleId::PureLobster && a.contribution == Contribution::Exact(5)));
        let jewel = rule_lobster(&build_jewel());
        let lo = jewel.iter().map(|a| a.contribution.lo()).max().unwrap();
        let hi = jewel.iter().filter_map(|a| a.contribution.hi()).min().unwrap();
        assert_eq!((lo, hi), (5, 9));
    }

    #[test]
    fn pathclique_with_clique() {
        // P_5 with a K_4 sharing v_2
        let mut g = Graph::path(5);
        let a = g.add_vertex();
        let b = g.add_vertex();
        let c = g.add_vertex();
        for (x, y) in [(2, a), (2, b), (2, c), (a, b), (a, c), (b, c)] {
            g.add_edge(x, y).unwrap();
        }
        let apps = rule_pathclique(&g);
        assert_eq!(apps[0].contribution, Contribution::Upper(5));
        assert_eq!(apps[1].contribution, Contribution::Upper(5));
    }

    #[test]
    fn exact_classes() {
        for n in 2..9 {
            assert_eq!(interval(&Graph::path(n)), (n - 1, Some(n - 1)));
        }
        let k3 = Graph::complete(3);
        let two = glue(&k3, 0, &k3, 0).unwrap();
        assert!(fired(&two, RuleId::BlockSum).contains(&Contribution::Exact(2)));
        assert!(fired(&two, RuleId::GlueSum).contains(&Contribution::Exact(2)));
        // K_4 with paths of lengths 2, 1, 0, 0
        let mut g = Graph::complete(4);
        let p = g.add_vertex();
        let q = g.add_vertex();
        let r = g.add_vertex();
        g.add_edge(0, p).unwrap();
        g.add_edge(p, q).unwrap();
        g.add_edge(1, r).unwrap();
        assert!(fired(&g, RuleId::CompletePaths).contains(&Contribution::Exact(4)));
        assert_eq!(interval(&Graph::star(3)), (2, Some(2)));
        assert!(fired(&Graph::star(5), RuleId::StarPaths).contains(&Contribution::Exact(2)));
    }

    #[test]
    fn cat_lob_split() {
        // two spiders with three legs of length 2, joined through a degree-2 vertex
        let mut edges = vec![];
        for (c, base) in [(0usize, 1usize), (7, 8)] {
            for leg in 0..3 {
                let a = base + 2 * leg;
                edges.push((c, a));
                edges.push((a, a + 1));
            }
        }
        edges.push((2, 14));
        edges.push((14, 9));
        let g = Graph::from_edges(15, &edges).unwrap();
        let apps = fired(&g, RuleId::CatLobSum);
        let m = internal_count(&g);
        assert_eq!(apps, vec![Contribution::Exact(m + 1)]);
    }

    #[test]
    fn decompositions() {
        assert!(fired(&Graph::path(2), RuleId::PendantPeel).contains(&Contribution::Exact(1)));
        assert!(fired(&Graph::path(3), RuleId::PendantPeel).contains(&Contribution::Exact(2)));
        let g = Graph::path(3).disjoint_union(&Graph::complete(3));
        let iv = apply_all_rules(&g).unwrap();
        assert_eq!((iv.lo, iv.hi), (3, Some(3)));
        assert_eq!(iv.provenance[0].rule, RuleId::ComponentSum);
        let mut isolated = Graph::path(2);
        isolated.add_vertex();
        assert_eq!(interval(&isolated), (1, Some(1)));
        assert_eq!(interval(&Graph::empty(3)), (0, Some(0)));
    }

    #[test]
    fn jewel_interval() {
        let iv = apply_all_rules(&build_jewel()).unwrap();
        assert_eq!((iv.lo, iv.hi, iv.exact), (6, Some(9), false));
        let tight = iv.tight_rules();
        assert!(tight.contains(&RuleId::JewelInternal));
        assert!(tight.contains(&RuleId::LobsterUpper));
    }

    #[test]
    fn budget_exhaustion_only_widens() {
        let g = Graph::path(12);
        let full = RuleEngine::new().apply(&g).unwrap();
        let starved = RuleEngine::with_budget(0).apply(&g).unwrap();
        assert!(starved.lo <= full.lo);
        assert!(starved.hi >= full.hi);
        assert!(starved.contains(11));
    }
}
