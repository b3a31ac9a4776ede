//! Cross-module verification suites. Each check carries a witness so a
//! failure can be replayed from the report alone.

use std::collections::BTreeSet;
use std::str::FromStr;

use bei_core::betti::{betti_koszul, hilbert_numerator, hochster_regularity, BettiTable};
use bei_core::graph::{longest_paths, maximal_cliques, PathKind};
use bei_core::taxonomy::{is_caterpillar, is_pure_lobster, spine_decompositions};
use bei_core::{apply_all_rules, regularity, Graph, OracleConfig, Tier};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_id;
use crate::corpus::{
    block_graphs_up_to, glue_pairs, random_block_graphs, trees_up_to, BLOCK_GRAPH_SEED, GLUE_SEED,
};
use crate::figures::{double_jewel, figure2, figure3};
use crate::formats::to_graph6;
use crate::record::analyze_with_oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Containment,
    BettiRecursion,
    Glue,
    TierAgreement,
    Hilbert,
    ExactClasses,
    Paths,
    Figures,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Containment,
        Suite::BettiRecursion,
        Suite::Glue,
        Suite::TierAgreement,
        Suite::Hilbert,
        Suite::ExactClasses,
        Suite::Paths,
        Suite::Figures,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Containment => "containment",
            Suite::BettiRecursion => "betti-recursion",
            Suite::Glue => "glue",
            Suite::TierAgreement => "tier-agreement",
            Suite::Hilbert => "hilbert",
            Suite::ExactClasses => "exact-classes",
            Suite::Paths => "paths",
            Suite::Figures => "figures",
        }
    }

    /// Corpus size used when `--max-n` is not given.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Containment | Suite::ExactClasses => 8,
            Suite::BettiRecursion | Suite::TierAgreement | Suite::Hilbert => 6,
            Suite::Glue => 9,
            Suite::Paths => 7,
            Suite::Figures => 0,
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.as_str()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_n: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn witness(g: &Graph) -> String {
    to_graph6(g).unwrap_or_else(|_| format!("{g:?}"))
}

pub fn run_suite(suite: Suite, max_n: usize, p: u32) -> SuiteReport {
    let checks = match suite {
        Suite::Containment => containment(max_n, p),
        Suite::BettiRecursion => betti_recursion(max_n, p),
        Suite::Glue => glue_additivity(max_n, p),
        Suite::TierAgreement => tier_agreement(max_n, &[p]),
        Suite::Hilbert => hilbert(max_n, &[p]),
        Suite::ExactClasses => exact_classes(max_n, p),
        Suite::Paths => paths(max_n, p),
        Suite::Figures => figures(),
    };
    SuiteReport {
        suite: suite.as_str().into(),
        max_n,
        checks,
    }
}

fn oracle(p: u32) -> OracleConfig {
    OracleConfig { p, tier: Tier::Auto }
}

/// The soundness corpus: every tree up to `max_n` vertices and 50 seeded
/// random block graphs with 2 to `max_n` vertices.
pub fn soundness_corpus(max_n: usize) -> Vec<Graph> {
    let mut gs = trees_up_to(max_n).expect("tree enumeration range");
    if max_n >= 2 {
        gs.extend(random_block_graphs(BLOCK_GRAPH_SEED, 50, 2, max_n));
    }
    gs
}

pub fn containment(max_n: usize, p: u32) -> Vec<Check> {
    soundness_corpus(max_n)
        .par_iter()
        .map(|g| match analyze_with_oracle(g, oracle(p)) {
            Ok(r) => match r.oracle {
                Some(o) => Check::new(
                    r.graph_id,
                    true,
                    format!("reg {} in [{}, {}]", o.reg, r.rules.lo, fmt_hi(r.rules.hi)),
                ),
                None => Check::new(
                    r.graph_id,
                    false,
                    format!("oracle unavailable: {}", r.oracle_skipped.unwrap_or_default()),
                ),
            },
            Err(e) => Check::new(canonical_id(g), false, format!("{e}; graph6 {}", witness(g))),
        })
        .collect()
}

fn fmt_hi(hi: Option<usize>) -> String {
    hi.map_or("inf".into(), |h| h.to_string())
}

/// Entries where `table(g')` differs from `table(g) + table(g)[i-1, j-2]`.
pub fn pendant_identity_defects(g: &BettiTable, with_pendant: &BettiTable) -> Vec<(usize, usize, u64, u64)> {
    let mut keys: BTreeSet<(usize, usize)> = with_pendant.entries().map(|(i, j, _)| (i, j)).collect();
    keys.extend(g.entries().map(|(i, j, _)| (i, j)));
    keys.extend(g.entries().map(|(i, j, _)| (i + 1, j + 2)));
    keys.into_iter()
        .filter_map(|(i, j)| {
            let shifted = if i >= 1 && j >= 2 { g.get(i - 1, j - 2) } else { 0 };
            let want = g.get(i, j) + shifted;
            let got = with_pendant.get(i, j);
            (want != got).then_some((i, j, got, want))
        })
        .collect()
}

pub fn betti_recursion(max_n: usize, p: u32) -> Vec<Check> {
    let mut cases: Vec<(Graph, usize, Graph)> = Vec::new();
    let mut seen = BTreeSet::new();
    for g in trees_up_to(max_n).expect("tree enumeration range") {
        for v in g.free_vertices() {
            let mut h = g.clone();
            let w = h.add_vertex();
            h.add_edge(v, w).expect("fresh vertex");
            if seen.insert((canonical_id(&g), canonical_id(&h))) {
                cases.push((g.clone(), v, h));
            }
        }
    }
    cases
        .par_iter()
        .map(|(g, v, h)| {
            let name = format!("{} +pendant@{}", canonical_id(g), v + 1);
            match (betti_koszul(g, p), betti_koszul(h, p)) {
                (Ok(a), Ok(b)) => {
                    let defects = pendant_identity_defects(&a, &b);
                    let detail = if defects.is_empty() {
                        format!("{} entries match", b.entries().count())
                    } else {
                        format!("graph6 {}: (i, j, got, want) {:?}", witness(g), defects)
                    };
                    Check::new(name, defects.is_empty(), detail)
                }
                (Err(e), _) | (_, Err(e)) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

pub fn glue_additivity(max_n: usize, p: u32) -> Vec<Check> {
    glue_pairs(GLUE_SEED, 30, max_n.max(3))
        .par_iter()
        .enumerate()
        .map(|(k, pair)| {
            let name = format!("pair {k}");
            let regs = [&pair.g1, &pair.g2, &pair.glued].map(|g| regularity(g, oracle(p)).map(|r| r.reg));
            match regs {
                [Ok(a), Ok(b), Ok(c)] => Check::new(
                    name,
                    a + b == c,
                    format!(
                        "{a} + {b} vs {c}; graph6 {} at {} and {} at {}",
                        witness(&pair.g1),
                        pair.v1 + 1,
                        witness(&pair.g2),
                        pair.v2 + 1
                    ),
                ),
                [a, b, c] => {
                    let err = [a, b, c].into_iter().find_map(|r| r.err()).expect("some call failed");
                    Check::new(name, false, err.to_string())
                }
            }
        })
        .collect()
}

/// Connected block graphs with at least one edge, up to `max_n` vertices.
fn small_corpus(max_n: usize) -> Vec<Graph> {
    block_graphs_up_to(max_n)
        .into_iter()
        .filter(|g| g.edge_count() > 0)
        .collect()
}

pub fn tier_agreement(max_n: usize, primes: &[u32]) -> Vec<Check> {
    let cases: Vec<(Graph, u32)> = small_corpus(max_n)
        .into_iter()
        .flat_map(|g| primes.iter().map(move |&p| (g.clone(), p)))
        .collect();
    cases
        .par_iter()
        .map(|(g, p)| {
            let name = format!("{} p={p}", canonical_id(g));
            match (betti_koszul(g, *p), hochster_regularity(g, *p)) {
                (Ok(t), Ok(h)) => Check::new(
                    name,
                    t.regularity() == h,
                    format!("tor {} hochster {h}", t.regularity()),
                ),
                (Err(e), _) | (_, Err(e)) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

pub fn hilbert(max_n: usize, primes: &[u32]) -> Vec<Check> {
    let cases: Vec<(Graph, u32)> = small_corpus(max_n)
        .into_iter()
        .flat_map(|g| primes.iter().map(move |&p| (g.clone(), p)))
        .collect();
    cases
        .par_iter()
        .map(|(g, p)| {
            let name = format!("{} p={p}", canonical_id(g));
            match hilbert_numerator(g, *p, None) {
                Ok(h) => Check::new(name, h.matches, format!("{:?}", h.from_betti)),
                Err(e) => Check::new(name, false, format!("{e}; graph6 {}", witness(g))),
            }
        })
        .collect()
}

/// Caterpillars (reg = ℓ), pure lobsters (reg = ℓ + t) and block graphs
/// with every vertex in at most two maximal cliques (reg = c(G)).
pub fn exact_classes(max_n: usize, p: u32) -> Vec<Check> {
    let mut cases: Vec<(String, Graph, usize)> = Vec::new();
    for g in trees_up_to(max_n).expect("tree enumeration range") {
        if g.edge_count() == 0 {
            continue;
        }
        if is_caterpillar(&g) {
            let l = longest_paths(&g, PathKind::Simple).expect("trees are exact")[0].len() - 1;
            cases.push((format!("caterpillar {}", canonical_id(&g)), g.clone(), l));
        }
        if is_pure_lobster(&g) {
            let d = spine_decompositions(&g)
                .expect("lobster")
                .into_iter()
                .find(|d| d.r() == 0 && d.all_limbs_pure())
                .expect("pure spine");
            cases.push((format!("pure-lobster {}", canonical_id(&g)), g.clone(), d.ell + d.t()));
        }
    }
    for g in small_corpus(max_n) {
        let cliques = maximal_cliques(&g);
        let mut per_vertex = vec![0usize; g.n()];
        for c in &cliques {
            for &v in c {
                per_vertex[v] += 1;
            }
        }
        if per_vertex.iter().all(|&k| k <= 2) {
            cases.push((format!("block-sum {}", canonical_id(&g)), g, cliques.len()));
        }
    }
    cases
        .par_iter()
        .map(|(name, g, want)| match regularity(g, oracle(p)) {
            Ok(r) => Check::new(name.clone(), r.reg == *want, format!("oracle {} formula {want}", r.reg)),
            Err(e) => Check::new(name.clone(), false, e.to_string()),
        })
        .collect()
}

pub fn paths(max_n: usize, p: u32) -> Vec<Check> {
    (2..=max_n)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            let name = format!("P_{n}");
            match regularity(&Graph::path(n), oracle(p)) {
                Ok(r) => Check::new(name, r.reg == n - 1, format!("oracle {} expected {}", r.reg, n - 1)),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

/// Rule-level checks on the figure reconstructions; these graphs are beyond
/// the oracle.
pub fn figures() -> Vec<Check> {
    let mut out = Vec::new();
    let rules = |g: &Graph| apply_all_rules(g).map(|iv| (iv.lo, iv.hi));
    let dj = double_jewel();
    let spines_ok = spine_decompositions(&dj)
        .map(|ds| ds.iter().all(|d| (d.ell, d.t(), d.r()) == (4, 4, 2)))
        .unwrap_or(false);
    match rules(&dj) {
        Ok((lo, hi)) => out.push(Check::new(
            "double-jewel upper 12",
            hi == Some(12) && lo == 9 && spines_ok,
            format!("interval [{lo}, {}], spines (4, 4, 2): {spines_ok}", fmt_hi(hi)),
        )),
        Err(e) => out.push(Check::new("double-jewel upper 12", false, e.to_string())),
    }
    let f2 = figure2();
    let c = maximal_cliques(&f2).len();
    match rules(&f2) {
        Ok((lo, hi)) => out.push(Check::new(
            "fig2 exact 22",
            lo == 22 && hi == Some(22) && c == 22,
            format!("interval [{lo}, {}], c(G) = {c}, n = {}", fmt_hi(hi), f2.n()),
        )),
        Err(e) => out.push(Check::new("fig2 exact 22", false, e.to_string())),
    }
    let f3 = figure3();
    let m = f3.vertices().filter(|&v| f3.degree(v) > 1).count();
    match rules(&f3) {
        Ok((lo, hi)) => out.push(Check::new(
            "fig3 exact 26",
            lo == 26 && hi == Some(26) && m == 25,
            format!("interval [{lo}, {}], m = {m}, n = {}", fmt_hi(hi), f3.n()),
        )),
        Err(e) => out.push(Check::new("fig3 exact 26", false, e.to_string())),
    }
    out
}
