//! Exact regularity of `S/J_G` over a prime field.
//!
//! Two independent tiers:
//!
//! * [`koszul`]: homology of the Koszul complex of `S/J_G` itself, graded
//!   by `Z^n` (one coordinate per vertex) and by `x`-degree. Only tiny
//!   graphs.
//! * [`hochster`]: Hochster's formula on the Stanley–Reisner complex of the
//!   squarefree lex initial ideal. Its regularity equals that of `S/J_G`
//!   because the degeneration is squarefree.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::{Graph, GraphError};
use crate::groebner::{edge_ideal_basis, GroebnerError, DEFAULT_PRIME};

pub mod hochster;
pub mod koszul;
pub mod linalg;

pub use hochster::{betti_hochster, StanleyReisnerComplex, HOCHSTER_VAR_CAP};
pub use koszul::{betti_koszul, KOSZUL_VERTEX_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("the Koszul tier is capped at {cap} vertices (got {n}); use the hochster tier")]
    KoszulCap { n: usize, cap: usize },
    #[error("the Hochster tier is capped at {cap} variables (got {vars})")]
    HochsterCap { vars: usize, cap: usize },
    #[error(
        "a component with {n} vertices is beyond every oracle tier; only the rule intervals apply"
    )]
    BeyondCaps { n: usize },
    #[error("nonfaces must be nonempty subsets of the vertex set and monomials squarefree")]
    BadComplex,
    #[error("Hilbert numerators disagree: counts give {counts:?}, Betti numbers give {betti:?}")]
    HilbertMismatch { counts: Vec<i64>, betti: Vec<i64> },
}

/// Which oracle computes the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Tier {
    /// Tor for components with at most 6 vertices, Hochster up to 12.
    #[default]
    Auto,
    Tor,
    Hochster,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Auto => "auto",
            Tier::Tor => "tor",
            Tier::Hochster => "hochster",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Tier::Auto),
            "tor" => Ok(Tier::Tor),
            "hochster" => Ok(Tier::Hochster),
            other => Err(alloc::format!("unknown tier {other:?}; expected auto, tor or hochster")),
        }
    }
}

/// Graded Betti numbers `β_{i,j}`; absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    p: u32,
    tier: Tier,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(p: u32, tier: Tier) -> Self {
        BettiTable {
            p,
            tier,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, j: usize, b: u64) {
        if b != 0 {
            *self.entries.entry((i, j)).or_insert(0) += b;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `(i, j, β_{i,j})` in increasing `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// `max(j - i)` over nonzero entries.
    pub fn regularity(&self) -> usize {
        self.entries().map(|(i, j, _)| j - i).max().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries().map(|(i, _, _)| i).max().unwrap_or(0)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn tier(&self) -> Tier {
        self.tier
    }

    /// `Σ_i (-1)^i β_{i,j}` as coefficients of `t^j`.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let top = self.entries().map(|(_, j, _)| j).max().unwrap_or(0);
        let mut out = vec![0i64; top + 1];
        for (i, j, b) in self.entries() {
            let b = b as i64;
            out[j] += if i % 2 == 0 { b } else { -b };
        }
        trim(&mut out);
        out
    }
}

fn trim(v: &mut Vec<i64>) {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub p: u32,
    pub tier: Tier,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            p: DEFAULT_PRIME,
            tier: Tier::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleResult {
    pub reg: usize,
    /// The tier actually run; `Hochster` if any component needed it.
    pub tier_used: Tier,
    pub p: u32,
}

pub const AUTO_TOR_MAX_N: usize = 6;
pub const AUTO_HOCHSTER_MAX_N: usize = HOCHSTER_VAR_CAP / 2;

/// `reg(S/J_G)`, summed over connected components (isolated vertices
/// contribute nothing).
pub fn regularity(g: &Graph, config: OracleConfig) -> Result<OracleResult, OracleError> {
    let mut reg = 0;
    let mut used = Tier::Tor;
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let h = g.induced_subgraph(&comp);
        let n = h.n();
        let tier = match config.tier {
            Tier::Auto if n <= AUTO_TOR_MAX_N => Tier::Tor,
            Tier::Auto if n <= AUTO_HOCHSTER_MAX_N => Tier::Hochster,
            Tier::Auto => return Err(OracleError::BeyondCaps { n }),
            t => t,
        };
        reg += match tier {
            Tier::Tor => betti_koszul(&h, config.p)?.regularity(),
            _ => hochster_regularity(&h, config.p)?,
        };
        used = used.max(tier);
    }
    Ok(OracleResult {
        reg,
        tier_used: used,
        p: config.p,
    })
}

/// A few vertex orders to try; the lex initial ideal, and with it the
/// Hochster workload, depends strongly on the labelling.
fn candidate_labellings(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out: Vec<Vec<usize>> = vec![(0..n).collect()];
    for root in g.vertices() {
        // BFS order from `root`: old vertex v gets label perm[v]
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        if order.len() < n {
            continue;
        }
        let mut perm = vec![0; n];
        for (label, &v) in order.iter().enumerate() {
            perm[v] = label;
        }
        out.push(perm);
    }
    out.sort();
    out.dedup();
    out
}

/// Relabelling of `g` whose lex Gröbner basis has the fewest elements.
pub fn best_labelling(g: &Graph, p: u32) -> Result<Graph, OracleError> {
    let mut best: Option<(usize, Graph)> = None;
    for perm in candidate_labellings(g) {
        let h = g.relabel(&perm);
        let size = edge_ideal_basis(&h, p)?.basis.len();
        if best.as_ref().is_none_or(|(s, _)| size < *s) {
            best = Some((size, h));
        }
    }
    Ok(best.expect("the identity is a candidate").1)
}

/// The Stanley–Reisner complex of the lex initial ideal of `J_G`.
pub fn initial_complex(g: &Graph, p: u32) -> Result<StanleyReisnerComplex, OracleError> {
    let gb = edge_ideal_basis(g, p)?;
    let gens = gb.initial_ideal()?;
    StanleyReisnerComplex::from_monomials(2 * g.n(), &gens)
}

/// `reg(S/in(J_G))` on the best labelling found.
pub fn hochster_regularity(g: &Graph, p: u32) -> Result<usize, OracleError> {
    if 2 * g.n() > HOCHSTER_VAR_CAP {
        return Err(OracleError::HochsterCap {
            vars: 2 * g.n(),
            cap: HOCHSTER_VAR_CAP,
        });
    }
    let h = best_labelling(g, p)?;
    Ok(betti_hochster(&initial_complex(&h, p)?, p, true)?.regularity())
}

/// Both Hilbert numerators of `S/J_G`; they agree or this is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertCheck {
    /// From standard-monomial counts times `(1 - t)^{2n}`, truncated.
    pub from_counts: Vec<i64>,
    /// From the alternating Betti sums of the Koszul tier.
    pub from_betti: Vec<i64>,
    pub matches: bool,
}

/// Hilbert series numerator of `S/J_G` computed two ways. `degree_cap`
/// bounds the Hilbert function values counted (default `2n`, which is the
/// largest possible numerator degree).
pub fn hilbert_numerator(
    g: &Graph,
    p: u32,
    degree_cap: Option<usize>,
) -> Result<HilbertCheck, OracleError> {
    let n = g.n();
    if n > KOSZUL_VERTEX_CAP {
        return Err(OracleError::KoszulCap {
            n,
            cap: KOSZUL_VERTEX_CAP,
        });
    }
    let vars = 2 * n;
    let cap = degree_cap.unwrap_or(vars);
    let hf = hilbert_function(g, p, cap)?;
    // multiply by (1 - t)^vars, keeping degrees ≤ cap
    let mut counts = hf;
    for _ in 0..vars {
        for d in (1..counts.len()).rev() {
            counts[d] -= counts[d - 1];
        }
    }
    trim(&mut counts);
    let mut betti = betti_koszul(g, p)?.hilbert_numerator();
    betti.truncate(cap + 1);
    trim(&mut betti);
    if counts != betti {
        return Err(OracleError::HilbertMismatch { counts, betti });
    }
    Ok(HilbertCheck {
        from_counts: counts,
        from_betti: betti,
        matches: true,
    })
}

/// Number of standard monomials of each degree `0..=cap`. With a
/// squarefree initial ideal these are exactly the monomials supported on a
/// face, so a face with `k` vertices contributes `C(d - 1, k - 1)`.
pub fn hilbert_function(g: &Graph, p: u32, cap: usize) -> Result<Vec<i64>, OracleError> {
    let complex = initial_complex(g, p)?;
    let vars = complex.num_vertices();
    let mut f = vec![0i64; vars + 1];
    for mask in 0u32..(1u32 << vars) {
        if complex.is_face(mask) {
            f[mask.count_ones() as usize] += 1;
        }
    }
    let mut h = vec![0i64; cap + 1];
    h[0] = 1;
    for (d, hd) in h.iter_mut().enumerate().skip(1) {
        *hd = (1..=vars.min(d))
            .map(|k| f[k] * binomial(d - 1, k - 1))
            .sum();
    }
    Ok(h)
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tier_round_trips() {
        for t in [Tier::Auto, Tier::Tor, Tier::Hochster] {
            assert_eq!(t.as_str().parse::<Tier>(), Ok(t));
        }
        assert!("fast".parse::<Tier>().is_err());
    }

    #[test]
    fn hilbert_examples() {
        let k2 = hilbert_numerator(&Graph::complete(2), 32003, None).unwrap();
        assert_eq!(k2.from_counts, vec![1, 0, -1]);
        let p3 = hilbert_numerator(&Graph::path(3), 2, None).unwrap();
        assert_eq!(p3.from_betti, vec![1, 0, -2, 0, 1]);
        let empty = hilbert_numerator(&Graph::empty(3), 32003, None).unwrap();
        assert_eq!(empty.from_counts, vec![1]);
        assert!(empty.matches);
    }

    #[test]
    fn paths_have_regularity_n_minus_one() {
        for n in 2..=7 {
            let r = regularity(&Graph::path(n), OracleConfig::default()).unwrap();
            assert_eq!(r.reg, n - 1);
        }
    }

    #[test]
    fn components_add() {
        let g = Graph::path(3).disjoint_union(&Graph::complete(3));
        let cfg = OracleConfig {
            p: 2,
            tier: Tier::Hochster,
        };
        assert_eq!(regularity(&g, cfg).unwrap().reg, 3);
        assert_eq!(regularity(&Graph::empty(4), cfg).unwrap().reg, 0);
    }

    #[test]
    fn beyond_caps_is_refused() {
        assert!(matches!(
            regularity(&Graph::path(13), OracleConfig::default()),
            Err(OracleError::BeyondCaps { n: 13 })
        ));
    }
}
