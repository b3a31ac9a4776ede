//! Result records, their JSON shape and the append-only JSONL cache.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use bei_core::betti::BettiTable;
use bei_core::graph::{is_block_graph, longest_induced_path_length, maximal_cliques};
use bei_core::rules::{Contribution, RegularityInterval, RuleApplication, RulesError};
use bei_core::taxonomy::{pathclique_decompose, spine_decompositions, PATHCLIQUE_VERTEX_CAP};
use bei_core::{classify_tree, regularity, Graph, OracleConfig, OracleError, OracleResult};
use serde::{Deserialize, Serialize};

use crate::canon::canonical_id;

pub const TOOL_VERSION: &str = concat!("bei ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineCounts {
    pub ell: usize,
    pub t: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    /// Longest induced path length, when computable.
    pub ell: Option<usize>,
    /// Internal vertex count, trees only.
    pub m: Option<usize>,
    /// Number of maximal cliques, block graphs only.
    pub c: Option<usize>,
    /// Spine counts of the spine with the smallest lobster upper bound.
    pub lobster: Option<SpineCounts>,
    /// `(ℓ, r, t)` of the best path-clique decomposition, `r` counting
    /// cliques.
    pub path_clique: Option<SpineCounts>,
    pub is_tree: bool,
    pub is_block_graph: bool,
    pub is_caterpillar: bool,
    pub is_lobster: bool,
    pub is_pure_lobster: bool,
    pub contains_jewel: bool,
}

pub fn invariants(g: &Graph) -> Invariants {
    let connected = g.is_connected() && g.n() > 0;
    let block = connected && is_block_graph(g);
    let profile = classify_tree(g).ok();
    let lobster = profile
        .as_ref()
        .filter(|p| p.is_lobster && g.edge_count() > 0)
        .and_then(|_| spine_decompositions(g).ok())
        .and_then(|ds| {
            ds.into_iter().min_by_key(|d| {
                if d.r() == 0 {
                    d.ell + d.t()
                } else {
                    d.ell + d.t() + d.r() + 2
                }
            })
        })
        .map(|d| SpineCounts {
            ell: d.ell,
            t: d.t(),
            r: d.r(),
        });
    let path_clique = if block && g.edge_count() > 0 && g.n() <= PATHCLIQUE_VERTEX_CAP {
        pathclique_decompose(g).ok().flatten().map(|d| SpineCounts {
            ell: d.ell(),
            t: d.t(),
            r: d.r(),
        })
    } else {
        None
    };
    Invariants {
        ell: if connected {
            longest_induced_path_length(g).ok()
        } else {
            None
        },
        m: profile.as_ref().map(|p| p.internal_count),
        c: block.then(|| maximal_cliques(g).len()),
        lobster,
        path_clique,
        is_tree: profile.is_some(),
        is_block_graph: block,
        is_caterpillar: profile.as_ref().is_some_and(|p| p.is_caterpillar),
        is_lobster: profile.as_ref().is_some_and(|p| p.is_lobster),
        is_pure_lobster: profile.as_ref().is_some_and(|p| p.is_pure_lobster),
        contains_jewel: profile.as_ref().is_some_and(|p| p.contains_jewel),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionRecord {
    pub kind: String,
    pub value: usize,
}

impl From<Contribution> for ContributionRecord {
    fn from(c: Contribution) -> Self {
        let (kind, value) = match c {
            Contribution::Lower(k) => ("lower", k),
            Contribution::Upper(k) => ("upper", k),
            Contribution::Exact(k) => ("exact", k),
        };
        ContributionRecord {
            kind: kind.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartRecord {
    /// 1-based.
    pub vertices: Vec<usize>,
    pub lo: usize,
    pub hi: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceRecord {
    pub rule_id: String,
    pub anchor: String,
    pub cited: bool,
    pub inputs: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<PartRecord>,
    pub contribution: ContributionRecord,
}

impl From<&RuleApplication> for ProvenanceRecord {
    fn from(a: &RuleApplication) -> Self {
        ProvenanceRecord {
            rule_id: a.rule.as_str().into(),
            anchor: a.anchor().into(),
            cited: a.rule.is_cited(),
            inputs: a.inputs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            parts: a
                .parts
                .iter()
                .map(|p| PartRecord {
                    vertices: p.vertices.iter().map(|v| v + 1).collect(),
                    lo: p.lo,
                    hi: p.hi,
                })
                .collect(),
            contribution: a.contribution.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub lo: usize,
    /// `null` is unbounded.
    pub hi: Option<usize>,
    pub exact: bool,
    pub provenance: Vec<ProvenanceRecord>,
}

impl From<&RegularityInterval> for IntervalRecord {
    fn from(iv: &RegularityInterval) -> Self {
        IntervalRecord {
            lo: iv.lo,
            hi: iv.hi,
            exact: iv.exact,
            provenance: iv.provenance.iter().map(ProvenanceRecord::from).collect(),
        }
    }
}

impl IntervalRecord {
    pub fn contains(&self, reg: usize) -> bool {
        self.lo <= reg && self.hi.is_none_or(|h| reg <= h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub reg: usize,
    pub tier: String,
    pub p: u32,
}

impl From<OracleResult> for OracleRecord {
    fn from(r: OracleResult) -> Self {
        OracleRecord {
            reg: r.reg,
            tier: r.tier_used.as_str().into(),
            p: r.p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub rules_ms: f64,
    pub oracle_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub graph_id: String,
    pub n: usize,
    /// 1-based edge list.
    pub edges: Vec<[usize; 2]>,
    pub invariants: Invariants,
    pub rules: IntervalRecord,
    pub oracle: Option<OracleRecord>,
    /// Why the oracle was not run, if it was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_skipped: Option<String>,
    pub timings: Timings,
    pub version: String,
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error(transparent)]
    Rules(#[from] RulesError),
    #[error("oracle regularity {reg} lies outside the rule interval [{lo}, {hi}]", hi = hi.map_or("inf".to_string(), |h| h.to_string()))]
    Containment { reg: usize, lo: usize, hi: Option<usize>, record: Box<ResultRecord> },
}

fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Classification and rule interval, no algebra.
pub fn analyze(g: &Graph) -> Result<ResultRecord, RulesError> {
    let start = Instant::now();
    let interval = bei_core::apply_all_rules(g)?;
    let rules_ms = ms(start);
    Ok(ResultRecord {
        graph_id: canonical_id(g),
        n: g.n(),
        edges: g.edges().map(|(u, v)| [u + 1, v + 1]).collect(),
        invariants: invariants(g),
        rules: IntervalRecord::from(&interval),
        oracle: None,
        oracle_skipped: None,
        timings: Timings {
            rules_ms,
            oracle_ms: None,
        },
        version: TOOL_VERSION.into(),
    })
}

/// [`analyze`] plus the oracle. Cap refusals leave a rules-only record with
/// the reason; a value outside the interval is an error.
pub fn analyze_with_oracle(g: &Graph, config: OracleConfig) -> Result<ResultRecord, RecordError> {
    let mut record = analyze(g)?;
    let start = Instant::now();
    match regularity(g, config) {
        Ok(res) => {
            record.timings.oracle_ms = Some(ms(start));
            record.oracle = Some(res.into());
            if !record.rules.contains(res.reg) {
                return Err(RecordError::Containment {
                    reg: res.reg,
                    lo: record.rules.lo,
                    hi: record.rules.hi,
                    record: Box::new(record),
                });
            }
        }
        Err(e @ (OracleError::BeyondCaps { .. }
        | OracleError::KoszulCap { .. }
        | OracleError::HochsterCap { .. })) => {
            record.oracle_skipped = Some(e.to_string());
        }
        Err(e) => record.oracle_skipped = Some(format!("oracle failed: {e}")),
    }
    Ok(record)
}

/// Betti table as `{"p", "entries": [[i, j, b], ...], "reg", "pd", "tier"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub p: u32,
    pub entries: Vec<[u64; 3]>,
    pub reg: usize,
    pub pd: usize,
    pub tier: String,
}

impl From<&BettiTable> for BettiJson {
    fn from(t: &BettiTable) -> Self {
        BettiJson {
            p: t.characteristic(),
            entries: t.entries().map(|(i, j, b)| [i as u64, j as u64, b]).collect(),
            reg: t.regularity(),
            pd: t.projective_dimension(),
            tier: t.tier().as_str().into(),
        }
    }
}

/// Append-only JSONL file keyed on `graph_id`. Records already present are
/// skipped on write, which makes long scans resumable.
pub struct JsonlSink {
    file: File,
    seen: BTreeSet<String>,
}

impl JsonlSink {
    pub fn open(path: &Path) -> std::io::Result<Self> {
        let mut seen = BTreeSet::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if let Ok(v) = serde_json::from_str::<serde_json::Value>(&line) {
                    if let Some(id) = v.get("graph_id").and_then(|x| x.as_str()) {
                        seen.insert(id.to_string());
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(JsonlSink { file, seen })
    }

    pub fn contains(&self, graph_id: &str) -> bool {
        self.seen.contains(graph_id)
    }

    /// Writes `value` unless its `graph_id` is already stored; returns
    /// whether a line was written.
    pub fn append<T: Serialize>(&mut self, graph_id: &str, value: &T) -> std::io::Result<bool> {
        if !self.seen.insert(graph_id.to_string()) {
            return Ok(false);
        }
        let line = serde_json::to_string(value).map_err(std::io::Error::other)?;
        writeln!(self.file, "{line}")?;
        self.file.flush()?;
        Ok(true)
    }

    /// Reads back every record in the file that parses as `T`.
    pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> std::io::Result<Vec<T>> {
        let mut out = Vec::new();
        if !path.exists() {
            return Ok(out);
        }
        for line in BufReader::new(File::open(path)?).lines() {
            let line = line?;
            if let Ok(v) = serde_json::from_str(&line) {
                out.push(v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bei_core::build_jewel;

    #[test]
    fn jewel_record() {
        let r = analyze(&build_jewel()).unwrap();
        assert_eq!((r.rules.lo, r.rules.hi), (6, Some(9)));
        assert!(r.invariants.is_lobster && r.invariants.contains_jewel);
        assert_eq!(r.invariants.m, Some(4));
        assert_eq!(r.invariants.lobster, Some(SpineCounts { ell: 4, t: 1, r: 2 }));
        let json = serde_json::to_string(&r).unwrap();
        let back: ResultRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn betti_json_key_order() {
        let t = bei_core::betti::betti_koszul(&Graph::path(2), 32003).unwrap();
        let s = serde_json::to_string(&BettiJson::from(&t)).unwrap();
        assert_eq!(s, r#"{"p":32003,"entries":[[0,0,1],[1,2,1]],"reg":1,"pd":1,"tier":"tor"}"#);
    }

    #[test]
    fn sink_skips_known_ids() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        let rec = analyze(&Graph::path(3)).unwrap();
        {
            let mut sink = JsonlSink::open(&path).unwrap();
            assert!(sink.append(&rec.graph_id, &rec).unwrap());
            assert!(!sink.append(&rec.graph_id, &rec).unwrap());
        }
        let mut sink = JsonlSink::open(&path).unwrap();
        assert!(sink.contains(&rec.graph_id));
        assert!(!sink.append(&rec.graph_id, &rec).unwrap());
        let back: Vec<ResultRecord> = JsonlSink::load(&path).unwrap();
        assert_eq!(back.len(), 1);
    }
}
