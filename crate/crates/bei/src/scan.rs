//! Exhaustive check of the Jewel conjecture on small trees.
//!
//! For every unlabelled tree the oracle regularity is compared with `m + 2`.
//! A tree containing the Jewel must reach it (a proved bound, so a miss is a
//! hard failure). The converse is the open direction: trees reaching
//! `m + 2` without a Jewel are collected as counterexamples.

use std::collections::BTreeMap;

use bei_core::{OracleConfig, Tier};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_id;
use crate::corpus::trees_up_to;
use crate::record::{analyze_with_oracle, RecordError, ResultRecord};

/// Largest order the scan accepts.
pub const SCAN_MAX_N: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub reg: usize,
    pub contains_jewel: bool,
}

impl ScanRow {
    /// `reg >= m + 2`.
    pub fn high(&self) -> bool {
        self.reg >= self.m + 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub max_n: usize,
    pub trees: usize,
    /// Trees per order, index `n`.
    pub per_n: Vec<usize>,
    pub high: Vec<ScanRow>,
    /// Jewel present but `reg < m + 2`. Must be empty.
    pub proven_violations: Vec<ScanRow>,
    /// `reg >= m + 2` without a Jewel.
    pub converse_counterexamples: Vec<ScanRow>,
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("the scan supports max-n up to {SCAN_MAX_N}, got {0}")]
    Range(usize),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("{graph_id}: oracle unavailable ({reason})")]
    Oracle { graph_id: String, reason: String },
}

fn row(rec: &ResultRecord) -> Result<ScanRow, ScanError> {
    let reg = rec.oracle.as_ref().map(|o| o.reg).ok_or_else(|| ScanError::Oracle {
        graph_id: rec.graph_id.clone(),
        reason: rec.oracle_skipped.clone().unwrap_or_default(),
    })?;
    Ok(ScanRow {
        graph_id: rec.graph_id.clone(),
        n: rec.n,
        m: rec.invariants.m.expect("trees have an internal count"),
        reg,
        contains_jewel: rec.invariants.contains_jewel,
    })
}

/// Runs the scan. `cache` holds records from an earlier run (keyed on
/// graph id) and is reused; `on_record` sees each freshly computed record
/// in catalog order.
pub fn scan_conjecture(
    max_n: usize,
    p: u32,
    cache: &BTreeMap<String, ResultRecord>,
    mut on_record: impl FnMut(&ResultRecord),
) -> Result<ScanReport, ScanError> {
    if max_n > SCAN_MAX_N {
        return Err(ScanError::Range(max_n));
    }
    let trees = trees_up_to(max_n).expect("range checked");
    let config = OracleConfig { p, tier: Tier::Auto };
    let computed: Vec<Result<Option<ResultRecord>, RecordError>> = trees
        .par_iter()
        .map(|g| {
            let id = canonical_id(g);
            match cache.get(&id) {
                Some(r) if r.oracle.as_ref().is_some_and(|o| o.p == p) => Ok(None),
                _ => analyze_with_oracle(g, config).map(Some),
            }
        })
        .collect();
    let mut report = ScanReport {
        max_n,
        trees: trees.len(),
        per_n: vec![0; max_n + 1],
        high: Vec::new(),
        proven_violations: Vec::new(),
        converse_counterexamples: Vec::new(),
    };
    for (g, fresh) in trees.iter().zip(computed) {
        let fresh = fresh?;
        if let Some(r) = &fresh {
            on_record(r);
        }
        let rec = fresh.as_ref().unwrap_or_else(|| &cache[&canonical_id(g)]);
        let row = row(rec)?;
        report.per_n[row.n] += 1;
        if row.contains_jewel && !row.high() {
            report.proven_violations.push(row.clone());
        }
        if row.high() {
            if !row.contains_jewel {
                report.converse_counterexamples.push(row.clone());
            }
            report.high.push(row);
        }
    }
    Ok(report)
}
