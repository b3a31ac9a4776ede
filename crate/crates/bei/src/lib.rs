//! Harness around `bei-core`: graph file formats, canonical ids, corpora,
//! figure reconstructions, JSONL records, verification suites and the
//! Jewel conjecture scan. The `bei` binary is a thin clap front end.

pub mod canon;
pub mod corpus;
pub mod figures;
pub mod formats;
pub mod record;
pub mod scan;
pub mod suites;
