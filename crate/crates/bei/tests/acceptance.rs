//! Acceptance criteria, one PASS/FAIL line each. Every tolerance is exact
//! (zero): regularities and Betti numbers are integers.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use bei::corpus::trees_up_to;
use bei::scan::scan_conjecture;
use bei::suites::{
    betti_recursion, containment, exact_classes, figures, glue_additivity, hilbert, paths,
    soundness_corpus, tier_agreement, Check,
};
use bei_core::groebner::DEFAULT_PRIME;
use bei_core::{build_jewel, regularity, OracleConfig, Tier};

const P: u32 = DEFAULT_PRIME;

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_checks(checks: &[Check], what: &str) -> Outcome {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let mut detail = format!("{} {what}, {} failed", checks.len(), failed.len());
    if let Some(c) = failed.first() {
        detail.push_str(&format!("; first: {} ({})", c.name, c.detail));
    }
    Outcome {
        pass: failed.is_empty() && !checks.is_empty(),
        detail,
    }
}

fn jewel() -> Outcome {
    let config = OracleConfig {
        p: P,
        tier: Tier::Hochster,
    };
    match regularity(&build_jewel(), config) {
        Ok(r) => Outcome {
            pass: r.reg == 6,
            detail: format!("reg = {} via {} tier, p = {}, expected 6", r.reg, r.tier_used, r.p),
        },
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn soundness() -> Outcome {
    let corpus = soundness_corpus(8);
    let trees = trees_up_to(8).map_or(0, |t| t.len());
    let mut o = from_checks(&containment(8, P), "graphs");
    o.detail = format!("{trees} trees + {} random block graphs; {}", corpus.len() - trees, o.detail);
    o.pass &= trees == 48 && corpus.len() == 98;
    o
}

fn scan() -> Outcome {
    match scan_conjecture(10, P, &BTreeMap::new(), |_| {}) {
        Ok(r) => Outcome {
            pass: r.proven_violations.is_empty() && r.trees == 201,
            detail: format!(
                "{} trees, {} with reg >= m + 2, {} proven-direction violations, {} converse counterexamples",
                r.trees,
                r.high.len(),
                r.proven_violations.len(),
                r.converse_counterexamples.len()
            ),
        },
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn oracle_consistency() -> Outcome {
    let mut checks = tier_agreement(6, &[2, P]);
    checks.extend(hilbert(6, &[2, P]));
    from_checks(&checks, "tier/Hilbert comparisons over p in {2, 32003}")
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 jewel regularity 6 (hochster, p = 32003)", jewel),
        ("2 rule soundness on trees n <= 8 and random block graphs", soundness),
        ("3 exact classes n <= 8", || from_checks(&exact_classes(8, P), "class members")),
        ("4 Betti recursion for pendants on trees n <= 6", || {
            from_checks(&betti_recursion(6, P), "tree/free-vertex cases")
        }),
        ("5 gluing additivity, 30 pairs n <= 9", || from_checks(&glue_additivity(9, P), "pairs")),
        ("6 headline examples at rule level", || {
            let mut o = from_checks(&figures(), "figure checks");
            o.detail.push_str("; rule level only, beyond the oracle's size caps");
            o
        }),
        ("7 Jewel conjecture scan n <= 10", scan),
        ("8 oracle self-consistency n <= 6", oracle_consistency),
        ("9 reg(P_n) = n - 1 for n = 2..7", || from_checks(&paths(7, P), "paths")),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        if !o.pass {
            failures += 1;
        }
        println!(
            "{} criterion {name}: {} [{secs:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
