use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bei::figures::figure_graphs;
use bei::formats::{parse_graph, Format};
use bei::record::{analyze, analyze_with_oracle, BettiJson, JsonlSink, RecordError, ResultRecord};
use bei::scan::{scan_conjecture, ScanError};
use bei::suites::{run_suite, Suite};
use bei_core::betti::{best_labelling, betti_hochster, betti_koszul, initial_complex};
use bei_core::groebner::DEFAULT_PRIME;
use bei_core::{Graph, OracleConfig, Tier};
use clap::{Args, Parser, Subcommand};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(name = "bei", version, about = "Regularity of binomial edge ideals: rule intervals and an exact oracle")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "edge-list", value_parser = parse_format)]
    format: Format,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_tier(s: &str) -> Result<Tier, String> {
    s.parse().map_err(|_| format!("unknown tier `{s}` (expected auto, tor or hochster)"))
}

#[derive(Clone, Copy)]
enum SuiteChoice {
    All,
    One(Suite),
}

fn parse_suite(s: &str) -> Result<SuiteChoice, String> {
    if s == "all" {
        Ok(SuiteChoice::All)
    } else {
        s.parse().map(SuiteChoice::One)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a graph and print its rule interval (no algebra).
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Rule interval plus the exact oracle, with a containment check.
    Reg {
        #[command(flatten)]
        input: InputArgs,
        /// Characteristic of the coefficient field.
        #[arg(long = "char", default_value_t = DEFAULT_PRIME)]
        p: u32,
        #[arg(long, default_value = "auto", value_parser = parse_tier)]
        tier: Tier,
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Graded Betti table as JSON.
    Betti {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long = "char", default_value_t = DEFAULT_PRIME)]
        p: u32,
        /// `tor` for S/J_G itself, `hochster` for the lex initial ideal.
        #[arg(long, default_value = "tor", value_parser = parse_tier)]
        tier: Tier,
    },
    /// Check the Jewel conjecture on every tree up to `--max-n` vertices.
    ScanConjecture {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long = "char", default_value_t = DEFAULT_PRIME)]
        p: u32,
        /// Result cache; records already present are reused.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Run a verification suite (or `all`).
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: SuiteChoice,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long = "char", default_value_t = DEFAULT_PRIME)]
        p: u32,
    },
    /// Rule intervals of the reconstructed example graphs.
    Figures {
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verify(_) => EXIT_VERIFY,
            Failure::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verify(m) | Failure::Inconsistent(m) => m,
        }
    }
}

fn read_graph(args: &InputArgs) -> Result<Graph, Failure> {
    let bytes = if args.input.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read(&args.input)
            .map_err(|e| Failure::Usage(format!("{}: {e}", args.input.display())))?
    };
    parse_graph(&bytes, args.format).map_err(|e| Failure::Usage(format!("{}: {e}", args.input.display())))
}

fn open_sink(path: &Option<PathBuf>) -> Result<Option<JsonlSink>, Failure> {
    path.as_deref()
        .map(|p| JsonlSink::open(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))))
        .transpose()
}

fn append(sink: &mut Option<JsonlSink>, rec: &ResultRecord) -> Result<(), Failure> {
    if let Some(s) = sink {
        s.append(&rec.graph_id, rec)
            .map_err(|e| Failure::Usage(format!("writing JSONL: {e}")))?;
    }
    Ok(())
}

fn hi_text(hi: Option<usize>) -> String {
    hi.map_or("inf".into(), |h| h.to_string())
}

fn summary(rec: &ResultRecord) {
    let inv = &rec.invariants;
    let mut flags = Vec::new();
    for (on, name) in [
        (inv.is_tree, "tree"),
        (inv.is_block_graph, "block-graph"),
        (inv.is_caterpillar, "caterpillar"),
        (inv.is_lobster, "lobster"),
        (inv.is_pure_lobster, "pure-lobster"),
        (inv.contains_jewel, "contains-jewel"),
    ] {
        if on {
            flags.push(name);
        }
    }
    println!("graph   {} (n = {})", rec.graph_id, rec.n);
    println!("classes {}", if flags.is_empty() { "-".into() } else { flags.join(" ") });
    let exact = if rec.rules.exact { " exact" } else { "" };
    println!("rules   [{}, {}]{exact}", rec.rules.lo, hi_text(rec.rules.hi));
    for p in &rec.rules.provenance {
        let inputs: Vec<String> = p.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "  {:<8} {:>3}  {:<24} {}",
            p.contribution.kind,
            p.contribution.value,
            p.rule_id,
            inputs.join(" ")
        );
    }
    if let Some(o) = &rec.oracle {
        println!("oracle  reg = {} (tier {}, p = {})", o.reg, o.tier, o.p);
    }
    if let Some(why) = &rec.oracle_skipped {
        println!("oracle  skipped: {why}");
    }
}

fn record_failure(e: RecordError) -> Failure {
    match e {
        RecordError::Rules(e) => Failure::Inconsistent(format!("{e}\n{e:#?}")),
        RecordError::Containment { record, .. } => Failure::Inconsistent(format!(
            "{e_msg}\n{json}",
            e_msg = "oracle value outside the rule interval",
            json = serde_json::to_string_pretty(&record).unwrap_or_default()
        )),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Analyze { input, jsonl } => {
            let g = read_graph(&input)?;
            let mut sink = open_sink(&jsonl)?;
            let rec = analyze(&g).map_err(|e| Failure::Inconsistent(format!("{e}\n{e:#?}")))?;
            summary(&rec);
            append(&mut sink, &rec)
        }
        Command::Reg { input, p, tier, jsonl } => {
            let g = read_graph(&input)?;
            let mut sink = open_sink(&jsonl)?;
            let rec = analyze_with_oracle(&g, OracleConfig { p, tier }).map_err(record_failure)?;
            summary(&rec);
            append(&mut sink, &rec)
        }
        Command::Betti { input, p, tier } => {
            let g = read_graph(&input)?;
            let table = match tier {
                Tier::Hochster => best_labelling(&g, p)
                    .and_then(|h| initial_complex(&h, p))
                    .and_then(|c| betti_hochster(&c, p, false)),
                _ => betti_koszul(&g, p),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            println!(
                "{}",
                serde_json::to_string(&BettiJson::from(&table)).expect("plain data")
            );
            Ok(())
        }
        Command::ScanConjecture { max_n, p, jsonl } => scan(max_n, p, jsonl.as_deref()),
        Command::Verify { suite, max_n, p } => {
            let suites: Vec<Suite> = match suite {
                SuiteChoice::One(s) => vec![s],
                SuiteChoice::All => Suite::ALL.to_vec(),
            };
            let mut failed = 0;
            for s in suites {
                let report = run_suite(s, max_n.unwrap_or(s.default_max_n()), p);
                for c in &report.checks {
                    println!(
                        "{}",
                        serde_json::json!({"suite": report.suite, "check": c.name, "pass": c.pass, "detail": c.detail})
                    );
                }
                let bad = report.failures().count();
                println!(
                    "{} {} ({} checks, {} failed, max-n {})",
                    if bad == 0 { "PASS" } else { "FAIL" },
                    report.suite,
                    report.checks.len(),
                    bad,
                    report.max_n
                );
                failed += bad;
            }
            if failed > 0 {
                return Err(Failure::Verify(format!("{failed} checks failed")));
            }
            Ok(())
        }
        Command::Figures { jsonl } => {
            let mut sink = open_sink(&jsonl)?;
            for fig in figure_graphs() {
                let rec = analyze(&fig.graph).map_err(|e| Failure::Inconsistent(format!("{e}\n{e:#?}")))?;
                println!("== {}: {}", fig.name, fig.note);
                summary(&rec);
                append(&mut sink, &rec)?;
            }
            println!("note: figure graphs are rebuilt from their stated invariants, not from the drawings");
            Ok(())
        }
    }
}

fn scan(max_n: usize, p: u32, jsonl: Option<&Path>) -> Result<(), Failure> {
    let cache: BTreeMap<String, ResultRecord> = match jsonl {
        Some(path) => JsonlSink::load::<ResultRecord>(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
            .into_iter()
            .map(|r| (r.graph_id.clone(), r))
            .collect(),
        None => BTreeMap::new(),
    };
    let mut sink = jsonl
        .map(|p| JsonlSink::open(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))))
        .transpose()?;
    let mut write_error = None;
    let report = scan_conjecture(max_n, p, &cache, |rec| {
        if let Some(s) = sink.as_mut() {
            if let Err(e) = s.append(&rec.graph_id, rec) {
                write_error.get_or_insert(e);
            }
        }
    })
    .map_err(|e| match e {
        ScanError::Range(_) => Failure::Usage(e.to_string()),
        ScanError::Record(r) => record_failure(r),
        ScanError::Oracle { .. } => Failure::Verify(e.to_string()),
    })?;
    if let Some(e) = write_error {
        return Err(Failure::Usage(format!("writing JSONL: {e}")));
    }
    println!("trees scanned: {} (max-n {})", report.trees, report.max_n);
    for (n, k) in report.per_n.iter().enumerate().skip(1) {
        println!("  n = {n:>2}: {k} trees");
    }
    println!("trees with reg >= m + 2: {}", report.high.len());
    for r in &report.high {
        println!(
            "  {} n = {} m = {} reg = {} jewel = {}",
            r.graph_id, r.n, r.m, r.reg, r.contains_jewel
        );
    }
    println!(
        "proven direction (jewel => reg >= m + 2): {} violations",
        report.proven_violations.len()
    );
    println!(
        "converse (reg >= m + 2 => jewel): {} counterexamples",
        report.converse_counterexamples.len()
    );
    for r in &report.converse_counterexamples {
        println!("  counterexample {} n = {} m = {} reg = {}", r.graph_id, r.n, r.m, r.reg);
    }
    if !report.proven_violations.is_empty() {
        return Err(Failure::Verify("proven direction violated".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
