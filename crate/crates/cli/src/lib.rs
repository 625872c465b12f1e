//! Command-line front end: argument model, dispatch and report rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use synchro_core::automaton::{
    cerny_automaton, greedy_reset_word, is_strongly_connected,
    is_synchronizing, parse_dfa, random_dfa, shortest_reset_word_with_limit, to_dot, write_dfa,
    DEFAULT_ENUMERATION_BUDGET, DEFAULT_EXACT_LIMIT,
};
use synchro_core::batch::Mode;
use synchro_core::probe::{self, bound_verdict, cerny_bound, cubic_bound, ProbeOptions};
use synchro_core::rowmon::{matrix_of_word, nonzero_columns, rank};
use synchro_core::suites::{self, exhaustive_bound, BoundSummary, SuiteReport};
use synchro_core::{Dfa, Word};

/// Version of the structured report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "synchro", version, about = "Reset words and row monomial matrices of synchronizing automata")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Target state q
    #[arg(long, global = true)]
    pub q: Option<usize>,
    /// Largest state count for the exact reset-word search
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_LIMIT)]
    pub limit: usize,
    /// Largest number of automata an enumeration may visit
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub budget: u128,
    /// Worker threads for batch runs (1 = sequential)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit a single JSON document instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output here instead of stdout
    #[arg(short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synchronization test and shortest reset word
    Check { file: PathBuf },
    /// Print the matrix of a word
    Matrix {
        file: PathBuf,
        #[arg(long, default_value = "")]
        word: String,
        /// Print the automaton as a DOT graph instead
        #[arg(long)]
        dot: bool,
    },
    /// |R(u)| and span dimension along the prefixes of a reset word
    Trace {
        file: PathBuf,
        /// Reset word (default: the shortest one)
        #[arg(long)]
        word: Option<String>,
    },
    /// Run the cell-allocation probe, prefix-column check and bound check
    Probe {
        file: PathBuf,
        #[arg(long)]
        word: Option<String>,
    },
    /// Run the property suites for the matrix lemmas
    Lemmas {
        /// Random cases for the rank/image and sum-condition suites
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
        /// Random samples for the larger shapes and equation instances
        #[arg(long, default_value_t = 1_000)]
        samples: usize,
    },
    /// Generate an automaton file
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate every table of a size and aggregate shortest reset lengths
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum)]
        filter: Option<Filter>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Cerny,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    Sync,
}

/// Result of one command: rendered text, structured document and whether a
/// finding should be flagged through the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub document: Value,
    pub flagged: bool,
}

impl Outcome {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.document).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

fn document(command: &str, config: Value, result: impl Serialize) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "result": result,
    })
}

fn load(file: &PathBuf) -> Result<Dfa> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    parse_dfa(&text).with_context(|| format!("parsing {}", file.display()))
}

fn parse_word(dfa: &Dfa, text: &str) -> Result<Word> {
    let word = Word::parse(text)?;
    dfa.check_word(&word)?;
    Ok(word)
}

fn mode(common: &Common) -> Mode {
    if common.jobs == Some(1) {
        Mode::Sequential
    } else {
        Mode::Auto
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    match &cli.command {
        Command::Check { file } => check(&load(file)?, common),
        Command::Matrix { file, word, dot } => matrix(&load(file)?, word, *dot, common),
        Command::Trace { file, word } => trace(&load(file)?, word.as_deref(), common),
        Command::Probe { file, word } => probe_cmd(&load(file)?, word.as_deref(), common),
        Command::Lemmas { cases, samples } => lemmas(*cases, *samples, common),
        Command::Gen { kind, n, k, dot } => gen(*kind, *n, *k, *dot, common),
        Command::Enum { n, k, filter } => enumerate(*n, *k, *filter, common),
    }
}

#[derive(Serialize)]
struct CheckResult {
    n: usize,
    k: usize,
    strongly_connected: bool,
    synchronizing: bool,
    exact: bool,
    reset_word: Option<String>,
    reset_length: Option<usize>,
    reset_target: Option<usize>,
    greedy_length: Option<usize>,
    cerny_bound: usize,
    cubic_bound: usize,
    bound_status: probe::BoundStatus,
}

fn check(dfa: &Dfa, common: &Common) -> Result<Outcome> {
    let n = dfa.n();
    let synchronizing = is_synchronizing(dfa);
    let exact = n <= common.limit.min(64);
    let word = if exact {
        shortest_reset_word_with_limit(dfa, common.limit)?
    } else {
        greedy_reset_word(dfa)
    };
    let greedy = greedy_reset_word(dfa);
    let verdict = bound_verdict(n, if exact { word.as_ref().map(Word::len) } else { None });
    let target = match &word {
        Some(w) => dfa.reset_target(w)?,
        None => None,
    };
    let result = CheckResult {
        n,
        k: dfa.k(),
        strongly_connected: is_strongly_connected(dfa),
        synchronizing,
        exact,
        reset_word: word.as_ref().map(|w| w.render(dfa.k())),
        reset_length: word.as_ref().map(Word::len),
        reset_target: target,
        greedy_length: greedy.as_ref().map(Word::len),
        cerny_bound: cerny_bound(n),
        cubic_bound: cubic_bound(n),
        bound_status: if exact || !synchronizing {
            verdict.status
        } else {
            probe::BoundStatus::WithinBound
        },
    };
    let mut text = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(text, "states: {n}, letters: {}", dfa.k());
    let _ = writeln!(text, "strongly connected: {}", yes(result.strongly_connected));
    let _ = writeln!(text, "synchronizing: {}", yes(synchronizing));
    if let (Some(w), Some(len)) = (&result.reset_word, result.reset_length) {
        let label = if exact { "shortest reset word" } else { "greedy reset word" };
        let _ = writeln!(text, "{label}: {w} (length {len})");
        let _ = writeln!(text, "reset target: {}", target.unwrap_or_default());
    }
    if let Some(g) = result.greedy_length {
        let _ = writeln!(text, "greedy length: {g}");
    }
    let _ = writeln!(
        text,
        "(n-1)^2 = {}, (n^3-n)/6 = {}: {}",
        result.cerny_bound,
        result.cubic_bound,
        status_label(result.bound_status)
    );
    if verdict.exceeds() {
        let _ = writeln!(text, "FINDING: shortest reset word exceeds (n-1)^2");
    }
    let config = json!({ "limit": common.limit });
    Ok(Outcome {
        text,
        flagged: verdict.exceeds(),
        document: document("check", config, &result),
    })
}

fn status_label(status: probe::BoundStatus) -> &'static str {
    match status {
        probe::BoundStatus::WithinBound => "within bound",
        probe::BoundStatus::ExceedsBound => "EXCEEDS BOUND",
        probe::BoundStatus::NotSynchronizing => "not synchronizing",
    }
}

fn matrix(dfa: &Dfa, word: &str, dot: bool, common: &Common) -> Result<Outcome> {
    if dot {
        let text = to_dot(dfa);
        return Ok(Outcome {
            document: document("matrix", json!({ "dot": true }), json!({ "dot": text })),
            text,
            flagged: false,
        });
    }
    let word = parse_word(dfa, word)?;
    let m = matrix_of_word(dfa, &word)?;
    let q = common.q.unwrap_or(0);
    if q >= dfa.n() {
        bail!("--q {q} is not a state of 0..{}", dfa.n());
    }
    let columns = nonzero_columns(&m);
    let mut text = format!("M_{} =\n{}", word.render(dfa.k()), m.grid());
    let _ = writeln!(text, "targets: {}", m.compact());
    let _ = writeln!(text, "R(u) = {:?}, rank {}", columns.members(), rank(&m));
    let _ = writeln!(text, "column {q} nonzero: {}", columns.contains(q));
    let result = json!({
        "word": word.render(dfa.k()),
        "targets": m.targets(),
        "nonzero_columns": columns.members(),
        "rank": rank(&m),
        "q": q,
        "column_q_nonzero": columns.contains(q),
    });
    Ok(Outcome {
        text,
        flagged: false,
        document: document("matrix", json!({ "q": q }), result),
    })
}

fn reset_word_for(dfa: &Dfa, word: Option<&str>, common: &Common) -> Result<Word> {
    match word {
        Some(w) => parse_word(dfa, w),
        None => shortest_reset_word_with_limit(dfa, common.limit)?
            .context("automaton is not synchronizing"),
    }
}

fn trace(dfa: &Dfa, word: Option<&str>, common: &Common) -> Result<Outcome> {
    let s = reset_word_for(dfa, word, common)?;
    let t = probe::prefix_trace(dfa, &s)?;
    let mut text = format!("reset word: {} (length {})\n", s.render(dfa.k()), s.len());
    let _ = writeln!(text, "{:>6}  {:<20} {:>5} {:>5}", "length", "prefix", "|R|", "dim");
    for r in &t.records {
        let _ = writeln!(text, "{:>6}  {:<20} {:>5} {:>5}", r.length, r.prefix, r.image_size, r.dimension);
    }
    let violations = t.violations();
    for v in &violations {
        let _ = writeln!(text, "VIOLATION: {v}");
    }
    let config = json!({ "word": s.render(dfa.k()), "limit": common.limit });
    Ok(Outcome {
        text,
        flagged: !violations.is_empty(),
        document: document("trace", config, json!({ "prefix_trace": t, "violations": violations })),
    })
}

fn probe_cmd(dfa: &Dfa, word: Option<&str>, common: &Common) -> Result<Outcome> {
    let options = ProbeOptions {
        word: word.map(|w| parse_word(dfa, w)).transpose()?,
        q: common.q,
        exact_limit: common.limit,
    };
    let Some(report) = probe::probe(dfa, &options)? else {
        bail!("automaton is not synchronizing; nothing to probe");
    };
    let mut text = format!(
        "reset word: {} (length {}), q = {}\n",
        report.reset_word, report.reset_length, report.q
    );
    let _ = writeln!(
        text,
        "prefixes with |R| > 1: {}, cells: {} in columns {:?}",
        report.prefixes_with_rank_gt1, report.matching.cell_count, report.matching.cell_columns
    );
    for a in &report.matching.assignments {
        let cell = a.cell.map_or("-".to_string(), |(r, c)| format!("({r},{c})"));
        let _ = writeln!(text, "  prefix {:>3} |R| = {} cell {cell}", a.prefix_length, a.image_size);
    }
    if let (Some(rank), Some(expected)) = (report.independence_rank, report.independence_expected) {
        let _ = writeln!(text, "independence: exact rank {rank} of {expected}");
    }
    for v in &report.verdicts {
        let status = match v.status {
            probe::StepStatus::Holds => "holds",
            probe::StepStatus::Fails => "fails",
            probe::StepStatus::NotApplicable => "n/a",
        };
        let _ = writeln!(text, "{:<14} {:<6} {}", v.step, status, v.detail);
    }
    for note in &report.notes {
        let _ = writeln!(text, "note: {note}");
    }
    let config = json!({ "word": word, "q": common.q, "limit": common.limit });
    Ok(Outcome {
        text,
        flagged: report.flagged(),
        document: document("probe", config, &report),
    })
}

fn lemmas(cases: usize, samples: usize, common: &Common) -> Result<Outcome> {
    let mode = mode(common);
    let seed = common.seed;
    let reports: Vec<SuiteReport> = vec![
        suites::image_suite(cases, seed, mode),
        suites::sum_suite(cases, seed, mode),
        suites::spanning_suite(6, samples, seed, mode),
        suites::equation_suite(samples, seed, mode),
        suites::trace_suite(samples, 6, seed, mode),
    ];
    let mut text = String::new();
    for r in &reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(text, "{:<14} {status}  {} cases, {} violations", r.name, r.cases, r.violations);
        for m in &r.measurements {
            let _ = writeln!(text, "    {} = {}", m.key, m.value);
        }
        for f in &r.failures {
            let _ = writeln!(text, "    failure: {f}");
        }
    }
    let flagged = reports.iter().any(|r| !r.passed());
    let config = json!({ "cases": cases, "samples": samples, "seed": seed });
    Ok(Outcome {
        text,
        flagged,
        document: document("lemmas", config, &reports),
    })
}

fn gen(kind: GenKind, n: usize, k: usize, dot: bool, common: &Common) -> Result<Outcome> {
    let dfa = match kind {
        GenKind::Cerny => {
            if k != 2 {
                bail!("the Černý automaton has exactly two letters (got --k {k})");
            }
            cerny_automaton(n)?
        }
        GenKind::Random => random_dfa(n, k, common.seed)?,
    };
    let text = if dot { to_dot(&dfa) } else { write_dfa(&dfa) };
    let config = json!({ "kind": format!("{kind:?}").to_lowercase(), "n": n, "k": k, "seed": common.seed });
    let result = json!({
        "n": dfa.n(),
        "k": dfa.k(),
        "transitions": (0..dfa.k()).map(|a| dfa.letter_map(a).to_vec()).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        text,
        flagged: false,
        document: document("gen", config, result),
    })
}

#[derive(Serialize)]
struct EnumResult {
    /// Automata passing the filter.
    visited: usize,
    #[serde(flatten)]
    summary: BoundSummary,
}

fn enumerate(n: usize, k: usize, filter: Option<Filter>, common: &Common) -> Result<Outcome> {
    let summary = exhaustive_bound(n, k, common.budget, common.limit.min(64), mode(common))?;
    let visited = match filter {
        Some(Filter::Sync) => summary.synchronizing,
        None => usize::try_from(summary.tables).unwrap_or(usize::MAX),
    };
    let mut text = format!("n = {n}, k = {k}: {} tables\n", summary.tables);
    if filter.is_some() {
        let _ = writeln!(text, "filter: synchronizing");
    }
    let _ = writeln!(text, "synchronizing: {}", summary.synchronizing);
    if let Some(max) = summary.max_length {
        let _ = writeln!(text, "max shortest reset length: {max} (attained by {})", summary.attaining_max);
    }
    for (len, count) in summary.histogram.iter().enumerate().filter(|(_, c)| **c > 0) {
        let _ = writeln!(text, "  length {len:>3}: {count}");
    }
    let _ = writeln!(text, "(n-1)^2 = {}: {} exceeding", summary.cerny_bound, summary.exceeding);
    if let Some(table) = &summary.first_exceeding {
        let _ = writeln!(text, "FINDING: first exceeding table {table:?}");
    }
    let config = json!({
        "n": n, "k": k,
        "filter": filter.map(|_| "sync"),
        "budget": common.budget.to_string(),
        "limit": common.limit,
    });
    let flagged = summary.exceeding > 0;
    Ok(Outcome {
        text,
        flagged,
        document: document("enum", config, EnumResult { visited, summary }),
    })
}

/// Writes `output` to `-o` or stdout.
pub fn emit(common: &Common, output: &str) -> Result<()> {
    match &common.output {
        Some(path) => fs::write(path, output).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

/// Configures the global worker pool from `--jobs`.
pub fn configure_pool(common: &Common) -> Result<()> {
    #[cfg(feature = "parallel")]
    if let Some(jobs) = common.jobs.filter(|&j| j > 1) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker pool")?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = common;
    Ok(())
}
