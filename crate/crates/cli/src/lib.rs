//! Command dispatch for the `mono` binary.
//!
//! [`dispatch`] never exits the process or prints; it returns a
//! [`CommandResult`] so that every command can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mono_core::chart::{self, CrossingSequence, Verdict};
use mono_core::factorization::{
    equivalent, normalize, normalize_with_moves, scramble_with_moves, Equivalence, Factorization,
};
use mono_core::io::{self, IoError};
use mono_core::orbit::{enumerate_orbit_with, OrbitConfig, OrbitError, SearchConfig, SweepConfig};
use mono_core::sblf::{classify, manifold_invariants};
use mono_core::sl2z::eval_word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandResult {
    pub exit: i32,
    pub report: String,
    /// `key=value` pairs; deterministic for identical inputs.
    pub machine: Vec<(String, String)>,
}

impl CommandResult {
    fn new(exit: i32) -> Self {
        CommandResult {
            exit,
            ..Default::default()
        }
    }

    fn failure(exit: i32, msg: impl Into<String>) -> Self {
        let mut r = Self::new(exit);
        r.report = msg.into();
        if !r.report.ends_with('\n') {
            r.report.push('\n');
        }
        r
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.report.push_str(text.as_ref());
        self.report.push('\n');
    }

    fn kv(&mut self, key: &str, value: impl ToString) {
        self.machine.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.machine
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn machine_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.machine {
            writeln!(out, "{k}={v}").unwrap();
        }
        out
    }

    /// Report followed by the machine-readable section as `# key=value`
    /// comment lines, so chart and factorization output stays parseable.
    pub fn render(&self) -> String {
        let mut out = self.report.clone();
        if !self.machine.is_empty() {
            out.push_str("# [machine]\n");
            for line in self.machine_text().lines() {
                writeln!(out, "# {line}").unwrap();
            }
        }
        out
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "mono",
    version,
    about = "Genus-one monodromy factorizations, charts and fibrations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the certificate (p, q, k) and the canonical form.
    Normalize {
        file: PathBuf,
        /// Also search for explicit Hurwitz moves to the canonical form.
        #[arg(long)]
        moves: bool,
        /// Node budget for the move search.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
    /// Decide Hurwitz equivalence of two factorizations.
    Equiv { a: PathBuf, b: PathBuf },
    /// Bounded breadth-first exploration of the Hurwitz orbit.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        entry_bound: i64,
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Double the entry bound up to this value when pruning blocks the search.
        #[arg(long)]
        escalate_to: Option<i64>,
    },
    /// Identify the total space of a fibration descriptor.
    Classify { descriptor: PathBuf },
    #[command(subcommand)]
    Chart(ChartCommand),
    /// Scramble canonical forms and check that certificates are recovered.
    Sweep(SweepArgs),
    /// Apply seeded random Hurwitz moves.
    Scramble {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        steps: usize,
        /// Write the scrambled factorization here instead of the report.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ChartCommand {
    /// Check the chart conditions and the counting identity.
    Validate { file: PathBuf },
    /// Emit the canonical chart N^p ⨿ (U1 U2)^{3q} U1^k.
    Canonical {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
        #[arg(short)]
        k: i64,
        /// Also write a DOT rendering to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Intersection word of a transverse path (file or inline `edge:+1 ...`).
    Word { chart: PathBuf, path: String },
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    max_p: u64,
    #[arg(long)]
    max_k: u64,
    #[arg(long)]
    seeds: usize,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value_t = 20_000)]
    guided_budget: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Treat scrambles whose move sequence could not be found as a failure.
    #[arg(long)]
    require_moves: bool,
}

pub fn dispatch<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let exit = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return CommandResult::failure(exit, e.render().to_string());
        }
    };
    let out = match cli.command {
        Command::Normalize {
            file,
            moves,
            budget,
        } => cmd_normalize(&file, moves, budget),
        Command::Equiv { a, b } => cmd_equiv(&a, &b),
        Command::Orbit {
            file,
            entry_bound,
            budget,
            jobs,
            escalate_to,
        } => cmd_orbit(&file, entry_bound, budget, jobs, escalate_to),
        Command::Classify { descriptor } => cmd_classify(&descriptor),
        Command::Chart(ChartCommand::Validate { file }) => cmd_chart_validate(&file),
        Command::Chart(ChartCommand::Canonical { p, q, k, dot }) => {
            cmd_chart_canonical(p, q, k, dot.as_deref())
        }
        Command::Chart(ChartCommand::Word { chart, path }) => cmd_chart_word(&chart, &path),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Scramble {
            file,
            seed,
            steps,
            output,
        } => cmd_scramble(&file, seed, steps, output.as_deref()),
    };
    out.unwrap_or_else(|r| r)
}

type Outcome = Result<CommandResult, CommandResult>;

fn invalid(e: impl std::fmt::Display) -> CommandResult {
    CommandResult::failure(EXIT_INVALID, format!("error: {e}"))
}

fn load(path: &Path) -> Result<Factorization, CommandResult> {
    io::read_factorization(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn cmd_normalize(file: &Path, want_moves: bool, budget: usize) -> Outcome {
    let f = load(file)?;
    let search = SearchConfig {
        node_budget: budget,
    };
    let nf = if want_moves {
        normalize_with_moves(&f, &search)
    } else {
        normalize(&f)
    }
    .map_err(invalid)?;
    let c = nf.certificate;
    let mut r = CommandResult::new(EXIT_OK);
    r.line(c.to_string());
    r.line(format!("canonical form: {}", nf.canonical));
    r.kv("p", c.p);
    r.kv("q", c.q);
    r.kv("k", c.k);
    r.kv("length", f.len());
    r.kv("boundary", c.boundary());
    if want_moves {
        match &nf.moves {
            Some(moves) => {
                let text = moves
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                r.line(format!("moves ({}): {text}", moves.len()));
                r.kv("moves", text);
            }
            None => {
                r.line(format!("no move sequence found within {budget} nodes"));
                r.kv("moves", "not_found");
                r.exit = EXIT_BUDGET;
            }
        }
    }
    Ok(r)
}

fn cmd_equiv(a: &Path, b: &Path) -> Outcome {
    let (fa, fb) = (load(a)?, load(b)?);
    let verdict = equivalent(&fa, &fb);
    let mut r = CommandResult::new(EXIT_OK);
    r.line(verdict.to_string());
    match verdict {
        Equivalence::Equivalent { .. } => r.kv("equivalent", true),
        Equivalence::NotEquivalent(_) => r.kv("equivalent", false),
        Equivalence::NotAdmissible { .. } => {
            r.exit = EXIT_INVALID;
            r.kv("equivalent", "undefined");
        }
    }
    Ok(r)
}

fn cmd_orbit(file: &Path, bound: i64, budget: usize, jobs: usize, ceiling: Option<i64>) -> Outcome {
    let f = load(file)?;
    let cfg = OrbitConfig {
        entry_bound: bound,
        node_budget: budget,
        jobs: jobs.max(1),
        escalation_ceiling: ceiling.unwrap_or(bound),
    };
    let report = enumerate_orbit_with(&f, &cfg).map_err(|e| match e {
        OrbitError::ZeroBudget | OrbitError::BoundBelowStart { .. } => {
            CommandResult::failure(EXIT_USAGE, format!("error: {e}"))
        }
        e => invalid(e),
    })?;
    let mut r = CommandResult::new(EXIT_OK);
    r.line(format!(
        "visited {} states (entry bound {}, {} escalations, {} pruned)",
        report.states_visited, report.entry_bound, report.escalations, report.pruned_by_bound
    ));
    if report.canonical_reached {
        r.line("canonical form reached");
    } else if report.falsifies() {
        r.line("orbit exhausted without reaching the canonical form");
        r.exit = EXIT_VIOLATION;
    } else {
        r.line("inconclusive: budget or entry bound exhausted");
        r.exit = EXIT_BUDGET;
    }
    r.kv("states_visited", report.states_visited);
    r.kv("canonical_reached", report.canonical_reached);
    r.kv("frontier_exhausted", report.frontier_exhausted);
    r.kv("pruned_by_bound", report.pruned_by_bound);
    r.kv("entry_bound", report.entry_bound);
    r.kv("escalations", report.escalations);
    if let Some(moves) = &report.witness_moves {
        let text = moves
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        r.line(format!("moves: {text}"));
        r.kv("moves", text);
    }
    Ok(r)
}

fn cmd_classify(path: &Path) -> Outcome {
    let text = io::read_file(path).map_err(invalid)?;
    let d = io::parse_descriptor(&text, path.parent())
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let c = classify(&d).map_err(invalid)?;
    let inv = manifold_invariants(&c.manifold).map_err(invalid)?;
    let mut r = CommandResult::new(EXIT_OK);
    r.line(format!("case ({}): {}", c.case, c.manifold));
    if c.blowups > 0 {
        let cands = c
            .candidates
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(" or ");
        r.line(format!(
            "after {} blow-ups; total space before blowing up: {cands}",
            c.blowups
        ));
    }
    r.line(format!("euler={} pi1={} b1={}", inv.euler, inv.pi1, inv.b1));
    let expected_euler = c.normalized_length as i64 + if d.has_round { 2 } else { 0 };
    if inv.euler != expected_euler {
        r.line(format!(
            "violation: euler characteristic {} differs from critical count {expected_euler}",
            inv.euler
        ));
        r.exit = EXIT_VIOLATION;
    }
    r.kv("case", c.case);
    r.kv("manifold", &c.manifold);
    r.kv("blowups", c.blowups);
    r.kv(
        "certificate",
        c.certificate
            .map(|x| x.to_string())
            .unwrap_or_else(|| "none".into()),
    );
    r.kv(
        "candidates",
        c.candidates
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("; "),
    );
    r.kv("euler", inv.euler);
    r.kv("pi1", inv.pi1);
    r.kv("b1", inv.b1);
    Ok(r)
}

fn load_chart(path: &Path) -> Result<chart::Chart, CommandResult> {
    let text = io::read_file(path).map_err(invalid)?;
    io::parse_chart(&text).map_err(|e: IoError| invalid(format!("{}: {e}", path.display())))
}

fn cmd_chart_validate(file: &Path) -> Outcome {
    let c = load_chart(file)?;
    let verdict = chart::validate(&c);
    let mut r = CommandResult::new(EXIT_OK);
    match &verdict {
        Verdict::Invalid(violations) => {
            r.exit = EXIT_INVALID;
            r.line(format!("invalid chart ({} violations)", violations.len()));
            for v in violations {
                r.line(format!("  {v}"));
            }
            r.kv("valid", false);
            r.kv("violations", violations.len());
            return Ok(r);
        }
        Verdict::Valid => r.line("valid chart"),
        Verdict::ValidWithHoops => r.line("valid chart (with hoops)"),
    }
    r.kv("valid", true);
    match chart::chart_counts(&c) {
        Ok(counts) => {
            r.line(format!(
                "black vertices c={}, signed degree-12 count p={}, boundary word {}",
                counts.c, counts.p_signed, counts.boundary_word
            ));
            r.kv("c", counts.c);
            r.kv("p_signed", counts.p_signed);
            r.kv("boundary_word", &counts.boundary_word);
        }
        Err(e @ chart::ChartError::CountingIdentity { .. }) => {
            r.line(format!("violation: {e}"));
            r.exit = EXIT_VIOLATION;
        }
        Err(e) => return Err(invalid(e)),
    }
    Ok(r)
}

fn cmd_chart_canonical(p: i64, q: i64, k: i64, dot: Option<&Path>) -> Outcome {
    let c = chart::canonical_chart(p, q, k)
        .map_err(|e| CommandResult::failure(EXIT_USAGE, format!("error: {e}")))?;
    let counts = chart::chart_counts(&c)
        .map_err(|e| CommandResult::failure(EXIT_VIOLATION, format!("violation: {e}")))?;
    let mut r = CommandResult::new(EXIT_OK);
    r.report = io::serialize_chart(&c);
    if let Some(path) = dot {
        std::fs::write(path, chart::to_dot(&c))
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
        r.kv("dot", path.display());
    }
    r.kv("c", counts.c);
    r.kv("p_signed", counts.p_signed);
    r.kv("boundary_word", &counts.boundary_word);
    Ok(r)
}

fn cmd_chart_word(chart_path: &Path, path: &str) -> Outcome {
    let c = load_chart(chart_path)?;
    let spec = if Path::new(path).is_file() {
        io::read_file(Path::new(path)).map_err(invalid)?
    } else {
        path.to_string()
    };
    let spec: String = spec
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let crossing: CrossingSequence = spec.parse().map_err(|e: String| invalid(e))?;
    let word = chart::intersection_word(&c, &crossing).map_err(invalid)?;
    let m = eval_word(&word);
    let mut r = CommandResult::new(EXIT_OK);
    r.line(format!("word: {word}"));
    r.line(format!("monodromy: {m}"));
    r.kv("word", &word);
    r.kv("monodromy", m);
    Ok(r)
}

fn cmd_sweep(args: &SweepArgs) -> Outcome {
    let mut cfg = SweepConfig::new(args.max_p, args.max_k, args.seeds);
    cfg.scramble_steps = args.steps;
    cfg.guided_budget = args.guided_budget;
    cfg.jobs = args.jobs.max(1);
    let summary = mono_core::orbit::verify_theorem_sweep(&cfg).map_err(invalid)?;
    let failures: Vec<_> = summary.failures().collect();
    let mut r = CommandResult::new(EXIT_OK);
    r.line(format!(
        "{} scrambles, {} certificate failures, {} without an explicit move sequence",
        summary.cases.len(),
        failures.len(),
        summary.inconclusive()
    ));
    for f in &failures {
        r.line(format!(
            "  FAILED expected {} seed {}: recovered {:?}",
            f.expected,
            f.seed,
            f.recovered.map(|c| c.to_string())
        ));
    }
    r.line(format!(
        "distinct lengths {} (formula predicts {})",
        summary.distinct_lengths, summary.distinct_length_formula
    ));
    r.kv("cases", summary.cases.len());
    r.kv("failures", failures.len());
    r.kv("inconclusive", summary.inconclusive());
    r.kv("distinct_lengths", summary.distinct_lengths);
    if !summary.passed() {
        r.exit = EXIT_VIOLATION;
    } else if args.require_moves && summary.inconclusive() > 0 {
        r.exit = EXIT_BUDGET;
    }
    Ok(r)
}

fn cmd_scramble(file: &Path, seed: u64, steps: usize, output: Option<&Path>) -> Outcome {
    let f = load(file)?;
    let (sc, moves) = scramble_with_moves(&f, seed, steps);
    let text = io::serialize_factorization(&sc);
    let mut r = CommandResult::new(EXIT_OK);
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
            r.line(format!("wrote {} entries to {}", sc.len(), path.display()));
        }
        None => r.report = text,
    }
    r.kv("seed", seed);
    r.kv("steps", moves.len());
    r.kv("length", sc.len());
    r.kv("max_entry_bits", sc.max_abs_entry().bits());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_appends_commented_machine_section() {
        let mut r = CommandResult::new(EXIT_OK);
        r.line("hello");
        r.kv("a", 1);
        r.kv("b", "x y");
        assert_eq!(r.render(), "hello\n# [machine]\n# a=1\n# b=x y\n");
        assert_eq!(r.machine_text(), "a=1\nb=x y\n");
        assert_eq!(r.get("b"), Some("x y"));
        assert_eq!(r.get("c"), None);
    }

    #[test]
    fn empty_machine_section_is_omitted() {
        let r = CommandResult::failure(EXIT_USAGE, "bad");
        assert_eq!(r.render(), "bad\n");
    }

    #[test]
    fn help_and_version_exit_zero() {
        for flag in ["--help", "--version"] {
            let r = dispatch(["mono", flag]);
            assert_eq!(r.exit, EXIT_OK);
            assert!(!r.report.is_empty());
        }
    }
}
