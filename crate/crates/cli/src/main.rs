//! `krasner`: verify, classify, construct and audit finite Krasner
//! (m,n)-hyperrings stored as JSON structure files.
//!
//! Exit codes: 0 success, 1 a predicate or axiom failed, 2 usage or input
//! error. Reports go to stdout (or `-o`), diagnostics to stderr.

mod render;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krasner_core::audit::{audit_theorems_with, TheoremId};
use krasner_core::axioms::verify_axioms_with;
use krasner_core::constructions::{product, quotient};
use krasner_core::corpus::{self, serialize_structure};
use krasner_core::ideals::{self, enumerate_hyperideals_with};
use krasner_core::s_theory::{is_s_prime, is_s_primary_with};
use krasner_core::{ElemSet, Error, KrasnerStructure, Limits, Mode, PredicateOutcome, SPrimaryReading};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "krasner", version, about = "Finite Krasner (m,n)-hyperring laboratory")]
struct Cli {
    #[command(flatten)]
    out: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report to this file instead of stdout.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest carrier the axiom check accepts.
    #[arg(long, global = true, default_value_t = Limits::default().max_verify_size)]
    max_verify_size: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Copy)]
struct ModeArg {
    /// Hyperideal mode: `weak` drops the subhypergroup solvability condition.
    #[arg(long)]
    mode: Option<Mode>,
}

impl ModeArg {
    fn resolve(self) -> Mode {
        let mode = self.mode.unwrap_or_default();
        if mode == Mode::Weak {
            eprintln!("note: weak hyperideal mode (zero, f-closure, g-absorption); use --mode strict for the full definition");
        }
        mode
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms.
    Verify {
        path: PathBuf,
        /// Also check that the designated identity is a scalar identity.
        #[arg(long)]
        check_identity: bool,
    },
    /// List the hyperideals.
    Ideals {
        path: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
        /// Omit the whole carrier.
        #[arg(long)]
        proper: bool,
    },
    /// Evaluate every predicate on a set and a multiplicative subset.
    Classify {
        path: PathBuf,
        /// Comma-separated labels of the candidate hyperideal.
        #[arg(long)]
        ideal: String,
        /// Comma-separated labels of the multiplicative subset S.
        #[arg(long)]
        mult: Option<String>,
        #[command(flatten)]
        mode: ModeArg,
        #[arg(long, default_value_t = SPrimaryReading::default())]
        reading: SPrimaryReading,
    },
    /// Both radicals of a hyperideal.
    Radical {
        path: PathBuf,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Quotient by a hyperideal.
    Quotient {
        path: PathBuf,
        #[arg(long)]
        ideal: String,
        /// Also write the quotient as a structure file.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Direct product of two structures.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Audit the theorems over structure files and directories.
    Audit {
        paths: Vec<PathBuf>,
        /// Include the built-in corpus.
        #[arg(long)]
        builtin: bool,
        /// Comma-separated theorem slugs (default: all).
        #[arg(long, value_delimiter = ',')]
        theorems: Vec<TheoremId>,
        #[command(flatten)]
        mode: ModeArg,
        #[arg(long, default_value_t = SPrimaryReading::default())]
        reading: SPrimaryReading,
        /// List the available theorem slugs and exit.
        #[arg(long)]
        list: bool,
    },
    /// Write a generated structure in canonical form.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// One of the two built-in examples.
    Example {
        #[arg(long, value_enum)]
        which: Example,
    },
    /// Z_k with singleton m-ary sums and the n-ary product.
    Zk {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Orbits of Z_k under a group of units.
    Kq {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        units: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    K33,
    K24,
}

/// A failure that ends the run with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type Run = Result<bool, Usage>;

/// `{structure, labels, report}`, the JSON envelope of every command.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    structure: &'a str,
    labels: &'a [String],
    report: &'a T,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Run {
    let out = &cli.out;
    let limits = Limits {
        max_verify_size: out.max_verify_size,
        ..Limits::default()
    };
    match &cli.command {
        Command::Verify { path, check_identity } => {
            let s = load(path)?;
            let report = verify_axioms_with(&s, *check_identity, &limits)?;
            emit(out, &s, &report, || render::axioms(&s, &report))?;
            Ok(report.passes())
        }
        Command::Ideals { path, mode, proper } => {
            let s = load(path)?;
            let mode = mode.resolve();
            let list = enumerate_hyperideals_with(&s, mode, *proper, &limits)?;
            emit(out, &s, &list, || render::sets(&s, &list))?;
            Ok(true)
        }
        Command::Classify { path, ideal, mult, mode, reading } => {
            let s = load(path)?;
            let ideal = labels(&s, ideal)?;
            let mult = mult.as_deref().map(|m| labels(&s, m)).transpose()?;
            let report = classify(&s, ideal, mult, mode.resolve(), *reading);
            emit(out, &s, &report, || render::classification(&s, &report))?;
            Ok(report.hyperideal.holds())
        }
        Command::Radical { path, ideal, mode } => {
            let s = load(path)?;
            let ideal = labels(&s, ideal)?;
            let mode = mode.resolve();
            let report = RadicalReport {
                ideal,
                powers: ideals::radical_powers(&s, ideal)?,
                primes: ideals::radical_primes_with(&s, ideal, mode, &limits)?,
            };
            emit(out, &s, &report, || render::radical(&s, &report))?;
            Ok(report.powers == report.primes)
        }
        Command::Quotient { path, ideal, write } => {
            let s = load(path)?;
            let ideal = labels(&s, ideal)?;
            let report = match quotient(&s, ideal) {
                Ok(q) => {
                    if let Some(target) = write {
                        write_file(target, &serialize_structure(&q.quotient))?;
                    }
                    ConstructionReport::built(&q.quotient, Some(q.cosets), &q.report)
                }
                Err(e @ (Error::NotAPartition { .. } | Error::WellDefinedness(_))) => ConstructionReport::failed(e),
                Err(e) => return Err(e.into()),
            };
            emit(out, &s, &report, || render::construction(&s, &report))?;
            Ok(report.ok())
        }
        Command::Product { left, right, write } => {
            let (a, b) = (load(left)?, load(right)?);
            let p = product(&a, &b)?;
            let axioms = verify_axioms_with(&p, p.one().is_some(), &limits)?;
            if let Some(target) = write {
                write_file(target, &serialize_structure(&p))?;
            }
            let report = ConstructionReport::built(&p, None, &axioms);
            emit(out, &p, &report, || render::construction(&p, &report))?;
            Ok(report.ok())
        }
        Command::Audit { paths, builtin, theorems, mode, reading, list } => {
            if *list {
                let text: String = TheoremId::ALL
                    .iter()
                    .map(|t| format!("{:<30} {}\n", t.slug(), t.statement()))
                    .collect();
                write_out(out, &text)?;
                return Ok(true);
            }
            let mut structures = if *builtin { corpus::standard_corpus() } else { Vec::new() };
            for path in corpus::collect_paths(paths)? {
                structures.push(load(&path)?);
            }
            if structures.is_empty() {
                eprintln!("warning: empty corpus, no hypothesis can be met");
            }
            let mode = mode.resolve();
            let report = audit_theorems_with(&structures, theorems, mode, *reading, &limits)?;
            let text = render::audit(&report);
            match out.format {
                Format::Text => write_out(out, &text)?,
                Format::Json => write_out(out, &to_json(&report)?)?,
            }
            Ok(!report.violated())
        }
        Command::Gen { kind } => {
            let s = match kind {
                GenKind::Example { which: Example::K33 } => corpus::k33(),
                GenKind::Example { which: Example::K24 } => corpus::k24(),
                GenKind::Zk { k, m, n } => corpus::build_zk_ring(*k, *m, *n)?,
                GenKind::Kq { k, units, m, n } => corpus::build_krasner_quotient(*k, units, *m, *n)?,
            };
            write_out(out, &serialize_structure(&s))?;
            Ok(true)
        }
    }
}

fn load(path: &Path) -> Result<KrasnerStructure, Usage> {
    corpus::load_file(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

/// Comma-separated labels to a set; unknown labels are usage errors.
fn labels(s: &KrasnerStructure, text: &str) -> Result<ElemSet, Usage> {
    text.split(',')
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| s.index_of(l).ok_or_else(|| Usage(format!("unknown label {l:?} in {}", s.name()))))
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Usage> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Usage(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn emit<T: Serialize>(out: &Output, s: &KrasnerStructure, report: &T, text: impl FnOnce() -> String) -> Result<(), Usage> {
    let body = match out.format {
        Format::Text => text(),
        Format::Json => to_json(&Envelope {
            structure: s.name(),
            labels: s.labels(),
            report,
        })?,
    };
    write_out(out, &body)
}

fn write_out(out: &Output, text: &str) -> Result<(), Usage> {
    match &out.output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Usage> {
    std::fs::write(path, text).map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct Classification {
    ideal: ElemSet,
    mult: Option<ElemSet>,
    mode: Mode,
    reading: SPrimaryReading,
    hyperideal: PredicateOutcome,
    prime: PredicateOutcome,
    primary: PredicateOutcome,
    s_prime: PredicateOutcome,
    s_primary: PredicateOutcome,
}

fn classify(
    s: &KrasnerStructure,
    ideal: ElemSet,
    mult: Option<ElemSet>,
    mode: Mode,
    reading: SPrimaryReading,
) -> Classification {
    let no_mult = || PredicateOutcome::inapplicable("no multiplicative subset given");
    Classification {
        ideal,
        mult,
        mode,
        reading,
        hyperideal: ideals::is_hyperideal(s, ideal, mode),
        prime: ideals::is_prime(s, ideal, mode),
        primary: ideals::is_primary(s, ideal, mode),
        s_prime: mult.map_or_else(no_mult, |m| is_s_prime(s, ideal, m, mode)),
        s_primary: mult.map_or_else(no_mult, |m| is_s_primary_with(s, ideal, m, mode, reading)),
    }
}

#[derive(Serialize)]
struct RadicalReport {
    ideal: ElemSet,
    powers: ElemSet,
    primes: ElemSet,
}

#[derive(Serialize)]
struct ConstructionReport {
    built: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cosets: Option<Vec<ElemSet>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    axioms: Option<krasner_core::AxiomReport>,
}

impl ConstructionReport {
    fn built(s: &KrasnerStructure, cosets: Option<Vec<ElemSet>>, axioms: &krasner_core::AxiomReport) -> Self {
        ConstructionReport {
            built: true,
            error: None,
            name: Some(s.name().to_string()),
            labels: Some(s.labels().to_vec()),
            cosets,
            axioms: Some(axioms.clone()),
        }
    }

    fn failed(e: Error) -> Self {
        ConstructionReport {
            built: false,
            error: Some(e.to_string()),
            name: None,
            labels: None,
            cosets: None,
            axioms: None,
        }
    }

    fn ok(&self) -> bool {
        self.axioms.as_ref().is_some_and(|a| a.passes())
    }
}
