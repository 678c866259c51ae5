//! `canon`: canonical bases, completion and proof enumeration for bounded
//! ground equational presentations.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use canon::completion::{audit_with, run_completion, CompletionError, DEFAULT_MAX_STEPS};
use canon::formula::{parse_presentation, Presentation};
use canon::oracle::{
    enumerate_proofs, infer_signature, EnumerationBounds, Oracle, OracleError, DEFAULT_PROOF_COUNT,
    DEFAULT_PROOF_DEPTH, DEFAULT_TERM_SIZE,
};
use canon::ordering::{preset, OrderingConfig};
use canon::proof::{assumptions, Proof};
use canon::term::TermPrecedence;
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_FALSE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BOUNDS: u8 = 3;
const EXIT_NONTERMINATION: u8 = 4;
const EXIT_DISEQUATION: u8 = 5;

#[derive(Parser)]
#[command(
    name = "canon",
    version,
    about = "Canonical bases of bounded ground presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Proof ordering preset.
    #[arg(long, global = true, default_value = "completion")]
    preset: String,
    /// Ordering config file (overrides --preset).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Symbol precedence, highest first, e.g. `s,a,b,c`.
    #[arg(long, global = true)]
    prec: Option<String>,
    /// Largest term size (nodes); numerals up to bound - 1.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_SIZE)]
    bound: usize,
    /// Largest proof depth.
    #[arg(long, global = true, default_value_t = DEFAULT_PROOF_DEPTH)]
    depth: usize,
    /// Safety valve on the number of proofs built.
    #[arg(long, global = true, default_value_t = DEFAULT_PROOF_COUNT)]
    max_proofs: usize,
    /// Completion step limit.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
    /// Write the completion trace here (JSON if the name ends in `.json`).
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    /// Print terms without numeral sugar.
    #[arg(long, global = true)]
    raw: bool,
    /// Admit projection nodes in proofs.
    #[arg(long, global = true)]
    with_projection: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical basis and flags.
    Canonical { input: PathBuf },
    /// Ground completion with audits.
    Complete { input: PathBuf },
    /// Evaluate one predicate; exit 1 when false.
    Check {
        input: PathBuf,
        #[arg(long, value_enum)]
        predicate: Predicate,
    },
    /// List proofs from the presentation.
    Enumerate {
        input: PathBuf,
        /// Only minimal proofs.
        #[arg(long)]
        minimal: bool,
    },
    /// Bounded theory slice.
    Closure { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    Saturated,
    Complete,
    Reduced,
    Canonical,
    UniqueMinimal,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::new(EXIT_BOUNDS, e)
    }
}

struct Setup {
    input: Presentation,
    prec: TermPrecedence,
    cfg: OrderingConfig,
    bounds: EnumerationBounds,
    sugar: bool,
}

fn load(path: &Path, opts: &Opts) -> Result<Setup, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let input = parse_presentation(&text)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let prec = match &opts.prec {
        Some(list) => TermPrecedence::parse(list).map_err(|e| Failure::new(EXIT_PARSE, e))?,
        None => TermPrecedence::default_for(&infer_signature(&input)),
    };
    let cfg = match &opts.config {
        Some(file) => {
            let text = fs::read_to_string(file)
                .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", file.display())))?;
            OrderingConfig::from_toml(&text, prec.clone())
                .map_err(|e| Failure::new(EXIT_PARSE, e))?
        }
        None => preset(&opts.preset, prec.clone()).map_err(|e| Failure::new(EXIT_PARSE, e))?,
    };
    let bounds = EnumerationBounds {
        max_term_size: opts.bound,
        max_proof_depth: opts.depth,
        max_proof_count: opts.max_proofs,
        with_projection: opts.with_projection,
    };
    bounds.validate()?;
    Ok(Setup {
        input,
        prec,
        cfg,
        bounds,
        sugar: !opts.raw,
    })
}

fn header(out: &mut String, command: &str, s: &Setup, opts: &Opts) {
    let _ = writeln!(out, "command: {command}");
    let _ = writeln!(out, "ordering: {}", s.cfg.label());
    let _ = writeln!(out, "precedence: {}", s.prec);
    let _ = writeln!(out, "bound: {}", s.bounds.max_term_size);
    let _ = writeln!(out, "depth: {}", s.bounds.max_proof_depth);
    let _ = writeln!(out, "max-proofs: {}", s.bounds.max_proof_count);
    let _ = writeln!(out, "max-steps: {}", opts.max_steps);
    let _ = writeln!(out, "projection: {}", s.bounds.with_projection);
}

fn list(p: &Presentation, sugar: bool) -> String {
    let items: Vec<String> = p.iter().map(|f| f.display(sugar).to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let opts = &cli.opts;
    let mut out = String::new();
    match &cli.command {
        Command::Canonical { input } => {
            let s = load(input, opts)?;
            header(&mut out, "canonical", &s, opts);
            let oracle = Oracle::for_presentation(&s.input, s.cfg.clone(), s.bounds)?;
            let report = oracle.report(&s.input)?;
            let _ = writeln!(out, "{}", report.body(s.sugar));
            Ok((out, 0))
        }
        Command::Check { input, predicate } => {
            let s = load(input, opts)?;
            let oracle = Oracle::for_presentation(&s.input, s.cfg.clone(), s.bounds)?;
            let a = &s.input;
            let (name, value) = match predicate {
                Predicate::Saturated => ("saturated", oracle.is_saturated(a)?),
                Predicate::Complete => ("complete", oracle.is_complete(a)?),
                Predicate::Reduced => ("reduced", oracle.is_reduced(a)?),
                Predicate::Canonical => ("canonical", oracle.is_canonical(a)?),
                Predicate::UniqueMinimal => ("unique-minimal", oracle.check_unique_minimal(a)?),
            };
            header(&mut out, "check", &s, opts);
            let _ = writeln!(out, "{name}: {value}");
            Ok((out, if value { 0 } else { EXIT_FALSE }))
        }
        Command::Closure { input } => {
            let s = load(input, opts)?;
            let oracle = Oracle::for_presentation(&s.input, s.cfg.clone(), s.bounds)?;
            let slice = oracle.closure(&s.input)?;
            header(&mut out, "closure", &s, opts);
            let _ = writeln!(out, "inconsistent: {}", slice.inconsistent);
            let _ = writeln!(out, "theorems: {}", slice.theorems.len());
            for f in slice.theorems.iter() {
                let _ = writeln!(out, "{}", f.display(s.sugar));
            }
            Ok((out, 0))
        }
        Command::Enumerate { input, minimal } => {
            let s = load(input, opts)?;
            let proofs: Vec<Proof> = if *minimal {
                let oracle = Oracle::for_presentation(&s.input, s.cfg.clone(), s.bounds)?;
                oracle.minimal(&s.input)?.iter().cloned().collect()
            } else {
                let sig = infer_signature(&s.input);
                enumerate_proofs(&s.input, &sig, s.bounds)?
                    .iter()
                    .cloned()
                    .collect()
            };
            header(&mut out, "enumerate", &s, opts);
            let _ = writeln!(out, "minimal: {minimal}");
            let _ = writeln!(out, "proofs: {}", proofs.len());
            for p in &proofs {
                let gamma: Presentation = assumptions(p).into_iter().collect();
                let _ = writeln!(
                    out,
                    "{}\tconclusion: {}\tassumptions: {}",
                    p.display(s.sugar),
                    p.conclusion().display(s.sugar),
                    list(&gamma, s.sugar)
                );
            }
            Ok((out, 0))
        }
        Command::Complete { input } => {
            let s = load(input, opts)?;
            let trace = match run_completion(&s.input, &s.prec, opts.max_steps) {
                Ok(t) => t,
                Err(e @ CompletionError::Disequation(_)) => {
                    return Err(Failure::new(EXIT_DISEQUATION, e))
                }
                Err(e) => return Err(Failure::new(EXIT_PARSE, e)),
            };
            if let Some(path) = &opts.trace {
                let body = if path.extension().is_some_and(|x| x == "json") {
                    trace.to_json()
                } else {
                    trace.to_text(s.sugar)
                };
                fs::write(path, body)
                    .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
            }
            header(&mut out, "complete", &s, opts);
            let _ = writeln!(out, "limit: {}", list(&trace.limit, s.sugar));
            let _ = writeln!(out, "steps: {}", trace.steps.len());
            let _ = writeln!(out, "terminated: {}", trace.terminated);
            if !trace.terminated {
                return Ok((out, EXIT_NONTERMINATION));
            }
            let cfg = OrderingConfig::completion(s.prec.clone());
            let oracle = Oracle::for_presentation(&trace.union, cfg, s.bounds)?;
            let audit = audit_with(&trace, &oracle).map_err(|e| Failure::new(EXIT_BOUNDS, e))?;
            let _ = writeln!(out, "good: {}", audit.good);
            let _ = writeln!(out, "fair: {}", audit.fair);
            let _ = writeln!(out, "clean: {}", audit.clean);
            let _ = writeln!(out, "limit-canonical: {}", audit.limit_canonical);
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("canon: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
