mod commands;
mod render;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opde::families::AppellParams;
use opde::pde::HypergeometricPde;
use opde::verify::Failure;
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "opde", version, about = "Exact monic orthogonal polynomial families of hypergeometric-type PDEs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Admissibility, self-adjointness and the discriminant.
    Check,
    /// Weight-factor cases matching the equation.
    Classify,
    /// Family vectors and their relation matrices per degree.
    Build,
    /// Rodrigues-formula polynomials per degree.
    Rodrigues,
    /// Run every invariant suite.
    Verify,
}

#[derive(clap::Args, Debug, Clone)]
struct Opts {
    /// Equation JSON file, or `-` for stdin.
    #[arg(long, global = true, value_name = "FILE|-")]
    pde: Option<String>,
    /// Weight JSON file for `rodrigues` with `--pde`.
    #[arg(long, global = true, value_name = "FILE")]
    weight: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FamilyKind::Monic)]
    family: FamilyKind,
    /// Appell parameter, e.g. `2` or `1/2`.
    #[arg(long, global = true, value_name = "p/q")]
    alpha: Option<String>,
    #[arg(long, global = true, value_name = "p/q")]
    beta: Option<String>,
    /// Degree bound.
    #[arg(short = 'N', long = "degree", global = true, default_value_t = 6)]
    n: usize,
    /// Defaults to `pretty` for `verify` and `json` otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Evaluate sequentially instead of in parallel.
    #[arg(long, global = true)]
    sequential: bool,
    /// Test hook: corrupt one recurrence entry before verifying.
    #[arg(long, global = true, hide = true)]
    inject_fault: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Monic,
    #[value(name = "appell-F")]
    AppellF,
    Koornwinder,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Pretty,
}

/// Where the equation comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Pde(Box<HypergeometricPde>),
    Appell(AppellParams),
}

impl Source {
    pub fn pde(&self) -> HypergeometricPde {
        match self {
            Source::Pde(p) => (**p).clone(),
            Source::Appell(p) => opde::families::appell_pde(p),
        }
    }
}

/// Resolved command-line configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub source: Source,
    pub weight: Option<opde::weight::WeightSpec>,
    pub family: FamilyKind,
    pub n: usize,
    pub format: Format,
    pub exec: opde::exec::Execution,
    pub fault: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error in {source_name}: {message}")]
    Parse { source_name: String, message: String },
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Core(#[from] opde::Error),
    #[error("verification failed: {0}")]
    Verify(Failure),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use opde::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io(_) => 1,
            CliError::Core(E::Parse(_) | E::InvalidParameter(_)) => 1,
            CliError::Core(E::NotAdmissible { .. }) => 2,
            CliError::Core(E::NotSelfAdjoint) => 3,
            CliError::Verify(_) => 4,
            CliError::Core(_) => 5,
        }
    }
}

fn read_source(path: &str) -> Result<(String, String), CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(("<stdin>".into(), s))
    } else {
        let s = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
        Ok((path.into(), s))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(name: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { source_name: name.into(), message: e.to_string() })
}

/// `OPDE_MAX_DEGREE`, when set, caps the requested degree.
fn capped_degree(n: usize) -> Result<usize, CliError> {
    match std::env::var("OPDE_MAX_DEGREE") {
        Ok(v) => {
            let cap: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("OPDE_MAX_DEGREE must be a nonnegative integer, got {v:?}")))?;
            if n > cap {
                eprintln!("warning: degree {n} capped to {cap} by OPDE_MAX_DEGREE");
            }
            Ok(n.min(cap))
        }
        Err(_) => Ok(n),
    }
}

fn resolve(cmd: Command, o: &Opts) -> Result<Config, CliError> {
    let params = match (&o.alpha, &o.beta) {
        (Some(a), Some(b)) => Some(AppellParams::parse(a, b)?),
        (None, None) => None,
        _ => return Err(CliError::Usage("--alpha and --beta must be given together".into())),
    };
    let source = match (&o.pde, params) {
        (Some(_), Some(_)) => return Err(CliError::Usage("use either --pde or --alpha/--beta, not both".into())),
        (Some(path), None) => {
            let (name, text) = read_source(path)?;
            Source::Pde(Box::new(parse_json(&name, &text)?))
        }
        (None, Some(p)) => Source::Appell(p),
        (None, None) => return Err(CliError::Usage("an equation is required: --pde <file|-> or --alpha/--beta".into())),
    };
    if o.family != FamilyKind::Monic && !matches!(source, Source::Appell(_)) {
        return Err(CliError::Usage("--family appell-F and koornwinder need --alpha/--beta".into()));
    }
    let weight = match &o.weight {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Some(parse_json(&path.display().to_string(), &text)?)
        }
        None => None,
    };
    let default_format = if cmd == Command::Verify { Format::Pretty } else { Format::Json };
    Ok(Config {
        source,
        weight,
        family: o.family,
        n: capped_degree(o.n)?,
        format: o.format.unwrap_or(default_format),
        exec: if o.sequential { opde::exec::Execution::Sequential } else { opde::exec::Execution::Parallel },
        fault: o.inject_fault,
    })
}

fn emit(doc: &render::Node, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&doc.to_json()).expect("json values serialize") + "\n",
        Format::Latex => doc.to_latex(),
        Format::Pretty => doc.to_pretty(),
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = resolve(cli.command, &cli.opts)?;
    let (doc, outcome) = match cli.command {
        Command::Check => commands::check(&cfg),
        Command::Classify => commands::classify(&cfg)?,
        Command::Build => (commands::build(&cfg)?, Ok(())),
        Command::Rodrigues => (commands::rodrigues(&cfg)?, Ok(())),
        Command::Verify => commands::verify(&cfg)?,
    };
    emit(&doc, cfg.format, cli.opts.out.as_ref())?;
    outcome
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
