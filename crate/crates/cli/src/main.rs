use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use p3bundles_cli::{run, Axes, Axis, Command, Format, Params, Request};
use p3bundles_core::verify::{Formula, Suite};

/// Stability, cohomology and moduli calculator for rank 2 and rank 3 bundles
/// on P3 built from surfaces containing a line.
#[derive(Parser)]
#[command(name = "p3bundles", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: FormatArg,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Cohom,
    Classify,
    Chern,
    Thresholds,
    Moduli,
}

impl From<Target> for Command {
    fn from(t: Target) -> Self {
        match t {
            Target::Cohom => Command::Cohom,
            Target::Classify => Command::Classify,
            Target::Chern => Command::Chern,
            Target::Thresholds => Command::Thresholds,
            Target::Moduli => Command::Moduli,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// h0, h1, h2 and chi of O_S(aL + bC + jH) on a degree-k surface.
    Cohom(ParamArgs),
    /// Stability verdict and reason for a construction.
    Classify(ParamArgs),
    /// Chern classes and expected dimension.
    Chern(ParamArgs),
    /// Vanishing and global generation thresholds.
    Thresholds(ParamArgs),
    /// dim Y, h1/h2 of End E and dim M at the constructed bundle.
    Moduli(ParamArgs),
    /// Evaluate a command over a grid; axes take `lo..hi` or a single value.
    Sweep(SweepArgs),
    /// Run the invariant suites over the default grids.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    rank: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<i64>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(value_enum)]
    of: Target,
    #[arg(long, allow_hyphen_values = true)]
    rank: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<Axis>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run (repeatable); all suites by default.
    #[arg(long = "suite", value_parser = parse_suite)]
    suites: Vec<Suite>,
    /// Perturb one formula by a constant, as FORMULA=DELTA.
    #[arg(long, value_parser = parse_shift)]
    shift: Option<(Formula, i64)>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_shift(s: &str) -> Result<(Formula, i64), String> {
    let (name, delta) = s.split_once('=').ok_or("expected FORMULA=DELTA")?;
    let formula = Formula::from_name(name).ok_or_else(|| {
        let names: Vec<_> = Formula::ALL.iter().map(|f| f.name()).collect();
        format!("unknown formula {name:?}; expected one of {}", names.join(", "))
    })?;
    let delta = delta.parse().map_err(|e| format!("bad delta {delta:?}: {e}"))?;
    Ok((formula, delta))
}

impl From<ParamArgs> for Params {
    fn from(p: ParamArgs) -> Self {
        Params { rank: p.rank, k: p.k, nu: p.nu, c1: p.c1, a: p.a, b: p.b, l: p.l, j: p.j }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let query = |command, p: ParamArgs| Request::Query { command, params: p.into() };
    let request = match cli.command {
        Cmd::Cohom(p) => query(Command::Cohom, p),
        Cmd::Classify(p) => query(Command::Classify, p),
        Cmd::Chern(p) => query(Command::Chern, p),
        Cmd::Thresholds(p) => query(Command::Thresholds, p),
        Cmd::Moduli(p) => query(Command::Moduli, p),
        Cmd::Sweep(s) => Request::Sweep {
            command: s.of.into(),
            axes: Axes { rank: s.rank, k: s.k, nu: s.nu, c1: s.c1, a: s.a, b: s.b, l: s.l, j: s.j },
        },
        Cmd::Verify(v) => Request::Verify { suites: v.suites, shift: v.shift },
    };
    match run(&request, format) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.body.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
