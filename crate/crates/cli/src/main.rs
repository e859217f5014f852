//! `fset` — construct and machine-verify F-sets of monic irreducible
//! polynomials over prime fields.
//!
//! One subcommand per library operation: family member generation,
//! full family verification, factorization, multiplicative order,
//! irreducibility, closure computation, and the tower probe.
//!
//! Exit codes are stable API:
//!
//! * 0 — success (for `verify`, all checks passed)
//! * 1 — a verification check failed
//! * 2 — residue gate rejected the prime
//! * 3 — degree cap exceeded
//! * 4 — invalid input (parse failure, bad precondition, usage error)
//! * 5 — computation budget exhausted
//! * 6 — closure seed or probe base not monic irreducible

mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use fset_core::config::{
    default_degree_cap, Limits, DEFAULT_EDF_SEED, DEFAULT_ITER_CAP, DEFAULT_RHO_BUDGET,
};
use fset_core::construct::{self, MemberKind};
use fset_core::error::{Error, Result};
use fset_core::factor;
use fset_core::field::FieldSpec;
use fset_core::fset::{self, ClosureConfig, WorklistOrder};
use fset_core::poly::Polynomial;

use output::ConfigEcho;

#[derive(Parser)]
#[command(
    name = "fset",
    version,
    about = "Construct and verify F-sets of monic irreducible polynomials over F_p",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Degree cap (default: 4374 for p = 2, 486 otherwise).
    #[arg(long, global = true, env = "FSET_DEGREE_CAP")]
    degree_cap: Option<usize>,

    /// Closure worklist iteration cap, per run.
    #[arg(long, global = true, env = "FSET_ITER_CAP", default_value_t = DEFAULT_ITER_CAP)]
    iter_cap: u64,

    /// Seed for randomized equal-degree splitting.
    #[arg(long, global = true, env = "FSET_EDF_SEED", default_value_t = DEFAULT_EDF_SEED)]
    edf_seed: u64,

    /// Iteration budget for integer factorization.
    #[arg(long, global = true, env = "FSET_FACTOR_BUDGET", default_value_t = DEFAULT_RHO_BUDGET)]
    factor_budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    F,
    G,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Print one member of the tower family.
    Gen(GenArgs),
    /// Verify the truncated tower family end to end.
    Verify(VerifyArgs),
    /// Factor a polynomial into monic irreducibles.
    Factor(PolyArgs),
    /// Compute the multiplicative order of an irreducible polynomial.
    Order(PolyArgs),
    /// Test a polynomial for irreducibility.
    Irred(PolyArgs),
    /// Close seed polynomials under "irreducible factor of P minus its
    /// constant term".
    Closure(ClosureArgs),
    /// Probe the tower base(x^(t^l)) for the self-sustaining pattern.
    Probe(ProbeArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Prime modulus.
    #[arg(short)]
    p: u64,

    /// Member shape.
    #[arg(long, value_enum)]
    kind: Kind,

    /// Tower level (kinds f and g).
    #[arg(long, required_if_eq_any([("kind", "f"), ("kind", "g")]))]
    ell: Option<u32>,

    /// Linear constant: the member x + c (kind linear).
    #[arg(
        long,
        allow_hyphen_values = true,
        required_if_eq("kind", "linear"),
        value_parser = clap::value_parser!(i64).range(-1..=1)
    )]
    c: Option<i64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Prime modulus.
    #[arg(short)]
    p: u64,

    /// Top tower level to verify.
    #[arg(short = 'L')]
    max_level: u32,
}

#[derive(Args)]
struct PolyArgs {
    /// Prime modulus.
    #[arg(short)]
    p: u64,

    /// Polynomial, e.g. "x^2+x+1" or "coeffs:1,1,1" (ascending).
    poly: String,
}

#[derive(Args)]
struct ClosureArgs {
    /// Prime modulus.
    #[arg(short)]
    p: u64,

    /// Monic irreducible seed polynomials.
    #[arg(required = true)]
    seeds: Vec<String>,

    /// Write the membership graph to FILE as a DOT digraph.
    #[arg(long, value_name = "FILE")]
    dot: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ProbeArgs {
    /// Prime modulus.
    #[arg(short)]
    p: u64,

    /// Monic irreducible base polynomial.
    #[arg(long)]
    base: String,

    /// Substitution exponent (at least 2).
    #[arg(short, value_parser = clap::value_parser!(u64).range(2..))]
    t: u64,

    /// Top level to probe.
    #[arg(short = 'L')]
    max_level: u32,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            if let Err(e) = write_stdout(&out) {
                // A closed pipe downstream is not our failure.
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return code;
                }
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn write_stdout(s: &str) -> std::io::Result<()> {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    lock.write_all(s.as_bytes())?;
    lock.flush()
}

/// The stable mapping from library errors to process exit codes.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::GateFailed { .. } => 2,
        Error::DegreeCapExceeded { .. } => 3,
        Error::NotPrime(_)
        | Error::ParseError { .. }
        | Error::ConstantInput
        | Error::ZeroConstantTerm
        | Error::NotIrreducible => 4,
        Error::OrderBudgetExceeded(_) | Error::FactorizationTimeout { .. } => 5,
        Error::SeedNotIrreducible { .. } | Error::SeedNotMonic { .. } => 6,
        Error::ZeroInverse | Error::ClosednessFailure(_) => 1,
    }
}

/// Each command returns its stdout payload (newline-terminated) and the
/// exit code; nothing prints until the command has fully succeeded.
fn run(cli: &Cli) -> Result<(String, ExitCode)> {
    match &cli.command {
        Command::Gen(args) => cmd_gen(cli, args),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Factor(args) => cmd_factor(cli, args),
        Command::Order(args) => cmd_order(cli, args),
        Command::Irred(args) => cmd_irred(cli, args),
        Command::Closure(args) => cmd_closure(cli, args),
        Command::Probe(args) => cmd_probe(cli, args),
    }
}

/// Flags and environment folded over the per-prime defaults.
fn effective_limits(p: u64, cli: &Cli) -> Limits {
    Limits {
        degree_cap: cli.degree_cap.unwrap_or_else(|| default_degree_cap(p)),
        iter_cap: cli.iter_cap,
        edf_seed: cli.edf_seed,
        rho_budget: cli.factor_budget,
    }
}

fn config_echo(p: u64, cli: &Cli) -> ConfigEcho {
    let limits = effective_limits(p, cli);
    ConfigEcho {
        p,
        degree_cap: limits.degree_cap,
        iter_cap: limits.iter_cap,
        edf_seed: limits.edf_seed,
        factor_budget: limits.rho_budget,
        format: match cli.format {
            Format::Text => "text",
            Format::Json => "json",
        },
    }
}

fn parse_poly(field: FieldSpec, text: &str) -> Result<Polynomial> {
    Polynomial::parse(field, text)
}

fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<(String, ExitCode)> {
    let field = FieldSpec::new(args.p)?;
    let limits = effective_limits(args.p, cli);
    let (kind, index) = match args.kind {
        Kind::F => (MemberKind::FTower, i64::from(args.ell.unwrap())),
        Kind::G => (MemberKind::GTower, i64::from(args.ell.unwrap())),
        Kind::Linear => (MemberKind::Linear, args.c.unwrap()),
    };
    let member = construct::make_member(field, kind, index, limits.degree_cap)?;
    let out = match cli.format {
        Format::Text => format!("{}\n", member.poly),
        Format::Json => {
            let report = output::GenReport {
                p: args.p,
                kind: kind.label(),
                level: match kind {
                    MemberKind::Linear => None,
                    _ => Some(args.ell.unwrap()),
                },
                c: match kind {
                    MemberKind::Linear => Some(index),
                    _ => None,
                },
                poly: member.poly.to_string(),
                degree: member.poly.degree().unwrap_or(0),
                config: config_echo(args.p, cli),
            };
            format!("{}\n", output::to_json(&report))
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<(String, ExitCode)> {
    let field = FieldSpec::new(args.p)?;
    let limits = effective_limits(args.p, cli);
    let verification = fset::verify_family(field, args.max_level, &limits)?;
    let out = match cli.format {
        Format::Text => output::render_verify_text(&verification),
        Format::Json => {
            let report = output::VerifyReport::new(&verification, config_echo(args.p, cli));
            format!("{}\n", output::to_json(&report))
        }
    };
    let code = if verification.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    Ok((out, code))
}

fn cmd_factor(cli: &Cli, args: &PolyArgs) -> Result<(String, ExitCode)> {
    let field = FieldSpec::new(args.p)?;
    let limits = effective_limits(args.p, cli);
    let poly = parse_poly(field, &args.poly)?;
    if poly.is_zero() {
        return Err(Error::ParseError {
            position: 0,
            message: "the zero polynomial has no factorization".into(),
        });
    }
    let result = factor::factorize_seeded(&poly, limits.edf_seed);
    let out = match cli.format {
        Format::Text => format!(
            "{}\n",
            output::render_factorization(result.unit, &result.factors)
        ),
        Format::Json => {
            let report = output::FactorReport {
                p: args.p,
                poly: poly.to_string(),
                unit: result.unit.value(),
                factors: result
                    .factors
                    .iter()
                    .map(|(f, m)| output::FactorEntry {
                        poly: f.to_string(),
                        multiplicity: *m,
                    })
                    .collect(),
                config: config_echo(args.p, cli),
            };
            format!("{}\n", output::to_json(&report))
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_order(cli: &Cli, args: &PolyArgs) -> Result<(String, ExitCode)> {
    let field = FieldSpec::new(args.p)?;
    let limits = effective_limits(args.p, cli);
    let poly = parse_poly(field, &args.poly)?;
    let result = factor::poly_order_with(&poly, limits.rho_budget)?;
    let out = match cli.format {
        Format::Text => format!("{}\n", result.order),
        Format::Json => {
            let report = output::OrderReport {
                p: args.p,
                poly: poly.to_string(),
                degree: result.degree,
                order: result.order.to_string(),
                config: config_echo(args.p, cli),
            };
            format!("{}\n", output::to_json(&report))
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_irred(cli: &Cli, args: &PolyArgs) -> Result<(String, ExitCode)> {
    let field = FieldSpec::new(args.p)?;
    let poly = parse_poly(field, &args.poly)?;
    let irreducible = factor::is_irreducible(&poly);
    let out = match cli.format {
        Format::Text => format!("{irreducible}\n"),
        Format::Json => {
            let report = output::IrredReport {
                p: args.p,
                poly: poly.to_string(),
                degree: poly.degree(),
                irreducible,
                config: config_echo(args.p, cli),
            };
            format!("{}\n", output::to_json(&report))
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_closure(cli: &Cli, args: &ClosureArgs) -> Result<(String, ExitCode)> {
    let field = FieldSpec::new(args.p)?;
    let limits = effective_limits(args.p, cli);
    let seeds = args
        .seeds
        .iter()
        .map(|s| parse_poly(field, s))
        .collect::<Result<Vec<_>>>()?;
    let cfg = ClosureConfig {
        order: WorklistOrder::DegreeAscending,
        limits,
    };
    let state = fset::closure(field, &seeds, &cfg)?;
    if let Some(path) = &args.dot {
        if let Err(e) = std::fs::write(path, state.to_dot()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return Ok((String::new(), ExitCode::from(1)));
        }
    }
    let out = match cli.format {
        Format::Text => output::render_closure_text(&state),
        Format::Json => {
            let report = output::ClosureReport::new(&state, &seeds, config_echo(args.p, cli));
            format!("{}\n", output::to_json(&report))
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_probe(cli: &Cli, args: &ProbeArgs) -> Result<(String, ExitCode)> {
    let field = FieldSpec::new(args.p)?;
    let limits = effective_limits(args.p, cli);
    let base = parse_poly(field, &args.base)?;
    let report = fset::tower_probe(field, &base, args.t, args.max_level, &limits)?;
    let out = match cli.format {
        Format::Text => output::render_probe_text(&report),
        Format::Json => {
            let dto = output::ProbeReportDto::new(&report, config_echo(args.p, cli));
            format!("{}\n", output::to_json(&dto))
        }
    };
    // Exploration, not assertion: exit 0 whatever the verdict.
    Ok((out, ExitCode::SUCCESS))
}
