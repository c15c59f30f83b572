mod commands;
mod document;
mod error;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pidmat::oracle::{OracleConfig, DEFAULT_DET_BOUND};

use commands::Outcome;
use document::{load, same_ring, Operands};
use error::CliError;

/// Divisor theory of nonsingular 2x2 matrices over Z and F_p[x].
///
/// Matrix files are JSON documents such as
/// {"ring":{"kind":"int"},"matrix":[["450","0"],["-1350","67500"]]} or
/// {"ring":{"kind":"polyfp","p":5},"matrix":[[[1,1],[0]],[[0],[2,0,1]]]}.
/// Reports go to stdout as JSON, summaries to stderr.
///
/// Exit codes: 0 success or true, 1 false or absent, 2 input error,
/// 3 self-check failure, 4 non-prime modulus, 5 limit exceeded.
#[derive(Debug, Parser)]
#[command(name = "pidmat", version)]
struct Cli {
    /// Largest |det| accepted by the oracle subcommands.
    #[arg(long, env = "PIDMAT_ORACLE_BOUND", default_value_t = DEFAULT_DET_BOUND, global = true)]
    oracle_bound: u64,

    /// Let a unit P witness clause (ii) in oracle-check.
    #[arg(long, global = true)]
    permissive_clause_ii: bool,

    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smith normal form with transforms P, Q such that P * A * Q is diagonal.
    Snf { matrix: PathBuf },
    /// Left gcd of A and B with its Smith form and cofactors.
    Leftgcd { a: PathBuf, b: PathBuf },
    /// Whether A and B are left coprime (exit 1 if not).
    Coprime { a: PathBuf, b: PathBuf },
    /// Whether B left-divides A (exit 1 if not).
    Divides { b: PathBuf, a: PathBuf },
    /// Prime factorizations of the invariant factors.
    Spectrum { matrix: PathBuf },
    /// Factor B = S * T with S the adequate part of B with respect to A.
    AdequatePart {
        b: PathBuf,
        a: PathBuf,
        /// Compute the right adequate part instead (B = T * S).
        #[arg(long)]
        right: bool,
    },
    /// Whether every left divisor of S has a nontrivial left gcd with A.
    Theorem2 { a: PathBuf, s: PathBuf },
    /// The divisor criterion for a left divisor S of B, plus the transfer-matrix condition.
    Lemma3 { a: PathBuf, b: PathBuf, s: PathBuf },
    /// Enumerate left divisors of an integer matrix in Hermite form.
    OracleDivisors {
        b: PathBuf,
        /// Include the identity.
        #[arg(long)]
        include_units: bool,
    },
    /// Check both adequacy clauses for B = S * T against A by enumeration.
    OracleCheck { b: PathBuf, s: PathBuf, t: PathBuf, a: PathBuf },
}

fn operands(paths: &[&Path]) -> Result<Operands, CliError> {
    same_ring(paths.iter().map(|p| load(p)).collect::<Result<_, _>>()?)
}

fn integers(paths: &[&Path]) -> Result<Vec<pidmat::Mat2<num_bigint::BigInt>>, CliError> {
    match operands(paths)? {
        Operands::Int(ms) => Ok(ms),
        Operands::Poly(_) => Err(CliError::Input("oracle subcommands accept integer matrices only".into())),
    }
}

macro_rules! generic {
    ($paths:expr, |$ms:ident| $body:expr) => {
        match operands($paths)? {
            Operands::Int($ms) => $body,
            Operands::Poly($ms) => $body,
        }
    };
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let config = OracleConfig { det_bound: cli.oracle_bound, permissive_clause_ii: cli.permissive_clause_ii };
    match &cli.command {
        Command::Snf { matrix } => generic!(&[matrix], |ms| commands::snf_cmd(&ms[0])),
        Command::Leftgcd { a, b } => generic!(&[a, b], |ms| commands::leftgcd_cmd(&ms[0], &ms[1])),
        Command::Coprime { a, b } => generic!(&[a, b], |ms| commands::coprime_cmd(&ms[0], &ms[1])),
        Command::Divides { b, a } => generic!(&[b, a], |ms| commands::divides_cmd(&ms[0], &ms[1])),
        Command::Spectrum { matrix } => generic!(&[matrix], |ms| commands::spectrum_cmd(&ms[0])),
        Command::AdequatePart { b, a, right } => {
            generic!(&[b, a], |ms| commands::adequate_part_cmd(&ms[0], &ms[1], *right))
        }
        Command::Theorem2 { a, s } => generic!(&[a, s], |ms| commands::theorem2_cmd(&ms[0], &ms[1])),
        Command::Lemma3 { a, b, s } => generic!(&[a, b, s], |ms| commands::lemma3_cmd(&ms[0], &ms[1], &ms[2])),
        Command::OracleDivisors { b, include_units } => {
            let ms = integers(&[b])?;
            commands::oracle_divisors_cmd(&ms[0], *include_units, &config)
        }
        Command::OracleCheck { b, s, t, a } => {
            let ms = integers(&[b, s, t, a])?;
            commands::oracle_check_cmd(&ms[0], &ms[1], &ms[2], &ms[3], &config)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&out.report)
            } else {
                serde_json::to_string(&out.report)
            };
            println!("{}", text.expect("reports are plain JSON values"));
            eprintln!("{}", out.summary);
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("pidmat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
