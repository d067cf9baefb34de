//! `asai`: single-datum queries, classification scans and the oracle suite.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "asai", version, about = "Asai L-factors and distinction invariants of cuspidal representations")]
struct Cli {
    /// Output format; defaults to text for queries and csv for scans.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants e_o, N, q_o^N, q_Eo, banality and the orders of X_o.
    Invariants {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        ell: u64,
    },
    /// The Asai L-factor in characteristic 0 or ell.
    Lfactor {
        #[command(flatten)]
        datum: DatumArgs,
        /// 0 for Qbar_ell, or a prime ell for Fbar_ell.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Lifts of a regular character modulo ell and their duality.
    Lifts(LiftArgs),
    /// Classification table over ranges of parameters.
    Scan(ScanArgs),
    /// Run the brute-force oracle suite.
    Verify {
        #[arg(long)]
        max_modulus: Option<u64>,
        #[arg(long)]
        parallel: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args, Debug)]
pub struct DatumArgs {
    /// Size of the residue field of F_o.
    #[arg(long)]
    pub qo: BigUint,
    #[arg(long)]
    pub n: u32,
    /// Ramification index e(F/F_o).
    #[arg(long)]
    pub e_ffo: u32,
    /// e(pi).
    #[arg(long)]
    pub e: u32,
    /// f(pi).
    #[arg(long)]
    pub f: u32,
    /// e_sigma(pi).
    #[arg(long)]
    pub e_sigma: u32,
    /// The datum is distinguished (the default).
    #[arg(long, conflicts_with_all = ["twist_order", "not_distinguished"])]
    pub distinguished: bool,
    /// The datum is chi-distinguished with chi(varpi_o) = zeta(order, exponent).
    #[arg(long, requires = "twist_exponent", conflicts_with = "not_distinguished")]
    pub twist_order: Option<u64>,
    #[arg(long, requires = "twist_order")]
    pub twist_exponent: Option<u64>,
    /// No unramified twist of the datum is distinguished.
    #[arg(long)]
    pub not_distinguished: bool,
    #[arg(long)]
    pub non_supercuspidal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DualArg {
    /// sigma-self-duality for the pair of fields with q = q_o^2.
    Sigma,
    /// plain self-duality over the field of size q.
    #[value(name = "self")]
    SelfDual,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    /// q_o for --dual sigma, q for --dual self.
    #[arg(long, visible_alias = "q")]
    pub qo: BigUint,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub ell: u64,
    /// Index of the character of l^x.
    #[arg(long)]
    pub theta: BigUint,
    #[arg(long, value_enum)]
    pub dual: DualArg,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// q_o values: `a..b` (inclusive), `a,b,c` or `a`; non odd prime powers are dropped.
    #[arg(long)]
    pub qo_range: String,
    /// n values, same syntax.
    #[arg(long)]
    pub n_range: String,
    /// Primes ell, same syntax.
    #[arg(long)]
    pub ell_set: String,
    #[arg(long)]
    pub non_supercuspidal: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_USAGE),
            };
        }
    };
    match commands::run(&cli.command, cli.format) {
        Ok(out) => {
            if let Err(e) = emit(&out.rendered, cli.output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(commands::EXIT_USAGE);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(s: &str, path: Option<&std::path::Path>) -> std::io::Result<()> {
    use std::io::Write;
    match path {
        Some(p) => std::fs::write(p, s),
        None => std::io::stdout().lock().write_all(s.as_bytes()),
    }
}
