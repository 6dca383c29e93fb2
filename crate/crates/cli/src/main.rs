use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use twist_cert::{run, Command, Flags, RunConfig, EXIT_INPUT};

/// Exact certificates for groups generated by positive multi-twists.
///
/// Exit codes: 0 certified positive, 10 certified negative, 20 unknown,
/// 1 input error.
#[derive(Debug, Parser)]
#[command(name = "twist-cert", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// System or chart document (JSON).
    input: Option<PathBuf>,
    /// Word such as "B A^-1"; the rightmost term acts first.
    #[arg(long)]
    word: Option<String>,
    #[arg(long = "max-len")]
    max_len: Option<u32>,
    /// Power of A in the torus model.
    #[arg(long)]
    m: Option<u64>,
    /// Power of B in the torus model.
    #[arg(long)]
    n: Option<u64>,
    /// Rational "p/q".
    #[arg(long)]
    lambda: Option<String>,
    /// Rational "p/q"; sets mu_ij for i < j and its reciprocal.
    #[arg(long)]
    mu: Option<String>,
    /// Intersection numbers of the propagated curve with every system curve,
    /// comma separated.
    #[arg(long)]
    seed: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = RunConfig {
        command: args.command,
        input_path: args.input,
        flags: Flags {
            word: args.word,
            max_len: args.max_len,
            m: args.m,
            n: args.n,
            lambda: args.lambda,
            mu: args.mu,
            seed: args.seed,
        },
    };
    match run(&cfg) {
        Ok((doc, code)) => {
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{doc}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
