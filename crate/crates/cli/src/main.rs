use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use seifert_cli::{
    cmd_dedekind, cmd_delta, cmd_lambda, cmd_lens, cmd_plumb, cmd_prism, cmd_verify, CliError, Outcome, Policy,
    EXIT_USAGE,
};

const DEFAULT_BOUND: i64 = 8;

/// Exact delta-invariants of Seifert rational homology spheres over RP^2.
#[derive(Parser)]
#[command(name = "seifert-delta", version, allow_negative_numbers = true)]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a plain-text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// How the pin^c sign on the trivial-holonomy half is fixed.
    #[arg(long, global = true, value_enum, default_value_t = Policy::Unresolved)]
    policy: Policy,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every spin^c structure of S(b; (a1,b1), ...) with its delta-invariant.
    Delta {
        /// Seifert data such as "1;(2,1),(2,1)" or a JSON object.
        #[arg(allow_hyphen_values = true)]
        spec: String,
    },
    /// delta-invariants of the lens space L(a,b); all labels unless U is given.
    #[command(allow_negative_numbers = true)]
    Lens { a: i64, b: i64, u: Option<i64> },
    /// The Dedekind sum s(b,a).
    #[command(allow_negative_numbers = true)]
    Dedekind { b: i64, a: i64 },
    /// The sum lambda(b,a;n).
    #[command(allow_negative_numbers = true)]
    Lambda { b: i64, a: i64, n: i64 },
    /// Character table data of the metacyclic group with parameters (m, r).
    #[command(allow_negative_numbers = true)]
    Prism { m: i64, r: i64 },
    /// Plumbing lattice of the double cover and the signature relation.
    Plumb {
        #[arg(allow_hyphen_values = true)]
        spec: String,
    },
    /// Run a verification suite (arith, lens, invariants, prism, plumbing, all).
    #[command(allow_negative_numbers = true)]
    Verify {
        suite: String,
        bound: Option<i64>,
        #[arg(long = "bound", conflicts_with = "bound")]
        bound_flag: Option<i64>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SEIFERT_DELTA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| CliError {
        code: EXIT_USAGE,
        message: format!("SEIFERT_DELTA_THREADS must be a non-negative integer, got {raw:?}"),
    })?;
    // Zero leaves the choice to rayon. A pool that is already built is kept as is.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Delta { spec } => cmd_delta(spec, cli.policy),
        Command::Lens { a, b, u } => cmd_lens(*a, *b, *u),
        Command::Dedekind { b, a } => cmd_dedekind(*b, *a),
        Command::Lambda { b, a, n } => cmd_lambda(*b, *a, *n),
        Command::Prism { m, r } => cmd_prism(*m, *r),
        Command::Plumb { spec } => cmd_plumb(spec),
        Command::Verify { suite, bound, bound_flag } => {
            cmd_verify(suite, bound.or(*bound_flag).unwrap_or(DEFAULT_BOUND))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = if cli.table {
                out.table
            } else {
                serde_json::to_string_pretty(&out.report).expect("reports serialize") + "\n"
            };
            // A reader that hangs up early is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
