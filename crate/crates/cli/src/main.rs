use std::process::ExitCode;

use apolar_cli::*;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "apolar", version, about = "Apolar ideals, direct sums and their limits")]
struct Cli {
    /// Comma-separated variable names, e.g. `x,y,z` or `x1,x2,x3,x4`.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the generic choices made by the decomposer.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Refuse inputs needing a graded piece of dimension above this.
    #[arg(long, global = true, default_value_t = 20000)]
    max_degree_guard: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert function, generator degrees, conciseness and degree bounds.
    Analyze { poly: String },
    /// Direct sum, limit normal form, or an obstruction.
    Decompose {
        poly: String,
        /// Split into the finest direct sum.
        #[arg(long)]
        refine: bool,
        /// Include a family of direct sums converging to the input.
        #[arg(long)]
        family: bool,
    },
    /// One-parameter family in `t`: apolarity and the flat limit ideal.
    Family { poly: String },
    /// Generator degrees and ranks of a binary form.
    Binary { poly: String },
    /// Check every plane cubic normal form against its known invariants.
    Cubics,
    /// Run the built-in example checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings { vars: cli.vars.clone(), seed: cli.seed, max_degree_guard: cli.max_degree_guard };
    let result = match &cli.cmd {
        Cmd::Analyze { poly } => cmd_analyze(poly, &settings),
        Cmd::Decompose { poly, refine, family } => cmd_decompose(poly, *refine, *family, &settings),
        Cmd::Family { poly } => cmd_family(poly, &settings),
        Cmd::Binary { poly } => cmd_binary(poly, &settings),
        Cmd::Cubics => cmd_cubics(&settings),
        Cmd::Selftest => cmd_selftest(&settings),
    };
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", render::text(&report));
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!("mismatch in {} check(s)", report.checks.iter().filter(|c| !c.pass).count());
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
