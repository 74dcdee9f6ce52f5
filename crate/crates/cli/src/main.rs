use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::{CliError, Output};

/// Exact computations for slopes, two-bridge links, lens spaces, Smith
/// normal forms and Dehn-surgery homology.
#[derive(Debug, Parser)]
#[command(name = "chiralfill", version)]
struct Cli {
    /// Emit JSON instead of the human-readable report
    #[arg(long, global = true)]
    json: bool,

    /// Read a matrix or framed-link document from this file
    #[arg(long, short, global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the continued fraction of a Conway word
    Cfrac {
        /// Entries, separated by spaces or commas
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        entries: Vec<String>,
    },
    /// Schubert form of a Conway word or of the family member K_n
    Twobridge {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "entries")]
        family: Option<i64>,
        #[arg(allow_hyphen_values = true, num_args = 0..)]
        entries: Vec<String>,
    },
    /// Classify a lens space / two-bridge link S(p,q)
    Lens {
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Compare against S(p2,q2)
        #[arg(long, num_args = 2, value_names = ["P2", "Q2"], allow_hyphen_values = true)]
        compare: Option<Vec<String>>,
    },
    /// Smith normal form and cokernel of a matrix document (or the M_n presentation)
    Snf {
        #[arg(long, allow_hyphen_values = true)]
        family: Option<i64>,
        /// Exit 1 unless the cokernel prints as this group, e.g. "Z + Z/5"
        #[arg(long)]
        expect: Option<String>,
    },
    /// First homology of a surgery description
    Surgery(SurgeryArgs),
    /// Certify the M_n family over a range of n
    Family {
        #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        max: i64,
    },
    /// Slope arithmetic
    Slope {
        #[command(subcommand)]
        op: SlopeOp,
    },
}

#[derive(Debug, Args)]
struct SurgeryArgs {
    /// Built-in template instead of --input (available: mn)
    #[arg(long)]
    template: Option<String>,
    /// Template parameter
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    /// Set or replace a filling, as COMPONENT=p/q
    #[arg(
        long = "fill",
        value_name = "COMPONENT=SLOPE",
        allow_hyphen_values = true
    )]
    fills: Vec<String>,
    /// Remove a filling, leaving the component as a boundary torus
    #[arg(long = "drill", value_name = "COMPONENT")]
    drills: Vec<String>,
    /// Exit 1 unless H_1 prints as this group, e.g. "Z/5"
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Debug, Subcommand)]
enum SlopeOp {
    /// Canonical form of p/q
    Normalize {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Distance between two slopes
    Distance {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Image of a slope under the matrix a,b,c,d
    Apply {
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,1,0")]
        matrix: String,
        #[arg(allow_hyphen_values = true)]
        slope: String,
    },
    /// Slopes with |p|,|q| <= bound fixed by the matrix a,b,c,d
    Fixed {
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,1,0")]
        matrix: String,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let input = cli.input.as_deref();
    match cli.command {
        Command::Cfrac { entries } => commands::cfrac(&entries),
        Command::Twobridge { family, entries } => commands::twobridge(family, &entries),
        Command::Lens { p, q, compare } => commands::lens(&p, &q, compare.as_deref()),
        Command::Snf { family, expect } => commands::snf(input, family, expect.as_deref()),
        Command::Surgery(a) => commands::surgery(
            input,
            a.template.as_deref(),
            a.n,
            &a.fills,
            &a.drills,
            a.expect.as_deref(),
        ),
        Command::Family { min, max } => commands::family(min, max),
        Command::Slope { op } => match op {
            SlopeOp::Normalize { p, q } => commands::slope_normalize(&p, &q),
            SlopeOp::Distance { a, b } => commands::slope_distance(&a, &b),
            SlopeOp::Apply { matrix, slope } => commands::slope_apply(&matrix, &slope),
            SlopeOp::Fixed { matrix, bound } => commands::slope_fixed(&matrix, bound),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            out.print(json);
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
