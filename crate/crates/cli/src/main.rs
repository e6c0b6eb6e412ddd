use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ringcomm::isoclin::DEFAULT_BUDGET;
use ringcomm_cli::commands::{self, IsoclinicArgs, Records, VerifyArgs, DEFAULT_CAP};
use ringcomm_cli::report::{Report, Status};
use ringcomm_cli::CliError;

#[derive(Parser)]
#[command(
    name = "ringcomm",
    version,
    about = "Commuting probabilities, bounds and isoclinism for finite rings"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum RecordMode {
    Failures,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Pr(R), Pr(S,R), Pr(S) and the centralizer and commutator data of a pair.
    Compute {
        /// Ring spec: a file, inline text (`;` separates lines) or `family(params)`.
        #[arg(long)]
        ring: String,
        /// Subring name from the spec, `R`, `0`, `Z`, or generators such as `e1+e2`.
        #[arg(long)]
        subring: Option<String>,
    },
    /// Check the bounds and equality conditions over a corpus or one ring.
    Verify {
        /// `builtin<=N` or a comma-separated list of ring-spec files.
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long, conflicts_with = "corpus")]
        ring: Option<String>,
        /// Restrict to these subrings of `--ring`; failing hypotheses are an input error.
        #[arg(long, requires = "ring")]
        subring: Vec<String>,
        /// Comma-separated statement ids, or `all`.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Largest ring order accepted.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Which checks to list in the report.
        #[arg(long, value_enum, default_value_t = RecordMode::Failures)]
        records: RecordMode,
    },
    /// Search for an isoclinism between two pairs (S1, R1) and (S2, R2).
    Isoclinic {
        /// Two ring specs, in order.
        #[arg(long, num_args = 1, required = true)]
        pair: Vec<String>,
        /// Subrings of the first and second ring; defaults to a spec's only subring, else R.
        #[arg(long)]
        subring: Vec<String>,
        /// Quotient isomorphisms examined before giving up.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Enumerate even when group invariants already differ.
        #[arg(long)]
        no_prefilter: bool,
    },
    /// List every subring with its relative commuting probability.
    Subrings {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Compute { ring, subring } => commands::compute(&ring, subring.as_deref()),
        Command::Verify {
            corpus,
            ring,
            subring,
            theorems,
            cap,
            records,
        } => commands::verify(&VerifyArgs {
            corpus,
            ring,
            subrings: subring,
            theorems,
            cap,
            records: match records {
                RecordMode::Failures => Records::Failures,
                RecordMode::All => Records::All,
            },
        }),
        Command::Isoclinic {
            pair,
            subring,
            budget,
            no_prefilter,
        } => commands::isoclinic(&IsoclinicArgs {
            pairs: pair,
            subrings: subring,
            budget,
            prefilter: !no_prefilter,
        }),
        Command::Subrings { ring, cap } => commands::subrings(&ring, cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let rendered = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rendered.as_bytes());
            let _ = stdout.flush();
            if report.status == Status::CheckFailed {
                if let Some(m) = &report.summary.message {
                    eprintln!("ringcomm: {m}");
                }
            }
            ExitCode::from(report.exit_status)
        }
        Err(e) => {
            eprintln!("ringcomm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
