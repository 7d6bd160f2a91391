use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twistkit_cli::commands::{self, ConvertTo, EnumWhat, GenKind, GenOptions, HornMode};
use twistkit_cli::schema::parse_field;
use twistkit_cli::{CliError, DescentFile, Kind};

/// Validate and construct Čech descent data for complexes.
#[derive(Parser)]
#[command(name = "twistkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a file and print a JSON report.
    Validate {
        file: PathBuf,
        /// Require the file to have this kind.
        #[arg(long)]
        kind: Option<Kind>,
        /// Require complements to be literal sums of identity spans.
        #[arg(long)]
        strict_elementary: bool,
    },
    /// Fill a 2-horn given as a `horn` file.
    FillHorn {
        file: PathBuf,
        /// The missing vertex opposite the filled edge.
        #[arg(long)]
        index: usize,
        #[arg(long, value_enum, default_value = "stc")]
        mode: HornMode,
        #[arg(long)]
        strict_elementary: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pad a quasi-isomorphism to an isomorphism.
    Strictify {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extract the weak equivalence between the endpoints of a path.
    WeqFromPath {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert between twisting cochains and dg-nerve simplex families.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertTo,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List combinatorial objects and count them.
    Enum {
        #[arg(long, value_enum)]
        what: EnumWhat,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: Option<usize>,
        #[arg(short)]
        i: Option<usize>,
    },
    /// Generate a random fixture deterministically from a seed.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 2)]
        openings: usize,
        #[arg(long, default_value_t = 1)]
        amp: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the ordered cover Δ[openings - 1].
        #[arg(long)]
        ordered: bool,
        /// "rational" or "prime p".
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Generate isomorphism edges for a horn.
        #[arg(long)]
        green: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TWISTKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Malformed(format!("TWISTKIT_THREADS={v:?} is not a positive integer"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Malformed(e.to_string()))
}

fn emit(file: Result<DescentFile, CliError>, output: Option<PathBuf>) -> Result<(), CliError> {
    let text = commands::render(&file?)?;
    commands::write_output(output.as_deref(), &text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Validate {
            file,
            kind,
            strict_elementary,
        } => {
            let report = commands::validate(&file, kind, strict_elementary)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
        Command::FillHorn {
            file,
            index,
            mode,
            strict_elementary,
            output,
        } => emit(
            commands::fill_horn(&file, index, mode, strict_elementary),
            output,
        ),
        Command::Strictify { file, output } => emit(commands::strictify(&file), output),
        Command::WeqFromPath { file, output } => emit(commands::weq_from_path(&file), output),
        Command::Convert { file, to, output } => emit(commands::convert(&file, to), output),
        Command::Enum { what, p, q, i } => {
            print!("{}", commands::enumerate(what, p, q, i)?);
            Ok(())
        }
        Command::Gen {
            kind,
            openings,
            amp,
            seed,
            ordered,
            field,
            rank,
            index,
            green,
            output,
        } => {
            let opts = GenOptions {
                kind,
                openings,
                amp,
                seed,
                ordered,
                field: parse_field(&field)?,
                rank,
                index,
                green,
            };
            emit(commands::generate(&opts), output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Invalid(report) = &e {
                match serde_json::to_string_pretty(report) {
                    Ok(text) => println!("{text}"),
                    Err(err) => eprintln!("twistkit: {err}"),
                }
            }
            eprintln!("twistkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
