//! `polya` — certify Pólya exponent bounds for quadratic forms.
//!
//! Exit codes: 0 success, 1 input error, 2 form not positive on the simplex,
//! 3 exponent search hit its cap, 4 coefficient identity failed.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polya_bounds::cli::{self, Command, Format, Options};

#[derive(Parser)]
#[command(name = "polya", version, about = "Exact Pólya exponent bounds for quadratic forms on the simplex")]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Read the input document from this file (otherwise inline, otherwise stdin).
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// The three upper bounds and the minimum of f over the simplex.
    Bounds {
        /// Inline JSON input document.
        document: Option<String>,
    },
    /// The exact Pólya exponent, by expansion.
    Exponent {
        #[arg(long)]
        cap: Option<u32>,
        document: Option<String>,
    },
    /// Verify the lattice coefficient identity for m = 0..=max-m.
    Identity {
        #[arg(long, default_value_t = cli::DEFAULT_MAX_M)]
        max_m: u32,
        document: Option<String>,
    },
    /// Bound comparison table for λ² x1² − 2κλ x1 x2 + x2².
    Fkappa {
        #[arg(long)]
        kappa: String,
        #[arg(long = "lambda", required = true)]
        lambdas: Vec<String>,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_INPUT as u8 } else { 0 });
        }
    };

    let mut opts = Options {
        format: match args.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        },
        ..Options::default()
    };
    let (command, inline) = match args.command {
        Cmd::Bounds { document } => (Command::Bounds, document),
        Cmd::Exponent { cap, document } => {
            opts.cap = cap;
            (Command::Exponent, document)
        }
        Cmd::Identity { max_m, document } => {
            opts.max_m = max_m;
            (Command::Identity, document)
        }
        Cmd::Fkappa { kappa, lambdas } => {
            opts.kappa = Some(kappa);
            opts.lambdas = lambdas;
            (Command::Fkappa, None)
        }
    };

    let text = if command == Command::Fkappa {
        None
    } else if let Some(path) = &args.input {
        match std::fs::read_to_string(path) {
            Ok(t) => Some(t),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(cli::EXIT_INPUT as u8);
            }
        }
    } else if inline.is_some() {
        inline
    } else {
        let mut buf = String::new();
        match io::stdin().read_to_string(&mut buf) {
            Ok(_) => Some(buf),
            Err(e) => {
                eprintln!("error: cannot read stdin: {e}");
                return ExitCode::from(cli::EXIT_INPUT as u8);
            }
        }
    };

    let out = cli::run(command, &opts, text.as_deref());
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
