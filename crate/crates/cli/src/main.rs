use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use logbundle_cli::commands::{cmd_analyze, cmd_bourbaki, cmd_loci, cmd_splitting, AnalyzeArgs, Outcome};
use logbundle_cli::corpus::{all_entries, cmd_corpus, resolve};
use logbundle_cli::{CliError, CliResult};

/// Invariants of the logarithmic bundle of a reduced plane curve.
#[derive(Parser)]
#[command(name = "logbundle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: syzygies, N(f), splitting, jumping loci, Bourbaki ideal.
    Analyze {
        poly: String,
        /// Minimal polynomial in t of the number field; QQ when absent.
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        json: bool,
        /// Degree up to which minimal syzygy generators are searched.
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Splitting type and jumping order along one line.
    Splitting {
        poly: String,
        /// Line a*x + b*y + c*z = 0 given as a,b,c.
        #[arg(long, allow_hyphen_values = true)]
        line: String,
        #[arg(long)]
        field: Option<String>,
    },
    /// Jumping loci V_k in dual coordinates.
    Loci {
        poly: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        field: Option<String>,
    },
    /// Bourbaki ideal for a chosen degree-r syzygy.
    Bourbaki {
        poly: String,
        /// Explicit syzygy "a;b;c".
        #[arg(long, allow_hyphen_values = true, conflicts_with = "syzygy_combo")]
        syzygy: Option<String>,
        /// Use e1 + t*e2 from the echelon basis of AR(f)_r.
        #[arg(long, allow_hyphen_values = true)]
        syzygy_combo: Option<String>,
        #[arg(long)]
        field: Option<String>,
    },
    /// Check the built-in example curves against stored expectations.
    Corpus {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        name: Option<String>,
        /// Parameter of fermat_d (the degree) or cubic_t (t).
        #[arg(allow_hyphen_values = true, requires = "name")]
        param: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Analyze {
            poly,
            field,
            json,
            degree_bound,
            cache_dir,
        } => cmd_analyze(&AnalyzeArgs {
            poly: &poly,
            field: field.as_deref(),
            json,
            degree_bound,
            cache_dir: cache_dir.as_deref(),
        }),
        Command::Splitting { poly, line, field } => cmd_splitting(&poly, field.as_deref(), &line),
        Command::Loci { poly, k, field } => cmd_loci(&poly, field.as_deref(), k),
        Command::Bourbaki {
            poly,
            syzygy,
            syzygy_combo,
            field,
        } => cmd_bourbaki(&poly, field.as_deref(), syzygy.as_deref(), syzygy_combo.as_deref()),
        Command::Corpus { name, param, all } => {
            let entries = match name {
                Some(n) => vec![resolve(&n, param.as_deref())?],
                None if all => all_entries(),
                None => return Err(CliError::Usage("give --name or --all".into())),
            };
            cmd_corpus(&entries)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("logbundle: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
