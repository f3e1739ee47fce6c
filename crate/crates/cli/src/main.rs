use std::io::Write;
use std::process::ExitCode;

use charbound::{run, GridConfig, RunError, Suite};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "charbound",
    version,
    about = "Exact checks of character degree bounds for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Regclasses,
    Crosschar,
    Defchar,
    Symspin,
    Oracle,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Largest rank parameter (crosschar: largest n for types B and C).
    #[arg(long)]
    rank_max: Option<u32>,
    #[arg(long)]
    q_max: Option<u64>,
    /// Largest prime for the small-rank weight sums.
    #[arg(long)]
    p_max: Option<u64>,
    #[arg(long)]
    l_max: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let Command::Verify(args) = cli.command;
    let suite = match args.suite {
        SuiteArg::Regclasses => Suite::Regclasses,
        SuiteArg::Crosschar => Suite::Crosschar,
        SuiteArg::Defchar => Suite::Defchar,
        SuiteArg::Symspin => Suite::Symspin,
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::All => Suite::All,
    };
    let grid = GridConfig {
        rank_max: args.rank_max,
        q_max: args.q_max,
        p_max: args.p_max,
        l_max: args.l_max,
        n_max: args.n_max,
    };
    let report = match run(suite, &grid) {
        Ok(r) => r,
        Err(e @ RunError::Usage(_)) => {
            eprintln!("charbound: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("charbound: {e}");
            return ExitCode::FAILURE;
        }
    };
    let out = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::FAILURE;
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
