use std::process::ExitCode;

use advinfo_cli::render::render_text;
use advinfo_cli::{
    cmd_boolean, cmd_epr, cmd_grover, cmd_histories, cmd_phases, cmd_querycount, BooleanConfig, CliError, EprConfig,
    GroverConfig, HistoriesConfig,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Four-drawer Grover search, its classical histories and query accounting.
#[derive(Debug, Parser)]
#[command(name = "advinfo", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for sampled measurements.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the search; with --oracle-k, fix the oracle's choice and read the solution.
    Grover {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Oracle's choice as a bitstring, e.g. 01.
        #[arg(long)]
        oracle_k: Option<String>,
        #[arg(long)]
        iterations: Option<usize>,
    },
    /// List the histories of one advanced-information scenario.
    Histories {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Known bit of the oracle's choice, e.g. k0=0. Repeat for larger n.
        #[arg(long = "known-bit", required = true)]
        known_bits: Vec<String>,
        /// Drawer number queried, e.g. 00.
        #[arg(long)]
        query: String,
    },
    /// Rebuild the oracle step from signed histories and run the entropy search.
    Phases {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Classical and quantum query counts.
    Querycount {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// The Boolean-network form of the problem.
    Boolean {
        /// Pre-fixed oracle's choice, e.g. 01.
        #[arg(long)]
        fixed_k: Option<String>,
    },
    /// Two-photon singlet and backdated reduction.
    Epr {
        /// Force the left photon's outcome instead of sampling it.
        #[arg(long)]
        left: Option<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let result = match cli.command {
        Command::Grover {
            n,
            oracle_k,
            iterations,
        } => cmd_grover(&GroverConfig {
            n,
            oracle_k,
            iterations,
            seed,
        }),
        Command::Histories { n, known_bits, query } => cmd_histories(&HistoriesConfig { n, known_bits, query }),
        Command::Phases { n } => cmd_phases(n),
        Command::Querycount { n } => cmd_querycount(n),
        Command::Boolean { fixed_k } => cmd_boolean(&BooleanConfig { fixed_k, seed }),
        Command::Epr { left } => cmd_epr(&EprConfig { left, seed }),
    };
    match result {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", render_text(&report)),
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!("advinfo: one or more checks failed");
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("advinfo: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("advinfo: {e}");
            ExitCode::from(1)
        }
    }
}
