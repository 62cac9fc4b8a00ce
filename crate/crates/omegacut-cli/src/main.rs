use clap::{Parser, Subcommand};

use omegacut_cli::run::{run, Command};

#[derive(Parser)]
#[command(name = "omegacut", about = "check, reduce, and explore proof terms")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a derivation and report properness, degree, and gate status
    Check {
        /// input file, or `-` for stdin
        input: String,
    },
    /// Apply the reduction step a fixed number of times, printing each reduct
    Step {
        input: String,
        /// number of steps to apply
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Reduce to a cut-free term, writing a line-delimited JSON trace
    Normalize {
        input: String,
        /// step budget
        #[arg(long, default_value_t = 10000)]
        max_steps: usize,
        /// trace file path
        #[arg(long)]
        trace: Option<String>,
    },
    /// Print a finite view of the denoted infinitary derivation
    Expand {
        input: String,
        /// expansion depth
        #[arg(long, default_value_t = 3)]
        depth: u64,
        /// comma-separated numeric branches to follow at omega nodes
        #[arg(long, default_value = "0,1,2", value_delimiter = ',')]
        omega: Vec<u64>,
        /// how many canonical witnesses to follow at omega-tilde nodes
        #[arg(long, default_value_t = 1)]
        witness_budget: usize,
    },
    /// Replay a stored reduction scenario (`t9`..`t16` or `all`)
    Corpus { name: String },
}

fn main() {
    let cli = Cli::parse();
    let cmd = match cli.command {
        Cmd::Check { input } => Command::Check { input },
        Cmd::Step { input, count } => Command::Step { input, count },
        Cmd::Normalize {
            input,
            max_steps,
            trace,
        } => Command::Normalize {
            input,
            max_steps,
            trace,
        },
        Cmd::Expand {
            input,
            depth,
            omega,
            witness_budget,
        } => Command::Expand {
            input,
            depth,
            omega,
            witness_budget,
        },
        Cmd::Corpus { name } => Command::Corpus { name },
    };
    let mut out = std::io::stdout();
    std::process::exit(run(&cmd, &mut out));
}
