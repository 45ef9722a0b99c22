use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gl11_cli::commands::{self, Settings};
use gl11_cli::{CliError, RunReport};

#[derive(Parser)]
#[command(name = "gl11", version, about = "Checks for GL(1|1) Higgs-bundle computations")]
struct Cli {
    /// Residual tolerance for every check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomly generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Group axioms, inverse and superdeterminant on random elements.
    GroupSelftest {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        generators: u32,
        /// Perturb the product check, as a negative control.
        #[arg(long)]
        corrupt: bool,
    },
    /// Cocycle identities of transition data on a nerve, and optionally the
    /// gluing constraints of local Higgs data.
    CechVerify {
        #[arg(long)]
        nerve: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        higgs: Option<PathBuf>,
        /// Compare h only up to multiples of 2πi.
        #[arg(long)]
        mod_2pi: bool,
    },
    /// Hitchin residual of a metric and Higgs field, or the curvature of the
    /// metric when no Higgs field is given.
    HitchinResidual {
        #[arg(long)]
        metric: PathBuf,
        #[arg(long)]
        higgs: Option<PathBuf>,
    },
    /// Graph connections on fatgraphs.
    Fatgraph {
        #[command(subcommand)]
        command: FatgraphCommand,
    },
    /// Poisson commutativity of the classical Hamiltonians.
    GarnierCheck {
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Commutativity of the quantum Hamiltonians.
    GaudinCommute {
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Quantized classical Hamiltonians against the quantum ones.
    QuantizeCompare {
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Subcommand)]
enum FatgraphCommand {
    /// Gauge-fix so every vertex sum vanishes.
    Normalize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        connection: PathBuf,
        /// Write the normalized connection here instead of the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Holonomy along an edge path such as `0,-2,1`.
    Holonomy {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        connection: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
    },
    /// Trivial holonomy around every boundary cycle.
    CheckPunctures {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        connection: PathBuf,
    },
    /// Moduli dimensions for genus g with s punctures.
    Dims {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
        #[arg(long)]
        constrained: bool,
        #[arg(long)]
        su: bool,
        /// Count free parameters on this graph and compare.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let s = Settings {
        tol: cli.tol,
        seed: cli.seed,
    };
    match &cli.command {
        Command::GroupSelftest {
            count,
            generators,
            corrupt,
        } => commands::group_selftest_cmd(&s, *count, *generators, *corrupt),
        Command::CechVerify {
            nerve,
            data,
            higgs,
            mod_2pi,
        } => commands::cech_verify(&s, nerve, data, higgs.as_deref(), *mod_2pi),
        Command::HitchinResidual { metric, higgs } => commands::hitchin_residual_cmd(&s, metric, higgs.as_deref()),
        Command::Fatgraph { command } => match command {
            FatgraphCommand::Normalize { graph, connection, out } => {
                commands::fatgraph_normalize(&s, graph, connection, out.as_deref())
            }
            FatgraphCommand::Holonomy {
                graph,
                connection,
                cycle,
            } => commands::fatgraph_holonomy(&s, graph, connection, cycle),
            FatgraphCommand::CheckPunctures { graph, connection } => {
                commands::fatgraph_check_punctures(&s, graph, connection)
            }
            FatgraphCommand::Dims {
                genus,
                punctures,
                constrained,
                su,
                graph,
            } => commands::fatgraph_dims(&s, *genus, *punctures, *constrained, *su, graph.as_deref()),
        },
        Command::GarnierCheck { system, m } => commands::garnier_check(&s, system.as_deref(), *m),
        Command::GaudinCommute { system, m } => commands::gaudin_commute(&s, system.as_deref(), *m),
        Command::QuantizeCompare { system, m } => commands::quantize_compare(&s, system.as_deref(), *m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            ExitCode::from(report.exit_code())
        }
        // computations that cannot complete count as failed checks
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
