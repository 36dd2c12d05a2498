use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sparse_card::dsfm::{PathPolicy, SolveOptions};
use sparse_card::flow::DEFAULT_SCALE;
use sparse_card_cli::commands;
use sparse_card_cli::report::CSV_HEADER;
use sparse_card_cli::CliError;

#[derive(Parser)]
#[command(
    name = "sparse-card",
    version,
    about = "Approximate minimization of sums of concave cardinality functions via one minimum cut"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathChoice {
    /// Build both gadget families and keep the smaller.
    Cheapest,
    /// Symmetric gadgets for every eligible component.
    Symmetric,
    /// Asymmetric gadgets everywhere.
    Asymmetric,
}

#[derive(clap::Args)]
struct Reduction {
    /// Approximation tolerance; the result is within a factor 1 + eps.
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Fixed-point scale for capacities.
    #[arg(long, env = "SPARSE_CARD_SCALE", default_value_t = DEFAULT_SCALE)]
    scale: u64,
    #[arg(long, value_enum, default_value_t = PathChoice::Cheapest)]
    path: PathChoice,
    /// Shorthand for `--path asymmetric`.
    #[arg(long)]
    force_asymmetric: bool,
}

impl Reduction {
    fn options(&self) -> SolveOptions {
        let path = match (self.force_asymmetric, self.path) {
            (true, _) | (_, PathChoice::Asymmetric) => PathPolicy::ForceAsymmetric,
            (_, PathChoice::Symmetric) => PathPolicy::SymmetricWhenEligible,
            (_, PathChoice::Cheapest) => PathPolicy::Cheapest,
        };
        SolveOptions {
            scale: self.scale,
            path,
            ..SolveOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the result document.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        reduction: Reduction,
        /// Skip the second solve that tightens the ratio certificate.
        #[arg(long)]
        no_refine: bool,
        /// Write the JSON result here instead of standard output.
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Print a one-row CSV summary.
        #[arg(long)]
        csv: bool,
    },
    /// Write the reduced network in DIMACS max-flow format.
    Reduce {
        instance: PathBuf,
        #[command(flatten)]
        reduction: Reduction,
        /// Output file; standard output if omitted.
        #[arg(long)]
        dimacs_out: Option<PathBuf>,
    },
    /// Tabulate greedy covers of one penalty.
    Curve {
        /// Penalty such as `clique`, `sqrt`, `pow(0.5)` or `vals(0,2,3,1)`.
        spec: String,
        k: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,0.1,0.01")]
        eps_list: Vec<f64>,
    },
    /// Exact optimum by enumeration (at most 24 nodes).
    Oracle {
        instance: PathBuf,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Minimum cut of a DIMACS network.
    Maxflow { network: PathBuf },
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            instance,
            reduction,
            no_refine,
            json_out,
            csv,
        } => {
            let mut options = reduction.options();
            options.refine_certificate = !no_refine;
            let out = commands::solve(&instance, reduction.eps, &options, csv)?;
            if let Some(row) = &out.csv {
                println!("{CSV_HEADER}\n{row}");
                if let Some(p) = &json_out {
                    emit(&out.document.to_json(), Some(p))?;
                }
            } else {
                emit(&out.document.to_json(), json_out.as_ref())?;
            }
        }
        Command::Reduce {
            instance,
            reduction,
            dimacs_out,
        } => {
            let (net, stats) =
                commands::reduce_to_network(&instance, reduction.eps, &reduction.options())?;
            commands::write_network(&net, dimacs_out.as_deref())?;
            eprintln!(
                "{} nodes, {} arcs, {} gadget edges, quantization bound {}",
                net.node_count(),
                net.arc_count(),
                stats.gadget_edges,
                stats.quantization_bound
            );
        }
        Command::Curve { spec, k, eps_list } => {
            print!("{}", commands::curve(&spec, k, &eps_list)?);
        }
        Command::Oracle { instance, json_out } => {
            emit(&commands::oracle(&instance)?.to_json(), json_out.as_ref())?;
        }
        Command::Maxflow { network } => {
            let cut = commands::max_flow_file(&network)?;
            let side: Vec<String> = (0..cut.source_side.len())
                .filter(|&v| cut.source_side[v])
                .map(|v| (v + 1).to_string())
                .collect();
            println!("cut_value_scaled {}", cut.cut_value_scaled);
            println!("cut_value {}", cut.cut_value);
            println!("source_side {}", side.join(" "));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
