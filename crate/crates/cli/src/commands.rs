use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::Path;
use std::time::Instant;

use sparse_card::dsfm::{brute_force, reduce, reduced_network, sparse_card, SolveOptions};
use sparse_card::flow::min_st_cut;
use sparse_card::flow::{read_dimacs, write_dimacs, BuildStats, CutResult, FlowNetwork};
use sparse_card::plcover::{greedy_pl_cover, log_cover_bound, pairing_bound};

use crate::error::CliError;
use crate::format::{parse_instance, parse_penalty, InstanceFile};
use crate::report::{csv_row, ResultDocument};

pub fn read_instance(path: &Path) -> Result<InstanceFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_instance(&text)
}

pub struct SolveOutput {
    pub document: ResultDocument,
    /// Summary row, present when requested.
    pub csv: Option<String>,
}

pub fn solve(
    path: &Path,
    eps: f64,
    options: &SolveOptions,
    with_csv: bool,
) -> Result<SolveOutput, CliError> {
    let (inst, offset) = read_instance(path)?.to_instance()?;
    let sol = sparse_card(&inst, eps, options)?;
    let csv = if with_csv {
        let exact: usize = reduce(&inst, 0.0, options.path)?
            .components
            .iter()
            .map(|c| c.edges)
            .sum();
        Some(csv_row(&sol, exact))
    } else {
        None
    };
    Ok(SolveOutput {
        document: ResultDocument::from_solution(&sol, offset),
        csv,
    })
}

/// Builds the reduced network without solving it.
pub fn reduce_to_network(
    path: &Path,
    eps: f64,
    options: &SolveOptions,
) -> Result<(FlowNetwork, BuildStats), CliError> {
    let (inst, _) = read_instance(path)?.to_instance()?;
    let (net, stats, _) = reduced_network(&inst, eps, options)?;
    Ok((net, stats))
}

pub fn write_network(net: &FlowNetwork, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut out = std::io::BufWriter::new(file);
            write_dimacs(net, &mut out).map_err(|e| CliError::io(p, e))?;
            std::io::Write::flush(&mut out).map_err(|e| CliError::io(p, e))
        }
        None => write_dimacs(net, std::io::stdout().lock())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

pub fn oracle(path: &Path) -> Result<ResultDocument, CliError> {
    let (inst, offset) = read_instance(path)?.to_instance()?;
    let started = Instant::now();
    let (members, objective) = brute_force(&inst)?;
    Ok(ResultDocument::from_optimum(
        &members,
        objective,
        offset,
        started.elapsed().as_secs_f64() * 1e3,
    ))
}

pub fn max_flow_file(path: &Path) -> Result<CutResult, CliError> {
    let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let net = read_dimacs(BufReader::new(file))?;
    Ok(min_st_cut(&net))
}

/// Tab-separated cover statistics for one penalty at each tolerance.
pub fn curve(spec: &str, k: usize, eps_list: &[f64]) -> Result<String, CliError> {
    let penalty = parse_penalty(spec)?;
    let g = penalty.curve(k)?;
    let mut out = String::from("eps\tpieces\tbound\tbreakpoints\tslopes\n");
    for &eps in eps_list {
        let pl = greedy_pl_cover(&g, eps)?;
        let bound = log_cover_bound(k, eps).map_or(pairing_bound(k), |b| b.min(pairing_bound(k)));
        let join = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(
            out,
            "{eps}\t{}\t{bound}\t{}\t{}",
            pl.piece_count(),
            join(pl.breakpoints()),
            join(pl.slopes())
        )
        .unwrap();
    }
    Ok(out)
}
