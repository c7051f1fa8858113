use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use gnk::solve_gcp;

use crate::error::{CliError, CliResult};
use crate::json;
use crate::schema::{load_problem, SolutionFile, Timing};

pub struct SolveOptions {
    /// Include wall-clock timing in the output document. Off by default so
    /// that output is byte-stable.
    pub timing: bool,
}

pub fn run(input: &Path, output: Option<&Path>, opts: &SolveOptions) -> CliResult<SolutionFile> {
    let problem = load_problem(input)?;
    let spec = problem.spec()?;
    let start = Instant::now();
    let solution = solve_gcp(&spec)?;
    let elapsed = start.elapsed().as_secs_f64();
    log::info!(
        "solved m={} l={} n={} in {elapsed:.3}s (condition estimate {:.3e})",
        spec.domain().len(),
        spec.coeff().ell(),
        spec.n(),
        solution.diagnostics.condition_estimate
    );
    let doc = SolutionFile::from_solution(
        &solution,
        opts.timing.then_some(Timing {
            solve_seconds: elapsed,
        }),
    );
    let text = json::to_string(&doc).map_err(CliError::input)?;
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(CliError::input)?,
        None => print!("{text}"),
    }
    Ok(doc)
}
