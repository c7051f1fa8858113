use std::io::Write;
use std::path::Path;

use anyhow::anyhow;
use gnk::oracle::{
    interior_sample_points, nullspace_report, verify, NullspaceReport, REQUIRED_GAP,
};
use gnk::{GcpSolver, GnkError, Solution};

use crate::error::{CliError, CliResult, EXIT_DIAGNOSTIC};
use crate::schema::{load_problem, LoadedProblem};

pub const CONVERGENCE_SIZES: [usize; 4] = [32, 64, 128, 256];
const CONVERGENCE_POINTS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// `None` when the discretized system was singular at this size.
    pub result: Option<ConvergenceStats>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceStats {
    pub constants_diff: f64,
    pub interior_diff: f64,
    pub boundary_residual: f64,
    pub bandlimit_residual: f64,
    /// Error against the known solution of a manufactured problem.
    pub exact_error: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct DiagnoseReport {
    pub nullspace: NullspaceReport,
    pub convergence: Vec<ConvergenceRow>,
    pub passed: bool,
}

fn fmt_sci(v: f64) -> String {
    format!("{v:.3e}")
}

pub fn run(input: &Path, out: &mut impl Write) -> CliResult<DiagnoseReport> {
    let problem = load_problem(input)?;
    let report = diagnose(&problem, out)?;
    if !report.passed {
        return Err(CliError::new(
            EXIT_DIAGNOSTIC,
            anyhow!("null-space dimensions disagree with theory or the spectral gap rule failed"),
        ));
    }
    Ok(report)
}

fn diagnose(problem: &LoadedProblem, out: &mut impl Write) -> CliResult<DiagnoseReport> {
    let domain = &problem.domain;
    let coeff = &problem.coeff;
    let n = problem.file.n;
    writeln!(
        out,
        "domain: m={} circles, l={}, total index {}, n={}",
        domain.len(),
        coeff.ell(),
        coeff.total_index(),
        n
    )?;

    let ns = nullspace_report(domain, coeff, n)?;
    let plus_ok = ns.plus.dim == ns.expected_plus && ns.plus.gap >= REQUIRED_GAP;
    let minus_ok = ns.minus.dim == 0 && ns.minus.gap >= REQUIRED_GAP;
    writeln!(
        out,
        "null space of I+N: expected {} / observed {}; {}",
        ns.expected_plus,
        ns.plus.dim,
        if ns.minus.dim == 0 {
            "I-N nonsingular".to_string()
        } else {
            format!("I-N has {} near-zero singular values", ns.minus.dim)
        }
    )?;
    writeln!(
        out,
        "spectral gap: I+N {} , I-N {} (required {})",
        fmt_sci(ns.plus.gap),
        fmt_sci(ns.minus.gap),
        fmt_sci(REQUIRED_GAP)
    )?;
    writeln!(
        out,
        "smallest singular value of I-N: {}",
        fmt_sci(ns.minus.sigma_min)
    )?;
    writeln!(
        out,
        "condition estimate of I-N (2-norm): {}",
        fmt_sci(ns.minus_condition)
    )?;
    for nc in domain.near_contacts() {
        writeln!(
            out,
            "warning: circles {} and {} nearly touch (gap {}); condition estimate {}",
            nc.first + 1,
            nc.second + 1,
            fmt_sci(nc.gap),
            fmt_sci(ns.minus_condition)
        )?;
    }
    if !plus_ok {
        writeln!(
            out,
            "FAIL: I+N null space does not match (2l+1)m with a clear gap"
        )?;
    }
    if !minus_ok {
        writeln!(out, "FAIL: I-N is not clearly nonsingular")?;
    }

    let convergence = convergence_table(problem)?;
    writeln!(
        out,
        "convergence (differences against n={}):",
        CONVERGENCE_SIZES[3]
    )?;
    let manufactured = convergence
        .iter()
        .any(|r| r.result.is_some_and(|s| s.exact_error.is_some()));
    writeln!(
        out,
        "{:>6}  {:>12}  {:>12}  {:>12}  {:>12}{}",
        "n",
        "constants",
        "interior",
        "bc_residual",
        "bandlimit",
        if manufactured { "   exact_error" } else { "" }
    )?;
    for row in &convergence {
        match row.result {
            None => writeln!(out, "{:>6}  singular", row.n)?,
            Some(s) => writeln!(
                out,
                "{:>6}  {:>12}  {:>12}  {:>12}  {:>12}{}",
                row.n,
                fmt_sci(s.constants_diff),
                fmt_sci(s.interior_diff),
                fmt_sci(s.boundary_residual),
                fmt_sci(s.bandlimit_residual),
                s.exact_error
                    .map(|e| format!("  {:>12}", fmt_sci(e)))
                    .unwrap_or_default()
            )?,
        }
    }

    Ok(DiagnoseReport {
        nullspace: ns,
        convergence,
        passed: plus_ok && minus_ok,
    })
}

fn solve_at(problem: &LoadedProblem, n: usize) -> CliResult<Option<Solution>> {
    let solver = match GcpSolver::new(&problem.domain, &problem.coeff, n) {
        Ok(s) => s,
        Err(GnkError::NearSingular { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let gamma = problem.gamma_at(n)?;
    Ok(Some(solver.solve(&gamma)?))
}

fn convergence_table(problem: &LoadedProblem) -> CliResult<Vec<ConvergenceRow>> {
    let points = interior_sample_points(&problem.domain, CONVERGENCE_POINTS, 0);
    let mut solutions = Vec::new();
    for &n in &CONVERGENCE_SIZES {
        solutions.push((n, solve_at(problem, n)?));
    }
    let reference = solutions.last().and_then(|(_, s)| s.clone());
    let ref_values = match &reference {
        Some(s) => Some(s.evaluate(&points)?),
        None => None,
    };
    let mut rows = Vec::new();
    for (n, sol) in solutions {
        let result = match sol {
            None => None,
            Some(s) => {
                let (constants_diff, interior_diff) = match (&reference, &ref_values) {
                    (Some(r), Some(rv)) => {
                        let values = s.evaluate(&points)?;
                        let interior = values
                            .iter()
                            .zip(rv)
                            .map(|(a, b)| (a - b).norm())
                            .fold(0.0, f64::max);
                        (s.constants.max_abs_diff(&r.constants), interior)
                    }
                    _ => (f64::NAN, f64::NAN),
                };
                let exact_error = match problem.manufactured(n)? {
                    Some(mp) => Some(verify(&mp, &s)?.max_error()),
                    None => None,
                };
                Some(ConvergenceStats {
                    constants_diff,
                    interior_diff,
                    boundary_residual: s.boundary_residual(),
                    bandlimit_residual: s.bandlimit_residual(),
                    exact_error,
                })
            }
        };
        rows.push(ConvergenceRow { n, result });
    }
    Ok(rows)
}
