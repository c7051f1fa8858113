use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use gnk::{cauchy_sum, GnkError};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CliError, CliResult, EXIT_REJECTED_POINTS};
use crate::json::{self, fmt_f64};
use crate::schema::{load_solution, VALUES_SCHEMA};

/// Reads `re,im` rows. A first row that does not parse as numbers is taken
/// as a header.
pub fn read_points(path: &Path) -> CliResult<Vec<Complex64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(CliError::input)?;
    let mut out = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(CliError::input)?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        match parse_pair(record.iter()) {
            Ok(z) => out.push(z),
            Err(_) if row == 0 => continue,
            Err(e) => {
                return Err(CliError::input(anyhow!(
                    "{}: row {}: {e}",
                    path.display(),
                    row + 1
                )))
            }
        }
    }
    Ok(out)
}

fn parse_pair<'a>(mut fields: impl Iterator<Item = &'a str>) -> anyhow::Result<Complex64> {
    let re = fields.next().ok_or_else(|| anyhow!("missing real part"))?;
    let im = fields
        .next()
        .ok_or_else(|| anyhow!("missing imaginary part"))?;
    if fields.next().is_some() {
        return Err(anyhow!("expected two columns"));
    }
    Ok(Complex64::new(re.trim().parse()?, im.trim().parse()?))
}

/// Parses an inline `re,im` point.
pub fn parse_inline(text: &str) -> CliResult<Complex64> {
    parse_pair(text.split(',')).map_err(|e| CliError::input(anyhow!("point {text:?}: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointValue {
    pub x: f64,
    pub y: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rejected {
    pub index: usize,
    pub x: f64,
    pub y: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct ValuesDocument<'a> {
    schema: &'static str,
    values: &'a [PointValue],
    rejected: &'a [Rejected],
}

pub struct EvalOptions {
    pub partial: bool,
}

pub struct EvalOutcome {
    pub values: Vec<PointValue>,
    pub rejected: Vec<Rejected>,
}

pub fn run(
    solution: &Path,
    points: &[Complex64],
    output: Option<&Path>,
    opts: &EvalOptions,
) -> CliResult<EvalOutcome> {
    let (domain, psi) = load_solution(solution)?.boundary_data()?;
    let mut values = Vec::with_capacity(points.len());
    let mut rejected = Vec::new();
    for (index, &z) in points.iter().enumerate() {
        match cauchy_sum(&domain, &psi, z) {
            Ok(v) => values.push(PointValue {
                x: z.re,
                y: z.im,
                re: v.re,
                im: v.im,
            }),
            Err(e @ GnkError::PointInsideDisk { .. }) => rejected.push(Rejected {
                index,
                x: z.re,
                y: z.im,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    for r in &rejected {
        log::warn!("point {} rejected: {}", r.index + 1, r.reason);
    }
    if rejected.is_empty() || opts.partial {
        write_values(output, &values, &rejected)?;
    }
    if !rejected.is_empty() {
        return Err(CliError::new(
            EXIT_REJECTED_POINTS,
            anyhow!(
                "{} of {} points lie inside or on a disk",
                rejected.len(),
                points.len()
            ),
        ));
    }
    Ok(EvalOutcome { values, rejected })
}

fn write_values(
    output: Option<&Path>,
    values: &[PointValue],
    rejected: &[Rejected],
) -> CliResult<()> {
    let is_json = output
        .and_then(|p| p.extension())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let text = if is_json {
        json::to_string(&ValuesDocument {
            schema: VALUES_SCHEMA,
            values,
            rejected,
        })
        .map_err(CliError::input)?
    } else {
        let mut out = String::from("x,y,re,im\n");
        for v in values {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(v.x),
                fmt_f64(v.y),
                fmt_f64(v.re),
                fmt_f64(v.im)
            ));
        }
        out
    };
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(CliError::input),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(CliError::input),
    }
}
