//! Problem and solution documents.
//!
//! Angles (`lambdas`) are in radians. Per-circle arrays are indexed
//! `[circle][node]`, with node `i` at `t_i = 2 pi i / n`.

use std::path::Path;

use anyhow::{anyhow, Context};
use gnk::oracle::{manufacture, ManufacturedProblem};
use gnk::{
    Circle, CircleDomain, Coefficient, Constants, Grid, GridFunction, ProblemSpec, Solution,
};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const PROBLEM_SCHEMA: &str = "gnk.problem.v1";
pub const SOLUTION_SCHEMA: &str = "gnk.solution.v1";
pub const VALUES_SCHEMA: &str = "gnk.values.v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSpec {
    /// `[re, im]`.
    pub center: [f64; 2],
    pub radius: f64,
}

impl From<&Circle> for CircleSpec {
    fn from(c: &Circle) -> Self {
        Self {
            center: [c.center.re, c.center.im],
            radius: c.radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaSpec {
    /// `m x n` samples at the grid nodes.
    Samples(Vec<Vec<f64>>),
    Builtin(Builtin),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Builtin {
    /// `gamma_j(t) = sum_k cos[j][k] cos(kt) + sum_k sin[j][k] sin((k+1)t)`.
    Fourier {
        cos: Vec<Vec<f64>>,
        #[serde(default)]
        sin: Vec<Vec<f64>>,
    },
    /// Data of a seeded problem with known solution (poles of order up to
    /// `poles` at the disk centers).
    Manufactured { seed: u64, poles: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: String,
    pub circles: Vec<CircleSpec>,
    pub ell: u32,
    pub lambdas: Vec<f64>,
    pub n: usize,
    pub gamma: GammaSpec,
}

/// A validated problem file.
#[derive(Debug, Clone)]
pub struct LoadedProblem {
    pub file: ProblemFile,
    pub domain: CircleDomain,
    pub coeff: Coefficient,
}

impl LoadedProblem {
    pub fn from_file(file: ProblemFile) -> CliResult<Self> {
        if file.schema != PROBLEM_SCHEMA {
            return Err(CliError::input(anyhow!(
                "schema: unsupported problem schema {:?}, expected {PROBLEM_SCHEMA:?}",
                file.schema
            )));
        }
        if file.lambdas.len() != file.circles.len() {
            return Err(CliError::input(anyhow!(
                "lambdas: expected {} entries (one per circle), found {}",
                file.circles.len(),
                file.lambdas.len()
            )));
        }
        Grid::new(file.circles.len().max(1), file.n)
            .map_err(|e| CliError::input(anyhow!("n: {e}")))?;
        let domain = CircleDomain::new(
            file.circles
                .iter()
                .map(|c| Circle::new(Complex64::new(c.center[0], c.center[1]), c.radius))
                .collect(),
        )?;
        let coeff = Coefficient::new(file.ell, file.lambdas.clone())
            .map_err(|e| CliError::input(anyhow!("lambdas: {e}")))?;
        let loaded = Self {
            file,
            domain,
            coeff,
        };
        loaded.check_gamma()?;
        Ok(loaded)
    }

    fn check_gamma(&self) -> CliResult<()> {
        let m = self.domain.len();
        let rows_ok = |rows: &Vec<Vec<f64>>, what: &str, len: Option<usize>| -> CliResult<()> {
            if rows.len() != m {
                return Err(CliError::input(anyhow!(
                    "gamma.{what}: expected {m} rows (one per circle), found {}",
                    rows.len()
                )));
            }
            if let Some(len) = len {
                if let Some((j, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != len) {
                    return Err(CliError::input(anyhow!(
                        "gamma.{what}[{j}]: expected {len} values, found {}",
                        r.len()
                    )));
                }
            }
            if rows.iter().flatten().any(|v| !v.is_finite()) {
                return Err(CliError::input(anyhow!("gamma.{what}: non-finite value")));
            }
            Ok(())
        };
        match &self.file.gamma {
            GammaSpec::Samples(rows) => rows_ok(rows, "samples", Some(self.file.n)),
            GammaSpec::Builtin(Builtin::Fourier { cos, sin }) => {
                rows_ok(cos, "builtin.cos", None)?;
                if !sin.is_empty() {
                    rows_ok(sin, "builtin.sin", None)?;
                }
                Ok(())
            }
            GammaSpec::Builtin(Builtin::Manufactured { poles, .. }) => {
                if *poles == 0 {
                    return Err(CliError::input(anyhow!(
                        "gamma.builtin.poles: must be at least 1"
                    )));
                }
                Ok(())
            }
        }
    }

    /// `gamma` sampled on an `n`-point grid. Sampled input is resampled by
    /// trigonometric interpolation when `n` differs from the file's.
    pub fn gamma_at(&self, n: usize) -> CliResult<GridFunction<f64>> {
        let grid = Grid::new(self.domain.len(), n)?;
        Ok(match &self.file.gamma {
            GammaSpec::Samples(rows) => {
                let resampled = rows
                    .iter()
                    .map(|r| {
                        if r.len() == n {
                            Ok(r.clone())
                        } else {
                            gnk::trig_interpolate(r, n)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                GridFunction::from_rows(&resampled)?
            }
            GammaSpec::Builtin(Builtin::Fourier { cos, sin }) => {
                GridFunction::from_fn(&grid, |p| {
                    let c: f64 = cos[p.circle]
                        .iter()
                        .enumerate()
                        .map(|(k, a)| a * (k as f64 * p.t).cos())
                        .sum();
                    let s: f64 = sin
                        .get(p.circle)
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .map(|(k, b)| b * ((k + 1) as f64 * p.t).sin())
                                .sum()
                        })
                        .unwrap_or(0.0);
                    c + s
                })
            }
            GammaSpec::Builtin(Builtin::Manufactured { .. }) => self
                .manufactured(n)?
                .expect("checked variant")
                .spec
                .gamma()
                .clone(),
        })
    }

    /// The manufactured problem behind a `manufactured` builtin.
    pub fn manufactured(&self, n: usize) -> CliResult<Option<ManufacturedProblem>> {
        match &self.file.gamma {
            GammaSpec::Builtin(Builtin::Manufactured { seed, poles }) => Ok(Some(manufacture(
                &self.domain,
                &self.coeff,
                n,
                *seed,
                *poles,
            )?)),
            _ => Ok(None),
        }
    }

    pub fn spec(&self) -> CliResult<ProblemSpec> {
        Ok(ProblemSpec::new(
            self.domain.clone(),
            self.coeff.clone(),
            self.gamma_at(self.file.n)?,
        )?)
    }
}

/// Parses JSON, reporting the path of the offending field on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::input(anyhow!("{inner}"))
        } else {
            CliError::input(anyhow!("{path}: {inner}"))
        }
    })
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(CliError::input)
}

pub fn load_problem(path: &Path) -> CliResult<LoadedProblem> {
    let file: ProblemFile = parse_json(&read(path)?)?;
    LoadedProblem::from_file(file)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsTable {
    /// `a[j][k]`, `k = 0..=ell`.
    pub a: Vec<Vec<f64>>,
    /// `b[j][k-1]`, `k = 1..=ell`.
    pub b: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub m: usize,
    pub n: usize,
    /// Always `"uniform"`: `t_i = 2 pi i / n`, `i = 0..n-1`.
    pub nodes: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `max |Re[A Psi] - gamma - h|`.
    pub boundary_residual: f64,
    /// Relative size of the Fourier modes `|k| > ell` of `h`.
    pub bandlimit_residual: f64,
    /// 1-norm condition estimate of `I - N`.
    pub condition_estimate: f64,
    /// `||(I - N) mu + M gamma||_inf`.
    pub equation_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub solve_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub schema: String,
    pub circles: Vec<CircleSpec>,
    pub ell: u32,
    pub lambdas: Vec<f64>,
    pub grid: GridInfo,
    pub mu: Vec<Vec<f64>>,
    pub h: Vec<Vec<f64>>,
    pub psi_re: Vec<Vec<f64>>,
    pub psi_im: Vec<Vec<f64>>,
    pub constants: ConstantsTable,
    pub diagnostics: Diagnostics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl SolutionFile {
    pub fn from_solution(s: &Solution, timing: Option<Timing>) -> Self {
        let p = &s.problem;
        let Constants { a, b } = s.constants.clone();
        Self {
            schema: SOLUTION_SCHEMA.to_string(),
            circles: p.domain().circles().iter().map(CircleSpec::from).collect(),
            ell: p.coeff().ell(),
            lambdas: p.coeff().lambdas().to_vec(),
            grid: GridInfo {
                m: p.domain().len(),
                n: p.n(),
                nodes: "uniform".into(),
            },
            mu: s.mu.to_rows(),
            h: s.h.to_rows(),
            psi_re: s.psi_boundary.map(|z| z.re).to_rows(),
            psi_im: s.psi_boundary.map(|z| z.im).to_rows(),
            constants: ConstantsTable { a, b },
            diagnostics: Diagnostics {
                boundary_residual: s.boundary_residual(),
                bandlimit_residual: s.bandlimit_residual(),
                condition_estimate: s.diagnostics.condition_estimate,
                equation_residual: s.diagnostics.equation_residual,
            },
            timing,
        }
    }

    /// Domain and boundary values of `Psi` needed for point evaluation.
    pub fn boundary_data(&self) -> CliResult<(CircleDomain, GridFunction<Complex64>)> {
        if self.schema != SOLUTION_SCHEMA {
            return Err(CliError::input(anyhow!(
                "schema: unsupported solution schema {:?}, expected {SOLUTION_SCHEMA:?}",
                self.schema
            )));
        }
        let domain = CircleDomain::new(
            self.circles
                .iter()
                .map(|c| Circle::new(Complex64::new(c.center[0], c.center[1]), c.radius))
                .collect(),
        )?;
        let re = GridFunction::from_rows(&self.psi_re)?;
        let im = GridFunction::from_rows(&self.psi_im)?;
        re.check_shape(domain.len(), self.grid.n)?;
        let psi = re.zip_map(&im, Complex64::new)?;
        Ok((domain, psi))
    }
}

pub fn load_solution(path: &Path) -> CliResult<SolutionFile> {
    parse_json(&read(path)?)
}
