//! Manufactured problems with known solutions, and null-space diagnostics
//! of the discretized `I +- N`.
//!
//! Random draws use `ChaCha8Rng::seed_from_u64(seed)` so the same seed gives
//! the same problem on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{GnkError, Result};
use crate::geometry::{Circle, CircleDomain, Grid};
use crate::kernels::Coefficient;
use crate::nystrom::{assemble_n, GridFunction};
use crate::solver::{evaluate_interior, Constants, ProblemSpec, Solution};

/// Relative singular-value threshold used for dimension counting.
pub const RANK_THRESHOLD: f64 = 1e-6;
/// Required ratio between the singular values on either side of the
/// threshold.
pub const REQUIRED_GAP: f64 = 1e3;
/// Interior samples used by [`verify`].
pub const INTERIOR_SAMPLES: usize = 10;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Psi*(z) = sum_j sum_{p=1..P} c_jp / (z - z_j)^p`, analytic in `G` and
/// vanishing at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPsi {
    pub centers: Vec<Complex64>,
    /// `coeffs[j][p - 1] = c_jp`.
    pub coeffs: Vec<Vec<Complex64>>,
}

impl RationalPsi {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.centers
            .iter()
            .zip(&self.coeffs)
            .map(|(zc, cs)| {
                let w = (z - zc).inv();
                let mut pow = w;
                let mut acc = Complex64::new(0.0, 0.0);
                for c in cs {
                    acc += c * pow;
                    pow *= w;
                }
                acc
            })
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct ManufacturedProblem {
    pub spec: ProblemSpec,
    pub psi_exact: RationalPsi,
    pub constants_exact: Constants,
    pub seed: u64,
}

impl ManufacturedProblem {
    /// Exact `h` (equal to `psi` built from the constants).
    pub fn h_exact(&self) -> GridFunction<f64> {
        GridFunction::from_fn(self.spec.grid(), |p| {
            self.constants_exact.psi(p.circle, p.t)
        })
    }

    pub fn psi_boundary_exact(&self) -> GridFunction<Complex64> {
        let domain = self.spec.domain();
        GridFunction::from_fn(self.spec.grid(), |p| {
            self.psi_exact.eval(crate::geometry::eta(p, domain))
        })
    }
}

fn unit_disk_sample(rng: &mut ChaCha8Rng) -> Complex64 {
    let modulus: f64 = rng.random_range(0.0..=1.0);
    let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(modulus, angle)
}

/// Draws `c_jp` with `|c_jp| <= 1` and constants in `[-1, 1]`, then samples
/// `gamma` at the grid nodes.
pub fn manufacture(
    domain: &CircleDomain,
    coeff: &Coefficient,
    n: usize,
    seed: u64,
    poles: usize,
) -> Result<ManufacturedProblem> {
    if poles == 0 {
        return Err(GnkError::InvalidArgument(
            "pole order P must be at least 1".into(),
        ));
    }
    let mut rng = rng(seed);
    let m = domain.len();
    let coeffs = (0..m)
        .map(|_| (0..poles).map(|_| unit_disk_sample(&mut rng)).collect())
        .collect();
    let mut constants = Constants::zeros(m, coeff.ell());
    for row in constants.a.iter_mut().chain(constants.b.iter_mut()) {
        for v in row.iter_mut() {
            *v = rng.random_range(-1.0..=1.0);
        }
    }
    let psi = RationalPsi {
        centers: domain.circles().iter().map(|c| c.center).collect(),
        coeffs,
    };
    manufacture_with(domain, coeff, n, psi, constants, seed)
}

/// Builds the problem whose solution is the given `Psi*` and constants.
pub fn manufacture_with(
    domain: &CircleDomain,
    coeff: &Coefficient,
    n: usize,
    psi_exact: RationalPsi,
    constants_exact: Constants,
    seed: u64,
) -> Result<ManufacturedProblem> {
    coeff.check_domain(domain)?;
    if constants_exact.circles() != domain.len() || constants_exact.ell() != coeff.ell() as usize {
        return Err(GnkError::ShapeMismatch {
            what: "constants",
            expected: format!("{} circles, l={}", domain.len(), coeff.ell()),
            found: format!(
                "{} circles, l={}",
                constants_exact.circles(),
                constants_exact.ell()
            ),
        });
    }
    let grid = Grid::new(domain.len(), n)?;
    // gamma_j = Re[A Psi*(eta)] - psi_j, with psi_j the constants' polynomial.
    let gamma = GridFunction::from_fn(&grid, |p| {
        let z = crate::geometry::eta(p, domain);
        (coeff.at(p) * psi_exact.eval(z)).re - constants_exact.psi(p.circle, p.t)
    });
    Ok(ManufacturedProblem {
        spec: ProblemSpec::new(domain.clone(), coeff.clone(), gamma)?,
        psi_exact,
        constants_exact,
        seed,
    })
}

/// Points of `G` at distance at least `0.5 * min r_j` from every circle,
/// drawn from a box around the domain.
pub fn interior_sample_points(domain: &CircleDomain, count: usize, seed: u64) -> Vec<Complex64> {
    let min_r = domain.min_radius();
    let max_r = domain
        .circles()
        .iter()
        .map(|c| c.radius)
        .fold(0.0, f64::max);
    let (mut lo, mut hi) = (
        Complex64::new(f64::INFINITY, f64::INFINITY),
        Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for c in domain.circles() {
        lo.re = lo.re.min(c.center.re - c.radius);
        lo.im = lo.im.min(c.center.im - c.radius);
        hi.re = hi.re.max(c.center.re + c.radius);
        hi.im = hi.im.max(c.center.im + c.radius);
    }
    let pad = 2.0 * max_r;
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = Complex64::new(
            rng.random_range(lo.re - pad..hi.re + pad),
            rng.random_range(lo.im - pad..hi.im + pad),
        );
        if domain.boundary_distance(z) >= 0.5 * min_r {
            out.push(z);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub boundary_error: f64,
    pub constants_error: f64,
    pub interior_error: f64,
    /// `||h - psi_exact||_inf`.
    pub h_error: f64,
}

impl VerificationReport {
    pub fn max_error(&self) -> f64 {
        self.boundary_error
            .max(self.constants_error)
            .max(self.interior_error)
            .max(self.h_error)
    }
}

/// Sup-norm errors of `s` against the manufactured truth.
pub fn verify(m: &ManufacturedProblem, s: &Solution) -> Result<VerificationReport> {
    let exact = m.psi_boundary_exact();
    s.psi_boundary.check_shape(exact.circles(), exact.n())?;
    let boundary_error = s.psi_boundary.zip_map(&exact, |a, b| a - b)?.sup_norm();
    let h_error = (&s.h - &m.h_exact()).sup_norm();
    let constants_error = s.constants.max_abs_diff(&m.constants_exact);
    let points = interior_sample_points(m.spec.domain(), INTERIOR_SAMPLES, m.seed);
    let values = evaluate_interior(s, &points)?;
    let interior_error = points
        .iter()
        .zip(&values)
        .map(|(z, v)| (m.psi_exact.eval(*z) - v).norm())
        .fold(0.0, f64::max);
    Ok(VerificationReport {
        boundary_error,
        constants_error,
        interior_error,
        h_error,
    })
}

/// Singular-value count below `RANK_THRESHOLD * sigma_max` and the gap
/// across the threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankCount {
    pub dim: usize,
    /// Smallest singular value above the threshold over the largest one
    /// below it. With nothing below, the smallest singular value over the
    /// threshold itself.
    pub gap: f64,
    pub sigma_max: f64,
    pub sigma_min: f64,
}

impl RankCount {
    fn from_singular_values(mut sigma: Vec<f64>) -> Self {
        sigma.sort_by(|a, b| b.total_cmp(a));
        let sigma_max = sigma.first().copied().unwrap_or(0.0);
        let sigma_min = sigma.last().copied().unwrap_or(0.0);
        let threshold = RANK_THRESHOLD * sigma_max;
        let above = sigma.iter().filter(|&&s| s >= threshold).count();
        let dim = sigma.len() - above;
        let gap = match (above, dim) {
            (0, _) => 0.0,
            (_, 0) => sigma_min / threshold,
            _ => sigma[above - 1] / sigma[above],
        };
        Self {
            dim,
            gap,
            sigma_max,
            sigma_min,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullspaceReport {
    /// `(2l + 1) m`.
    pub expected_plus: usize,
    /// Null space of `I + N`.
    pub plus: RankCount,
    /// Null space of `I - N`.
    pub minus: RankCount,
    /// `sigma_max / sigma_min` of `I - N`.
    pub minus_condition: f64,
}

impl NullspaceReport {
    pub fn dims(&self) -> (usize, usize) {
        (self.plus.dim, self.minus.dim)
    }

    pub fn matches_theory(&self) -> bool {
        self.dims() == (self.expected_plus, 0)
    }
}

/// Counts numerically zero singular values of the Nyström matrices of
/// `I + N` and `I - N`.
///
/// Fails with [`GnkError::AmbiguousRank`] when either count is not separated
/// by a gap of at least [`REQUIRED_GAP`].
pub fn nullspace_dims(d: &CircleDomain, c: &Coefficient, n: usize) -> Result<NullspaceReport> {
    let report = nullspace_report(d, c, n)?;
    for (operator, count) in [("I+N", &report.plus), ("I-N", &report.minus)] {
        if count.gap.is_nan() || count.gap < REQUIRED_GAP {
            return Err(GnkError::AmbiguousRank {
                operator,
                gap: count.gap,
                required: REQUIRED_GAP,
            });
        }
    }
    Ok(report)
}

/// Like [`nullspace_dims`] but returns the report even when a gap is too
/// small, for callers that print diagnostics.
pub fn nullspace_report(d: &CircleDomain, c: &Coefficient, n: usize) -> Result<NullspaceReport> {
    let grid = Grid::new(d.len(), n)?;
    if n < 16 * (c.ell() as usize + 1) {
        log::warn!(
            "n={n} is below 16(l+1)={}; null-space counts may be unresolved",
            16 * (c.ell() + 1)
        );
    }
    let op = assemble_n(d, c, &grid)?;
    let plus = RankCount::from_singular_values(
        op.identity_plus(1.0).singular_values().as_slice().to_vec(),
    );
    let minus = RankCount::from_singular_values(
        op.identity_plus(-1.0).singular_values().as_slice().to_vec(),
    );
    Ok(NullspaceReport {
        expected_plus: c.free_constants(),
        minus_condition: minus.sigma_max / minus.sigma_min,
        plus,
        minus,
    })
}

/// `m` random circles with radii in `[0.5, 1]` and every pairwise gap at
/// least the larger of the two radii.
pub fn random_domain(m: usize, seed: u64) -> Result<CircleDomain> {
    if m == 0 {
        return Err(GnkError::EmptyDomain);
    }
    let mut rng = rng(seed);
    let mut half_width = 2.0 * (m as f64).sqrt();
    let mut circles: Vec<Circle> = Vec::with_capacity(m);
    let mut attempts = 0;
    while circles.len() < m {
        let radius = rng.random_range(0.5..=1.0);
        let center = Complex64::new(
            rng.random_range(-half_width..=half_width),
            rng.random_range(-half_width..=half_width),
        );
        let fits = circles
            .iter()
            .all(|c| (c.center - center).norm() - c.radius - radius >= c.radius.max(radius));
        if fits {
            circles.push(Circle::new(center, radius));
        } else {
            attempts += 1;
            if attempts % 200 == 0 {
                half_width *= 1.25;
            }
        }
    }
    CircleDomain::new(circles)
}
