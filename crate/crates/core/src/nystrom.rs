//! Nyström discretization of `N` and `M` on the uniform grid.
//!
//! `N` has a continuous kernel and is discretized by the trapezoidal rule.
//! `M` is split per circle into the cotangent part, applied exactly on
//! trigonometric interpolants through an FFT multiplier, and a continuous
//! remainder (cross-circle `M` plus same-circle `M1`) handled like `N`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Dyn, LU};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{GnkError, Result};
use crate::geometry::{CircleDomain, Grid, ParamPoint};
use crate::kernels::{cross_quotient, same_circle_m1, same_circle_n, Coefficient};

/// Condition estimates above this are reported as singular systems.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Samples of a boundary function, circle-major (`values[j * n + i]` is
/// the value at node `t_i` of circle `j`).
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    m: usize,
    n: usize,
    values: Vec<T>,
}

pub type RealGridFunction = GridFunction<f64>;
pub type ComplexGridFunction = GridFunction<Complex64>;

impl<T: Copy + Default> GridFunction<T> {
    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            values: vec![T::default(); m * n],
        }
    }

    pub fn from_vec(m: usize, n: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != m * n {
            return Err(GnkError::ShapeMismatch {
                what: "grid function",
                expected: format!("{m}x{n}"),
                found: values.len().to_string(),
            });
        }
        Ok(Self { m, n, values })
    }

    /// Builds from one row of `n` samples per circle.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some((j, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(GnkError::ShapeMismatch {
                what: "grid function row",
                expected: n.to_string(),
                found: format!("{} (row {})", row.len(), j + 1),
            });
        }
        Ok(Self {
            m,
            n,
            values: rows.concat(),
        })
    }

    pub fn from_fn(grid: &Grid, mut f: impl FnMut(ParamPoint) -> T) -> Self {
        Self {
            m: grid.circles(),
            n: grid.n(),
            values: grid.points().map(&mut f).collect(),
        }
    }

    pub fn circles(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn into_vec(self) -> Vec<T> {
        self.values
    }

    pub fn circle(&self, j: usize) -> &[T] {
        &self.values[j * self.n..(j + 1) * self.n]
    }

    pub fn circle_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.values[j * self.n..(j + 1) * self.n]
    }

    pub fn get(&self, j: usize, i: usize) -> T {
        self.values[j * self.n + i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.values.chunks(self.n.max(1))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Copy + Default>(&self, f: impl FnMut(&T) -> U) -> GridFunction<U> {
        GridFunction {
            m: self.m,
            n: self.n,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn zip_map<U: Copy + Default, V: Copy + Default>(
        &self,
        other: &GridFunction<U>,
        mut f: impl FnMut(T, U) -> V,
    ) -> Result<GridFunction<V>> {
        self.check_shape(other.m, other.n)?;
        Ok(GridFunction {
            m: self.m,
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn check_shape(&self, m: usize, n: usize) -> Result<()> {
        if self.m != m || self.n != n {
            return Err(GnkError::ShapeMismatch {
                what: "grid function",
                expected: format!("{m}x{n}"),
                found: format!("{}x{}", self.m, self.n),
            });
        }
        Ok(())
    }

    pub fn check_grid(&self, grid: &Grid) -> Result<()> {
        self.check_shape(grid.circles(), grid.n())
    }
}

impl GridFunction<f64> {
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|v| v * factor)
    }

    fn to_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.values)
    }

    fn from_dvector(m: usize, n: usize, v: DVector<f64>) -> Self {
        Self {
            m,
            n,
            values: v.as_slice().to_vec(),
        }
    }
}

impl GridFunction<Complex64> {
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.norm()))
    }
}

impl std::ops::Add for &GridFunction<f64> {
    type Output = GridFunction<f64>;

    fn add(self, rhs: Self) -> GridFunction<f64> {
        self.zip_map(rhs, |a, b| a + b)
            .expect("grid function shapes differ")
    }
}

impl std::ops::Sub for &GridFunction<f64> {
    type Output = GridFunction<f64>;

    fn sub(self, rhs: Self) -> GridFunction<f64> {
        self.zip_map(rhs, |a, b| a - b)
            .expect("grid function shapes differ")
    }
}

/// Precomputed boundary geometry at the grid nodes.
#[derive(Debug, Clone)]
pub(crate) struct BoundaryNodes {
    pub eta: Vec<Complex64>,
    pub eta_dot: Vec<Complex64>,
    pub coeff: Vec<Complex64>,
}

impl BoundaryNodes {
    pub fn new(domain: &CircleDomain, coeff: &Coefficient, grid: &Grid) -> Self {
        let mut eta = Vec::with_capacity(grid.len());
        let mut eta_dot = Vec::with_capacity(grid.len());
        let mut a = Vec::with_capacity(grid.len());
        for p in grid.points() {
            let circle = domain.circle(p.circle);
            let e = Complex64::cis(-p.t);
            eta.push(circle.center + circle.radius * e);
            eta_dot.push(Complex64::new(0.0, -circle.radius) * e);
            a.push(coeff.at(p));
        }
        Self {
            eta,
            eta_dot,
            coeff: a,
        }
    }
}

/// Square Nyström matrix acting on grid functions.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    matrix: DMatrix<f64>,
    m: usize,
    n: usize,
}

impl DenseOperator {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn circles(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m * self.n
    }

    pub fn apply(&self, f: &GridFunction<f64>) -> Result<GridFunction<f64>> {
        f.check_shape(self.m, self.n)?;
        Ok(GridFunction::from_dvector(
            self.m,
            self.n,
            &self.matrix * f.to_dvector(),
        ))
    }

    /// `I + sign * K` for this operator `K`.
    pub fn identity_plus(&self, sign: f64) -> DMatrix<f64> {
        let dim = self.dim();
        let mut out = &self.matrix * sign;
        for i in 0..dim {
            out[(i, i)] += 1.0;
        }
        out
    }
}

/// Fills a row-major `dim x dim` matrix in parallel; each row is summed by
/// one thread in a fixed order.
fn assemble_rows(m: usize, n: usize, entry: impl Fn(usize, usize) -> f64 + Sync) -> DenseOperator {
    let dim = m * n;
    let mut flat = vec![0.0; dim * dim];
    flat.par_chunks_mut(dim.max(1))
        .enumerate()
        .for_each(|(row, out)| {
            for (col, v) in out.iter_mut().enumerate() {
                *v = entry(row, col);
            }
        });
    DenseOperator {
        matrix: DMatrix::from_row_slice(dim, dim, &flat),
        m,
        n,
    }
}

/// Same-circle kernel values tabulated by index offset `(i - p) mod n`.
fn circulant_table(n: usize, kernel: impl Fn(f64) -> f64) -> Vec<f64> {
    let h = std::f64::consts::TAU / n as f64;
    (0..n).map(|d| kernel(h * d as f64)).collect()
}

/// Trapezoidal Nyström matrix of `N`: entry `((j,i),(k,p))` is
/// `(2pi/n) N((t_i,j), (t_p,k))`.
pub fn assemble_n(
    domain: &CircleDomain,
    coeff: &Coefficient,
    grid: &Grid,
) -> Result<DenseOperator> {
    coeff.check_domain(domain)?;
    check_grid_domain(domain, grid)?;
    let n = grid.n();
    let w = grid.weight();
    let nodes = BoundaryNodes::new(domain, coeff, grid);
    let same = circulant_table(n, |u| same_circle_n(coeff.ell(), u));
    Ok(assemble_rows(grid.circles(), n, |row, col| {
        let (j, i) = (row / n, row % n);
        let (k, p) = (col / n, col % n);
        let value = if j == k {
            same[(i + n - p) % n]
        } else {
            cross_quotient(
                nodes.coeff[row],
                nodes.coeff[col],
                nodes.eta[row],
                nodes.eta[col],
                nodes.eta_dot[col],
            )
            .im
        };
        w * value
    }))
}

/// Trapezoidal matrix of the continuous part of `M`: cross-circle blocks
/// from `M`, diagonal blocks from `M1`.
pub fn assemble_m_continuous(
    domain: &CircleDomain,
    coeff: &Coefficient,
    grid: &Grid,
) -> Result<DenseOperator> {
    coeff.check_domain(domain)?;
    check_grid_domain(domain, grid)?;
    let n = grid.n();
    let w = grid.weight();
    let nodes = BoundaryNodes::new(domain, coeff, grid);
    let same = circulant_table(n, |u| same_circle_m1(coeff.ell(), u));
    Ok(assemble_rows(grid.circles(), n, |row, col| {
        let (j, i) = (row / n, row % n);
        let (k, p) = (col / n, col % n);
        let value = if j == k {
            same[(i + n - p) % n]
        } else {
            cross_quotient(
                nodes.coeff[row],
                nodes.coeff[col],
                nodes.eta[row],
                nodes.eta[col],
                nodes.eta_dot[col],
            )
            .re
        };
        w * value
    }))
}

fn check_grid_domain(domain: &CircleDomain, grid: &Grid) -> Result<()> {
    if grid.circles() != domain.len() {
        return Err(GnkError::ShapeMismatch {
            what: "grid circles",
            expected: domain.len().to_string(),
            found: grid.circles().to_string(),
        });
    }
    Ok(())
}

/// Periodic conjugation `(S g)(s) = -(1/2pi) PV int cot((s-t)/2) g(t) dt`
/// on the trigonometric interpolant of `n` equispaced samples: multiplier
/// `i sgn(k)`, with the mean and the Nyquist mode removed.
#[derive(Clone)]
pub struct Conjugator {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Conjugator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Conjugator").field("n", &self.n).finish()
    }
}

impl Conjugator {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(GnkError::OddLength(n));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply_into(&self, samples: &[f64], out: &mut [f64]) -> Result<()> {
        if samples.len() != self.n || out.len() != self.n {
            return Err(GnkError::OddLength(samples.len()));
        }
        let n = self.n;
        let half = n / 2;
        let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward.process(&mut buf);
        let scale = 1.0 / n as f64;
        buf[0] = Complex64::new(0.0, 0.0);
        buf[half] = Complex64::new(0.0, 0.0);
        for (k, c) in buf.iter_mut().enumerate().skip(1) {
            if k < half {
                *c *= Complex64::new(0.0, scale);
            } else if k > half {
                *c *= Complex64::new(0.0, -scale);
            }
        }
        self.inverse.process(&mut buf);
        for (o, c) in out.iter_mut().zip(&buf) {
            *o = c.re;
        }
        Ok(())
    }

    pub fn apply(&self, samples: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; samples.len()];
        self.apply_into(samples, &mut out)?;
        Ok(out)
    }
}

/// One-shot periodic conjugation of `samples`; see [`Conjugator`].
pub fn conjugate_periodic(samples: &[f64]) -> Result<Vec<f64>> {
    Conjugator::new(samples.len())?.apply(samples)
}

/// Evaluates the trigonometric interpolant of `samples` (equispaced on
/// `[0, 2pi)`, even length) at `n_out` equispaced points. The Nyquist term
/// is split evenly between `+n/2` and `-n/2`, which keeps the result real.
pub fn trig_interpolate(samples: &[f64], n_out: usize) -> Result<Vec<f64>> {
    let n = samples.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(GnkError::OddLength(n));
    }
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let half = n / 2;
    let scale = 1.0 / n as f64;
    Ok((0..n_out)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n_out as f64;
            let mut v = buf[0].re * scale;
            for (k, c) in buf.iter().enumerate().take(half).skip(1) {
                // Real signal: c_{-k} = conj(c_k).
                v += 2.0 * scale * (c * Complex64::cis(k as f64 * t)).re;
            }
            v + scale * buf[half].re * (half as f64 * t).cos()
        })
        .collect())
}

/// Discrete `M`: conjugation on each circle plus the continuous remainder.
#[derive(Debug, Clone)]
pub struct SingularOperator {
    continuous: DenseOperator,
    conjugator: Conjugator,
}

impl SingularOperator {
    pub fn new(domain: &CircleDomain, coeff: &Coefficient, grid: &Grid) -> Result<Self> {
        Ok(Self {
            continuous: assemble_m_continuous(domain, coeff, grid)?,
            conjugator: Conjugator::new(grid.n())?,
        })
    }

    pub fn continuous_part(&self) -> &DenseOperator {
        &self.continuous
    }

    pub fn apply(&self, f: &GridFunction<f64>) -> Result<GridFunction<f64>> {
        let mut out = self.continuous.apply(f)?;
        let mut conj = vec![0.0; f.n()];
        for j in 0..f.circles() {
            self.conjugator.apply_into(f.circle(j), &mut conj)?;
            for (o, c) in out.circle_mut(j).iter_mut().zip(&conj) {
                *o += c;
            }
        }
        Ok(out)
    }
}

/// Applies the discrete singular operator `M` to `gamma`.
pub fn apply_m(
    gamma: &GridFunction<f64>,
    domain: &CircleDomain,
    coeff: &Coefficient,
) -> Result<GridFunction<f64>> {
    let grid = Grid::new(gamma.circles(), gamma.n())?;
    SingularOperator::new(domain, coeff, &grid)?.apply(gamma)
}

/// LU factorization of `I - N` with a 1-norm condition estimate.
pub struct FredholmSystem {
    system: DMatrix<f64>,
    lu: LU<f64, Dyn, Dyn>,
    lower: DMatrix<f64>,
    upper: DMatrix<f64>,
    condition: f64,
    m: usize,
    n: usize,
}

impl std::fmt::Debug for FredholmSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FredholmSystem")
            .field("dim", &self.system.nrows())
            .field("condition", &self.condition)
            .finish()
    }
}

impl FredholmSystem {
    /// Factors `I - N`. Fails with [`GnkError::NearSingular`] when the
    /// condition estimate exceeds [`SINGULAR_CONDITION`].
    pub fn factor(n_op: &DenseOperator) -> Result<Self> {
        let system = n_op.identity_plus(-1.0);
        let lu = system.clone().lu();
        let lower = lu.l();
        let upper = lu.u();
        let mut out = Self {
            system,
            lu,
            lower,
            upper,
            condition: f64::INFINITY,
            m: n_op.m,
            n: n_op.n,
        };
        if out.upper.diagonal().iter().all(|d| *d != 0.0) {
            out.condition = out
                .system
                .column_iter()
                .map(|c| c.lp_norm(1))
                .fold(0.0, f64::max)
                * out.inverse_norm1_estimate();
        }
        if out.condition.is_nan() || out.condition > SINGULAR_CONDITION {
            return Err(GnkError::NearSingular {
                condition: out.condition,
            });
        }
        Ok(out)
    }

    /// Estimate of `||I - N||_1 ||(I - N)^{-1}||_1`.
    pub fn condition_estimate(&self) -> f64 {
        self.condition
    }

    fn solve_vec(&self, b: &DVector<f64>) -> DVector<f64> {
        self.lu.solve(b).expect("factor rejects singular systems")
    }

    fn solve_transpose_vec(&self, b: &DVector<f64>) -> DVector<f64> {
        // P A = L U, so A^T x = b is U^T L^T P x = b.
        let y = self
            .upper
            .tr_solve_upper_triangular(b)
            .expect("nonzero pivots");
        let mut w = self
            .lower
            .tr_solve_lower_triangular(&y)
            .expect("unit diagonal");
        self.lu.p().inv_permute_rows(&mut w);
        w
    }

    /// Hager's estimator of `||A^{-1}||_1` with Higham's extra probe.
    fn inverse_norm1_estimate(&self) -> f64 {
        let dim = self.system.nrows();
        let mut x = DVector::from_element(dim, 1.0 / dim as f64);
        let mut estimate = 0.0;
        let mut last_index = usize::MAX;
        for iter in 0..5 {
            let y = self.solve_vec(&x);
            estimate = y.lp_norm(1);
            let xi = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
            let z = self.solve_transpose_vec(&xi);
            let (index, zmax) = z.iter().enumerate().fold((0, 0.0), |(bi, bv), (i, v)| {
                if v.abs() > bv {
                    (i, v.abs())
                } else {
                    (bi, bv)
                }
            });
            if iter > 0 && (zmax <= z.dot(&x) || index == last_index) {
                break;
            }
            last_index = index;
            x.fill(0.0);
            x[index] = 1.0;
        }
        let denom = (dim.max(2) - 1) as f64;
        let probe = DVector::from_fn(dim, |i, _| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * (1.0 + i as f64 / denom)
        });
        let alt = 2.0 * self.solve_vec(&probe).lp_norm(1) / (3.0 * dim as f64);
        estimate.max(alt)
    }

    /// Solves `(I - N) mu = rhs` with one step of iterative refinement.
    pub fn solve(&self, rhs: &GridFunction<f64>) -> Result<GridFunction<f64>> {
        rhs.check_shape(self.m, self.n)?;
        if !rhs.is_finite() {
            return Err(GnkError::NonFinite("right-hand side"));
        }
        let b = rhs.to_dvector();
        let mut x = self.solve_vec(&b);
        let r = &b - &self.system * &x;
        x += self.solve_vec(&r);
        Ok(GridFunction::from_dvector(self.m, self.n, x))
    }

    /// `||(I - N) mu - rhs||_inf`.
    pub fn residual(&self, mu: &GridFunction<f64>, rhs: &GridFunction<f64>) -> Result<f64> {
        mu.check_shape(self.m, self.n)?;
        rhs.check_shape(self.m, self.n)?;
        let r = &self.system * mu.to_dvector() - rhs.to_dvector();
        Ok(r.amax())
    }
}

/// Solves `mu - N mu = rhs` by dense LU.
pub fn solve_fredholm(n_op: &DenseOperator, rhs: &GridFunction<f64>) -> Result<GridFunction<f64>> {
    FredholmSystem::factor(n_op)?.solve(rhs)
}
