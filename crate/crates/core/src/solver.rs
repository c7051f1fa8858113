//! End-to-end solution of the general conjugation problem
//!
//! ```text
//! Re[ e^{i lambda_j} e^{i l t} Psi(eta_j(t)) + sum_{k=1..l} (a_jk + i b_jk) e^{ikt} + a_j0 ] = gamma_j(t)
//! ```
//!
//! through the integral equation `mu - N mu = -M gamma`. The correction
//! `h = [M mu - (I - N) gamma] / 2` is a trigonometric polynomial of degree
//! at most `l` on each circle, `A Psi = gamma + h + i mu` on the boundary,
//! and the constants are (up to sign) the Fourier coefficients of `h`.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{GnkError, Result};
use crate::geometry::{CircleDomain, Grid};
use crate::kernels::Coefficient;
use crate::nystrom::{
    assemble_n, BoundaryNodes, DenseOperator, FredholmSystem, GridFunction, SingularOperator,
};

/// Interior points closer than this many node spacings to a circle are
/// logged as outside the reliable range of the trapezoidal Cauchy sum.
pub const NEAR_BOUNDARY_SPACINGS: f64 = 3.0;

/// Domain, coefficient and boundary samples of `gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    domain: CircleDomain,
    coeff: Coefficient,
    gamma: GridFunction<f64>,
    grid: Grid,
}

impl ProblemSpec {
    pub fn new(domain: CircleDomain, coeff: Coefficient, gamma: GridFunction<f64>) -> Result<Self> {
        coeff.check_domain(&domain)?;
        let grid = Grid::new(domain.len(), gamma.n())?;
        gamma.check_grid(&grid)?;
        if !gamma.is_finite() {
            return Err(GnkError::NonFinite("gamma"));
        }
        Ok(Self {
            domain,
            coeff,
            gamma,
            grid,
        })
    }

    pub fn domain(&self) -> &CircleDomain {
        &self.domain
    }

    pub fn coeff(&self) -> &Coefficient {
        &self.coeff
    }

    pub fn gamma(&self) -> &GridFunction<f64> {
        &self.gamma
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }
}

/// The `(2l + 1) m` real constants: `a[j][k]` for `k = 0..=l` and
/// `b[j][k - 1]` for `k = 1..=l`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constants {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
}

impl Constants {
    pub fn zeros(m: usize, ell: u32) -> Self {
        let ell = ell as usize;
        Self {
            a: vec![vec![0.0; ell + 1]; m],
            b: vec![vec![0.0; ell]; m],
        }
    }

    pub fn circles(&self) -> usize {
        self.a.len()
    }

    pub fn ell(&self) -> usize {
        self.b.first().map_or(0, Vec::len)
    }

    pub fn count(&self) -> usize {
        self.a.iter().map(Vec::len).sum::<usize>() + self.b.iter().map(Vec::len).sum::<usize>()
    }

    /// Largest absolute difference over all constants.
    pub fn max_abs_diff(&self, other: &Constants) -> f64 {
        let flat =
            |c: &Constants| -> Vec<f64> { c.a.iter().chain(&c.b).flatten().copied().collect() };
        let (x, y) = (flat(self), flat(other));
        assert_eq!(x.len(), y.len(), "constant tables differ in shape");
        x.iter()
            .zip(&y)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// Value on circle `j` of `psi_j(t) = -sum_k a_jk cos kt + sum_k b_jk sin kt`.
    pub fn psi(&self, j: usize, t: f64) -> f64 {
        let a = &self.a[j];
        let b = &self.b[j];
        let mut v = -a[0];
        for k in 1..a.len() {
            let kt = k as f64 * t;
            v += -a[k] * kt.cos() + b[k - 1] * kt.sin();
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveDiagnostics {
    /// 1-norm condition estimate of `I - N`.
    pub condition_estimate: f64,
    /// `||(I - N) mu + M gamma||_inf`.
    pub equation_residual: f64,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub problem: ProblemSpec,
    pub mu: GridFunction<f64>,
    pub h: GridFunction<f64>,
    /// `Psi(eta(t))` at the grid nodes.
    pub psi_boundary: GridFunction<Complex64>,
    pub constants: Constants,
    pub diagnostics: SolveDiagnostics,
}

impl Solution {
    /// `max |Re[A Psi] - gamma - h|` over all nodes.
    pub fn boundary_residual(&self) -> f64 {
        let grid = self.problem.grid();
        let coeff = self.problem.coeff();
        grid.points()
            .zip(self.psi_boundary.as_slice())
            .zip(
                self.problem
                    .gamma()
                    .as_slice()
                    .iter()
                    .zip(self.h.as_slice()),
            )
            .map(|((p, psi), (g, h))| ((coeff.at(p) * psi).re - g - h).abs())
            .fold(0.0, f64::max)
    }

    pub fn bandlimit_residual(&self) -> f64 {
        residual_bandlimit(&self.h, self.problem.coeff().ell())
    }

    pub fn evaluate(&self, points: &[Complex64]) -> Result<Vec<Complex64>> {
        evaluate_interior(self, points)
    }
}

/// Discretized operators for one domain, coefficient and grid size; solves
/// for any number of right-hand sides.
#[derive(Debug)]
pub struct GcpSolver {
    domain: CircleDomain,
    coeff: Coefficient,
    grid: Grid,
    n_op: DenseOperator,
    m_op: SingularOperator,
    system: FredholmSystem,
}

impl GcpSolver {
    pub fn new(domain: &CircleDomain, coeff: &Coefficient, n: usize) -> Result<Self> {
        coeff.check_domain(domain)?;
        let grid = Grid::new(domain.len(), n)?;
        let n_op = assemble_n(domain, coeff, &grid)?;
        let m_op = SingularOperator::new(domain, coeff, &grid)?;
        let system = FredholmSystem::factor(&n_op)?;
        Ok(Self {
            domain: domain.clone(),
            coeff: coeff.clone(),
            grid,
            n_op,
            m_op,
            system,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n_operator(&self) -> &DenseOperator {
        &self.n_op
    }

    pub fn m_operator(&self) -> &SingularOperator {
        &self.m_op
    }

    pub fn condition_estimate(&self) -> f64 {
        self.system.condition_estimate()
    }

    pub fn solve(&self, gamma: &GridFunction<f64>) -> Result<Solution> {
        let problem = ProblemSpec::new(self.domain.clone(), self.coeff.clone(), gamma.clone())?;
        self.solve_problem(problem)
    }

    fn solve_problem(&self, problem: ProblemSpec) -> Result<Solution> {
        problem.gamma.check_grid(&self.grid)?;
        let gamma = &problem.gamma;
        let rhs = self.m_op.apply(gamma)?.scaled(-1.0);
        let mu = self.system.solve(&rhs)?;
        let equation_residual = self.system.residual(&mu, &rhs)?;
        let h = compute_h(&mu, gamma, &self.n_op, &self.m_op)?;
        let psi_boundary = boundary_values(&problem, &h, &mu);
        let constants = compute_constants(&h, self.coeff.ell());
        Ok(Solution {
            mu,
            h,
            psi_boundary,
            constants,
            diagnostics: SolveDiagnostics {
                condition_estimate: self.system.condition_estimate(),
                equation_residual,
            },
            problem,
        })
    }
}

/// Solves the general conjugation problem posed by `p`.
pub fn solve_gcp(p: &ProblemSpec) -> Result<Solution> {
    GcpSolver::new(&p.domain, &p.coeff, p.n())?.solve_problem(p.clone())
}

/// `Psi(eta) = (gamma + h + i mu) / A`.
fn boundary_values(
    problem: &ProblemSpec,
    h: &GridFunction<f64>,
    mu: &GridFunction<f64>,
) -> GridFunction<Complex64> {
    let coeff = problem.coeff();
    let values = problem
        .grid()
        .points()
        .enumerate()
        .map(|(idx, p)| {
            let rhs = Complex64::new(
                problem.gamma.as_slice()[idx] + h.as_slice()[idx],
                mu.as_slice()[idx],
            );
            rhs * coeff.at(p).conj()
        })
        .collect();
    GridFunction::from_vec(problem.grid().circles(), problem.n(), values)
        .expect("shape follows the grid")
}

/// `h = [M mu - (I - N) gamma] / 2`.
pub fn compute_h(
    mu: &GridFunction<f64>,
    gamma: &GridFunction<f64>,
    n_op: &DenseOperator,
    m_op: &SingularOperator,
) -> Result<GridFunction<f64>> {
    gamma.check_shape(mu.circles(), mu.n())?;
    let m_mu = m_op.apply(mu)?;
    let n_gamma = n_op.apply(gamma)?;
    let values = m_mu
        .as_slice()
        .iter()
        .zip(gamma.as_slice())
        .zip(n_gamma.as_slice())
        .map(|((mm, g), ng)| 0.5 * (mm - (g - ng)))
        .collect();
    GridFunction::from_vec(mu.circles(), mu.n(), values)
}

/// Trapezoidal Fourier coefficients of `h`, signed so that `h = psi` with
/// `psi_j(t) = -sum a_jk cos kt + sum b_jk sin kt`.
pub fn compute_constants(h: &GridFunction<f64>, ell: u32) -> Constants {
    let n = h.n();
    let m = h.circles();
    let mut out = Constants::zeros(m, ell);
    let nodes: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
    for j in 0..m {
        let hj = h.circle(j);
        out.a[j][0] = -hj.iter().sum::<f64>() / n as f64;
        for k in 1..=ell as usize {
            let (mut c, mut s) = (0.0, 0.0);
            for (v, t) in hj.iter().zip(&nodes) {
                let (sin, cos) = (k as f64 * t).sin_cos();
                c += v * cos;
                s += v * sin;
            }
            out.a[j][k] = -2.0 * c / n as f64;
            out.b[j][k - 1] = 2.0 * s / n as f64;
        }
    }
    out
}

/// Largest sup-norm, over circles, of the part of `h` in Fourier modes
/// `|k| > ell`, relative to `||h||_inf`. Zero when `h = 0`.
pub fn residual_bandlimit(h: &GridFunction<f64>, ell: u32) -> f64 {
    let norm = h.sup_norm();
    if norm == 0.0 {
        return 0.0;
    }
    let n = h.n();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let ell = ell as usize;
    let mut worst: f64 = 0.0;
    for j in 0..h.circles() {
        let mut buf: Vec<Complex64> = h
            .circle(j)
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        fwd.process(&mut buf);
        for (k, c) in buf.iter_mut().enumerate() {
            let freq = k.min(n - k);
            if freq <= ell {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        inv.process(&mut buf);
        let high = buf.iter().fold(0.0_f64, |acc, c| acc.max(c.re.abs())) / n as f64;
        worst = worst.max(high);
    }
    worst / norm
}

/// `Psi(z)` by the trapezoidal Cauchy sum over the clockwise boundary.
pub fn evaluate_point(s: &Solution, z: Complex64) -> Result<Complex64> {
    cauchy_sum(s.problem.domain(), &s.psi_boundary, z)
}

/// `(1/2 pi i) sum_j sum_i (2 pi/n) psi(t_i, j) eta'(t_i, j) / (eta(t_i, j) - z)`
/// for boundary values `psi` of a function analytic in `G` with
/// `Psi(inf) = 0`.
pub fn cauchy_sum(
    domain: &CircleDomain,
    psi: &GridFunction<Complex64>,
    z: Complex64,
) -> Result<Complex64> {
    if let Some(circle) = domain.containing_disk(z) {
        return Err(GnkError::PointInsideDisk {
            re: z.re,
            im: z.im,
            circle,
        });
    }
    let grid = Grid::new(domain.len(), psi.n())?;
    psi.check_grid(&grid)?;
    for (j, c) in domain.circles().iter().enumerate() {
        let margin = NEAR_BOUNDARY_SPACINGS * TAU * c.radius / grid.n() as f64;
        if (z - c.center).norm() - c.radius < margin {
            log::warn!(
                "point {z} is within {NEAR_BOUNDARY_SPACINGS} node spacings of circle {}; Cauchy sum is inaccurate there",
                j + 1
            );
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (j, c) in domain.circles().iter().enumerate() {
        for (&t, value) in grid.nodes().iter().zip(psi.circle(j)) {
            let e = Complex64::cis(-t);
            let eta = c.center + c.radius * e;
            let eta_dot = Complex64::new(0.0, -c.radius) * e;
            sum += value * eta_dot / (eta - z);
        }
    }
    Ok(sum * grid.weight() / Complex64::new(0.0, TAU))
}

/// Evaluates `Psi` at points of `G`. Fails on the first point inside or on
/// a disk.
pub fn evaluate_interior(s: &Solution, points: &[Complex64]) -> Result<Vec<Complex64>> {
    points.par_iter().map(|&z| evaluate_point(s, z)).collect()
}

/// Recovers `h` without the `M mu - (I - N) gamma` formula: finds the
/// degree-`l` trigonometric polynomial per circle for which
/// `(gamma + h + i mu) / A` extends analytically to `G` with value zero at
/// infinity, i.e. whose exterior Cauchy integral has vanishing Taylor
/// coefficients of order `0..=2l` at every disk center. Solved in the least
/// squares sense.
pub fn h_by_analytic_projection(
    problem: &ProblemSpec,
    mu: &GridFunction<f64>,
) -> Result<GridFunction<f64>> {
    let domain = problem.domain();
    let coeff = problem.coeff();
    let grid = problem.grid();
    mu.check_grid(grid)?;
    let m = domain.len();
    let n = grid.n();
    let ell = coeff.ell() as usize;
    let orders = 2 * ell + 1;
    let nodes = BoundaryNodes::new(domain, coeff, grid);

    // Scaled moments (r_k / (eta - z_k))^p eta' / (eta - z_k) at each node.
    let weights: Vec<Vec<Complex64>> = (0..m * orders)
        .map(|row| {
            let (k, p) = (row / orders, row % orders);
            let circle = domain.circle(k);
            nodes
                .eta
                .iter()
                .zip(&nodes.eta_dot)
                .map(|(eta, eta_dot)| {
                    let q = circle.radius / (eta - circle.center);
                    q.powu(p as u32) * eta_dot / (eta - circle.center)
                })
                .collect()
        })
        .collect();
    let moments = |f: &dyn Fn(usize) -> Complex64, support: std::ops::Range<usize>| {
        weights
            .iter()
            .map(|w| {
                support
                    .clone()
                    .map(|idx| w[idx] * f(idx))
                    .sum::<Complex64>()
            })
            .collect::<Vec<_>>()
    };

    let known = moments(
        &|idx| {
            Complex64::new(problem.gamma().as_slice()[idx], mu.as_slice()[idx])
                * nodes.coeff[idx].conj()
        },
        0..m * n,
    );

    // Basis per circle: 1, cos kt, sin kt for k = 1..=l.
    let basis = |q: usize, t: f64| -> f64 {
        match q {
            0 => 1.0,
            q if q % 2 == 1 => (q.div_ceil(2) as f64 * t).cos(),
            q => ((q / 2) as f64 * t).sin(),
        }
    };
    let unknowns = m * orders;
    let rows = 2 * m * orders;
    let mut lhs = DMatrix::<f64>::zeros(rows, unknowns);
    for col in 0..unknowns {
        let (j, q) = (col / orders, col % orders);
        let t = grid.nodes();
        let mom = moments(
            &|idx| basis(q, t[idx - j * n]) * nodes.coeff[idx].conj(),
            j * n..(j + 1) * n,
        );
        for (r, v) in mom.iter().enumerate() {
            lhs[(2 * r, col)] = v.re;
            lhs[(2 * r + 1, col)] = v.im;
        }
    }
    let rhs = DVector::from_iterator(rows, known.iter().flat_map(|v| [-v.re, -v.im]));
    let x = lhs
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| GnkError::InvalidArgument(e.to_string()))?;

    Ok(GridFunction::from_fn(grid, |p| {
        (0..orders)
            .map(|q| x[p.circle * orders + q] * basis(q, p.t))
            .sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Circle;
    use proptest::prelude::*;

    fn unit_problem(n: usize) -> ProblemSpec {
        let d = CircleDomain::new(vec![Circle::new(Complex64::new(0.0, 0.0), 1.0)]).unwrap();
        let g = Grid::new(1, n).unwrap();
        ProblemSpec::new(
            d,
            Coefficient::unit(1),
            GridFunction::from_fn(&g, |p| p.t.cos()),
        )
        .unwrap()
    }

    fn two_circle_solver(ell: u32) -> GcpSolver {
        let d = CircleDomain::new(vec![
            Circle::new(Complex64::new(-1.5, 0.2), 1.0),
            Circle::new(Complex64::new(1.6, -0.1), 0.8),
        ])
        .unwrap();
        let c = Coefficient::new(ell, vec![0.7, -2.1]).unwrap();
        GcpSolver::new(&d, &c, 64).unwrap()
    }

    #[test]
    fn inverse_z_on_unit_circle() {
        let sol = solve_gcp(&unit_problem(64)).unwrap();
        for (i, psi) in sol.psi_boundary.as_slice().iter().enumerate() {
            let t = TAU * i as f64 / 64.0;
            assert!((psi - Complex64::cis(t)).norm() < 1e-13);
            assert!((sol.mu.as_slice()[i] - t.sin()).abs() < 1e-13);
        }
        assert!(sol.h.sup_norm() < 1e-13);
        assert!(sol.constants.a[0][0].abs() < 1e-13);
        let z = evaluate_point(&sol, Complex64::new(2.0, 0.0)).unwrap();
        assert!((z - 0.5).norm() < 1e-13);
        let far = evaluate_point(&sol, Complex64::new(1e6, 0.0)).unwrap();
        assert!(far.norm() <= 2e-6);
        assert!(matches!(
            evaluate_point(&sol, Complex64::new(0.0, 0.0)),
            Err(GnkError::PointInsideDisk { circle: 0, .. })
        ));
        assert!(evaluate_interior(&sol, &[Complex64::new(1.0, 0.0)]).is_err());
        assert!(evaluate_interior(&sol, &[]).unwrap().is_empty());
    }

    #[test]
    fn homogeneous_problem_has_trivial_solution() {
        let solver = two_circle_solver(2);
        let sol = solver.solve(&GridFunction::zeros(2, 64)).unwrap();
        assert_eq!(sol.mu.sup_norm(), 0.0);
        assert_eq!(sol.h.sup_norm(), 0.0);
        assert_eq!(sol.psi_boundary.sup_norm(), 0.0);
        assert_eq!(sol.constants.max_abs_diff(&Constants::zeros(2, 2)), 0.0);
    }

    #[test]
    fn compute_h_examples() {
        let p = unit_problem(32);
        let solver = GcpSolver::new(p.domain(), p.coeff(), 32).unwrap();
        let zero = GridFunction::zeros(1, 32);
        let h = compute_h(&zero, &zero, solver.n_operator(), solver.m_operator()).unwrap();
        assert_eq!(h.sup_norm(), 0.0);
        let mu = GridFunction::from_fn(p.grid(), |q| q.t.sin());
        let h = compute_h(&mu, p.gamma(), solver.n_operator(), solver.m_operator()).unwrap();
        assert!(h.sup_norm() < 1e-14);
    }

    #[test]
    fn constants_examples() {
        let g = Grid::new(2, 16).unwrap();
        let h = GridFunction::from_fn(&g, |p| if p.circle == 0 { 3.0 } else { p.t.cos() });
        let c = compute_constants(&h, 2);
        assert!((c.a[0][0] + 3.0).abs() < 1e-14);
        assert!((c.a[1][1] + 1.0).abs() < 1e-14);
        let mut expected = Constants::zeros(2, 2);
        expected.a[0][0] = -3.0;
        expected.a[1][1] = -1.0;
        assert!(c.max_abs_diff(&expected) < 1e-14);
        let h = GridFunction::from_fn(&g, |p| 5.0 * (2.0 * p.t).sin());
        let c = compute_constants(&h, 2);
        assert!((c.b[0][1] - 5.0).abs() < 1e-14);
        assert_eq!(c.count(), 10);
    }

    #[test]
    fn constants_reproduce_psi() {
        let g = Grid::new(1, 32).unwrap();
        let mut c = Constants::zeros(1, 2);
        c.a[0] = vec![0.3, -0.2, 0.9];
        c.b[0] = vec![0.5, -0.7];
        let h = GridFunction::from_fn(&g, |p| c.psi(p.circle, p.t));
        assert!(compute_constants(&h, 2).max_abs_diff(&c) < 1e-14);
    }

    #[test]
    fn bandlimit_examples() {
        let g = Grid::new(2, 32).unwrap();
        assert_eq!(residual_bandlimit(&GridFunction::zeros(2, 32), 1), 0.0);
        let h = GridFunction::from_fn(&g, |p| {
            if p.circle == 1 {
                (2.0 * p.t).cos()
            } else {
                0.5
            }
        });
        assert!((residual_bandlimit(&h, 1) - 1.0).abs() < 1e-14);
        let low = GridFunction::from_fn(&g, |p| 1.0 + p.t.sin() - 0.3 * p.t.cos());
        assert!(residual_bandlimit(&low, 1) < 1e-15);
    }

    #[test]
    fn converged_h_is_bandlimited_and_projection_agrees() {
        let solver = two_circle_solver(1);
        let gamma = GridFunction::from_fn(solver.grid(), |p| (p.t.sin() + p.circle as f64).exp());
        let sol = solver.solve(&gamma).unwrap();
        assert!(
            sol.bandlimit_residual() < 1e-8,
            "{}",
            sol.bandlimit_residual()
        );
        assert!(sol.boundary_residual() < 1e-12);
        let projected = h_by_analytic_projection(&sol.problem, &sol.mu).unwrap();
        assert!((&projected - &sol.h).sup_norm() < 1e-10);
    }

    #[test]
    fn rejects_mismatched_shapes() {
        let d = CircleDomain::new(vec![Circle::new(Complex64::new(0.0, 0.0), 1.0)]).unwrap();
        let gamma = GridFunction::zeros(2, 16);
        assert!(ProblemSpec::new(d.clone(), Coefficient::unit(1), gamma).is_err());
        assert!(ProblemSpec::new(d, Coefficient::unit(2), GridFunction::zeros(1, 16)).is_err());
        let solver = two_circle_solver(0);
        assert!(solver.solve(&GridFunction::zeros(2, 32)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn solve_is_linear(
            a in proptest::collection::vec(-1.0f64..1.0, 6),
            b in proptest::collection::vec(-1.0f64..1.0, 6),
        ) {
            let solver = two_circle_solver(1);
            let smooth = |c: &[f64]| GridFunction::from_fn(solver.grid(), |p| {
                let o = 3 * p.circle;
                c[o] + c[o + 1] * (p.t + c[o + 2]).cos().exp()
            });
            let (ga, gb) = (smooth(&a), smooth(&b));
            let sa = solver.solve(&ga).unwrap();
            let sb = solver.solve(&gb).unwrap();
            let sum = solver.solve(&(&ga + &gb)).unwrap();
            prop_assert!((&sum.mu - &(&sa.mu + &sb.mu)).sup_norm() < 1e-11);
            prop_assert!((&sum.h - &(&sa.h + &sb.h)).sup_norm() < 1e-11);
            let psi = sum.psi_boundary.zip_map(&sa.psi_boundary, |x, y| x - y).unwrap()
                .zip_map(&sb.psi_boundary, |x, y| x - y).unwrap();
            prop_assert!(psi.sup_norm() < 1e-11);
        }
    }
}
