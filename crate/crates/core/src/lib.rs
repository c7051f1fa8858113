//! Boundary integral solver for the general conjugation problem on
//! unbounded circle domains.
//!
//! Given `m` disjoint circles, an integer `l >= 0`, angles `lambda_j` and
//! boundary data `gamma`, find `Psi` analytic outside the disks with
//! `Psi(inf) = 0` and `(2l + 1) m` real constants such that on circle `j`
//!
//! ```text
//! Re[ e^{i lambda_j} e^{i l t} Psi(eta_j(t)) + sum_{k=1..l} (a_jk + i b_jk) e^{ikt} + a_j0 ] = gamma_j(t).
//! ```
//!
//! ```
//! use gnk::{solve_gcp, Circle, CircleDomain, Coefficient, Grid, GridFunction, ProblemSpec};
//! use num_complex::Complex64;
//!
//! let domain = CircleDomain::new(vec![Circle::new(Complex64::new(0.0, 0.0), 1.0)]).unwrap();
//! let grid = Grid::new(1, 64).unwrap();
//! let gamma = GridFunction::from_fn(&grid, |p| p.t.cos());
//! let problem = ProblemSpec::new(domain, Coefficient::unit(1), gamma).unwrap();
//! let solution = solve_gcp(&problem).unwrap();
//! // Psi(z) = 1/z
//! let psi = solution.evaluate(&[Complex64::new(2.0, 0.0)]).unwrap();
//! assert!((psi[0] - 0.5).norm() < 1e-12);
//! ```

pub mod error;
pub mod geometry;
pub mod kernels;
pub mod nystrom;
pub mod oracle;
pub mod solver;

pub use error::{GnkError, Result};
pub use geometry::{eta, eta_derivatives, uniform_grid, Circle, CircleDomain, Grid, ParamPoint};
pub use kernels::{coeff_a, kernel_m, kernel_m1, kernel_n, Coefficient};
pub use nystrom::{
    apply_m, assemble_n, conjugate_periodic, solve_fredholm, trig_interpolate, Conjugator,
    DenseOperator, FredholmSystem, GridFunction, SingularOperator,
};
pub use oracle::{manufacture, nullspace_dims, verify, ManufacturedProblem, NullspaceReport};
pub use solver::{
    cauchy_sum, compute_constants, compute_h, evaluate_interior, residual_bandlimit, solve_gcp,
    Constants, GcpSolver, ProblemSpec, Solution,
};
