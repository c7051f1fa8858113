//! Coefficient `A` and the kernels `N`, `M`, `M1` on circle boundaries.
//!
//! For two points on the same circle the kernels depend only on
//! `u = s - t` and reduce to Dirichlet-type quotients:
//!
//! ```text
//! N(s,t)  = -(1/2pi) sin((l+1/2)u) / sin(u/2)
//! M1(s,t) =  (1/2pi) [cos(u/2) - cos((l+1/2)u)] / sin(u/2)
//! ```
//!
//! These are used for every same-circle pair; the generic quotient
//! `A(s)/A(t) * eta'(t) / (eta(t) - eta(s))` cancels badly near the diagonal.

use std::f64::consts::{FRAC_1_PI, PI, TAU};

use num_complex::Complex64;

use crate::error::{GnkError, Result};
use crate::geometry::{eta, eta_derivatives, CircleDomain, ParamPoint};

/// `A(t) = e^{i lambda_j} e^{i l t}` on circle `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficient {
    ell: u32,
    lambdas: Vec<f64>,
}

impl Coefficient {
    pub fn new(ell: u32, lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(GnkError::EmptyDomain);
        }
        if lambdas.iter().any(|l| !l.is_finite()) {
            return Err(GnkError::NonFinite("lambdas"));
        }
        Ok(Self { ell, lambdas })
    }

    /// `A == 1` on every circle.
    pub fn unit(m: usize) -> Self {
        Self {
            ell: 0,
            lambdas: vec![0.0; m],
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn circles(&self) -> usize {
        self.lambdas.len()
    }

    /// Winding number of `A` along one circle.
    pub fn circle_index(&self) -> u32 {
        self.ell
    }

    /// Winding number of `A` along the whole boundary, `m * l`.
    pub fn total_index(&self) -> u32 {
        self.ell * self.lambdas.len() as u32
    }

    /// `(2l + 1) m`, the number of free real constants and the dimension
    /// of the null space of `I + N`.
    pub fn free_constants(&self) -> usize {
        (2 * self.ell as usize + 1) * self.lambdas.len()
    }

    pub fn check_domain(&self, domain: &CircleDomain) -> Result<()> {
        if self.lambdas.len() != domain.len() {
            return Err(GnkError::ShapeMismatch {
                what: "lambdas",
                expected: domain.len().to_string(),
                found: self.lambdas.len().to_string(),
            });
        }
        Ok(())
    }

    pub fn at(&self, p: ParamPoint) -> Complex64 {
        Complex64::cis(self.lambdas[p.circle] + self.ell as f64 * p.t)
    }

    /// `A'(t) / A(t) = i l`.
    pub fn log_derivative(&self) -> Complex64 {
        Complex64::new(0.0, self.ell as f64)
    }
}

pub fn coeff_a(p: ParamPoint, c: &Coefficient) -> Complex64 {
    c.at(p)
}

/// Wraps `u` into `(-pi, pi]`. Both closed forms are invariant under
/// `u -> u + 2pi`.
fn wrap(u: f64) -> f64 {
    let mut w = u % TAU;
    if w > PI {
        w -= TAU;
    } else if w <= -PI {
        w += TAU;
    }
    w
}

/// Same-circle `N` as a function of `u = s - t`.
pub fn same_circle_n(ell: u32, u: f64) -> f64 {
    let u = wrap(u);
    let half = ell as f64 + 0.5;
    if u == 0.0 {
        return -(2.0 * half) / TAU;
    }
    -(half * u).sin() / ((0.5 * u).sin() * TAU)
}

/// Same-circle `M1` as a function of `u = s - t`; zero on the diagonal.
pub fn same_circle_m1(ell: u32, u: f64) -> f64 {
    let u = wrap(u);
    if u == 0.0 || ell == 0 {
        return 0.0;
    }
    let half = ell as f64 + 0.5;
    ((0.5 * u).cos() - (half * u).cos()) / ((0.5 * u).sin() * TAU)
}

/// `(1/pi) (A_s / A_t) eta'(t) / (eta(t) - eta(s))` for points on different
/// circles. `N` is its imaginary part, `M` its real part.
#[inline]
pub(crate) fn cross_quotient(
    a_s: Complex64,
    a_t: Complex64,
    eta_s: Complex64,
    eta_t: Complex64,
    eta_dot_t: Complex64,
) -> Complex64 {
    // |A| = 1, so 1/A_t = conj(A_t).
    a_s * a_t.conj() * eta_dot_t / (eta_t - eta_s) * FRAC_1_PI
}

fn cross_at(s: ParamPoint, t: ParamPoint, d: &CircleDomain, c: &Coefficient) -> Complex64 {
    let (eta_dot_t, _) = eta_derivatives(t, d);
    cross_quotient(c.at(s), c.at(t), eta(s, d), eta(t, d), eta_dot_t)
}

/// Generalized Neumann kernel `N(s, t)`.
pub fn kernel_n(s: ParamPoint, t: ParamPoint, d: &CircleDomain, c: &Coefficient) -> f64 {
    if s.circle == t.circle {
        same_circle_n(c.ell, s.t - t.t)
    } else {
        cross_at(s, t, d, c).im
    }
}

/// Singular kernel `M(s, t)` for points on different circles.
pub fn kernel_m(s: ParamPoint, t: ParamPoint, d: &CircleDomain, c: &Coefficient) -> Result<f64> {
    if s.circle == t.circle {
        return Err(GnkError::SameCircle);
    }
    Ok(cross_at(s, t, d, c).re)
}

/// Continuous part `M1(s,t) = M(s,t) + (1/2pi) cot((s-t)/2)` for points on
/// the same circle.
pub fn kernel_m1(s: ParamPoint, t: ParamPoint, _d: &CircleDomain, c: &Coefficient) -> Result<f64> {
    if s.circle != t.circle {
        return Err(GnkError::InvalidArgument(
            "M1 is only defined for points on the same circle".into(),
        ));
    }
    Ok(same_circle_m1(c.ell, s.t - t.t))
}
