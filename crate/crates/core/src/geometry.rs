//! Circle domains, their clockwise boundary parametrization and the
//! uniform Nyström grid.
//!
//! The domain `G` is the complement of `m` disjoint closed disks in the
//! extended plane. Circle `j` is traversed clockwise,
//! `eta_j(t) = z_j + r_j e^{-it}`, which keeps `G` on the left.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{GnkError, Result};

/// Gap (relative to the smaller radius) below which a pair of circles is
/// reported as nearly touching.
pub const NEAR_CONTACT_RATIO: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Self { center, radius }
    }
}

/// A pair of circles whose gap is small relative to their radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearContact {
    pub first: usize,
    pub second: usize,
    pub gap: f64,
}

/// Validated set of pairwise disjoint circles.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleDomain {
    circles: Vec<Circle>,
}

impl CircleDomain {
    /// Validates radii and strict disjointness of the closed disks.
    ///
    /// Nearly touching pairs are accepted but logged; see
    /// [`CircleDomain::near_contacts`].
    pub fn new(circles: Vec<Circle>) -> Result<Self> {
        if circles.is_empty() {
            return Err(GnkError::EmptyDomain);
        }
        for (index, c) in circles.iter().enumerate() {
            if c.radius <= 0.0 || !c.radius.is_finite() {
                return Err(GnkError::NonPositiveRadius {
                    index,
                    radius: c.radius,
                });
            }
            if !c.center.re.is_finite() || !c.center.im.is_finite() {
                return Err(GnkError::NonFinite("circle center"));
            }
        }
        for j in 0..circles.len() {
            for k in j + 1..circles.len() {
                let distance = (circles[j].center - circles[k].center).norm();
                let radius_sum = circles[j].radius + circles[k].radius;
                if distance <= radius_sum {
                    return Err(GnkError::Overlap {
                        first: j,
                        second: k,
                        distance,
                        radius_sum,
                    });
                }
            }
        }
        let domain = Self { circles };
        for nc in domain.near_contacts() {
            log::warn!(
                "circles {} and {} are nearly touching (gap {:.3e}); expect poor conditioning",
                nc.first + 1,
                nc.second + 1,
                nc.gap
            );
        }
        Ok(domain)
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn circle(&self, j: usize) -> &Circle {
        &self.circles[j]
    }

    /// Connectivity `m`.
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn min_radius(&self) -> f64 {
        self.circles
            .iter()
            .map(|c| c.radius)
            .fold(f64::INFINITY, f64::min)
    }

    /// Pairs with `gap < NEAR_CONTACT_RATIO * min(r_j, r_k)`.
    pub fn near_contacts(&self) -> Vec<NearContact> {
        let mut out = Vec::new();
        for j in 0..self.circles.len() {
            for k in j + 1..self.circles.len() {
                let (a, b) = (&self.circles[j], &self.circles[k]);
                let gap = (a.center - b.center).norm() - (a.radius + b.radius);
                if gap < NEAR_CONTACT_RATIO * a.radius.min(b.radius) {
                    out.push(NearContact {
                        first: j,
                        second: k,
                        gap,
                    });
                }
            }
        }
        out
    }

    /// Smallest gap between any pair of circles, `None` for `m = 1`.
    pub fn min_gap(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for j in 0..self.circles.len() {
            for k in j + 1..self.circles.len() {
                let (a, b) = (&self.circles[j], &self.circles[k]);
                let gap = (a.center - b.center).norm() - (a.radius + b.radius);
                best = Some(best.map_or(gap, |g| g.min(gap)));
            }
        }
        best
    }

    /// Index of the first closed disk containing `z`, if any.
    pub fn containing_disk(&self, z: Complex64) -> Option<usize> {
        self.circles
            .iter()
            .position(|c| (z - c.center).norm() <= c.radius)
    }

    /// Distance from `z` to the nearest circle (negative inside a disk).
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        self.circles
            .iter()
            .map(|c| (z - c.center).norm() - c.radius)
            .fold(f64::INFINITY, f64::min)
    }
}

/// A boundary parameter `(t, j)`; `circle` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub t: f64,
    pub circle: usize,
}

impl ParamPoint {
    pub fn new(t: f64, circle: usize) -> Self {
        Self { t, circle }
    }

    pub fn validate(&self, domain: &CircleDomain) -> Result<()> {
        if !(0.0..TAU).contains(&self.t) || self.circle >= domain.len() {
            return Err(GnkError::InvalidParamPoint {
                t: self.t,
                circle: self.circle,
                m: domain.len(),
            });
        }
        Ok(())
    }
}

/// `eta_j(t) = z_j + r_j e^{-it}`.
pub fn eta(p: ParamPoint, domain: &CircleDomain) -> Complex64 {
    let c = domain.circle(p.circle);
    c.center + c.radius * Complex64::cis(-p.t)
}

/// First and second parameter derivatives of `eta`. Their ratio is `-i`
/// on every circle.
pub fn eta_derivatives(p: ParamPoint, domain: &CircleDomain) -> (Complex64, Complex64) {
    let r = domain.circle(p.circle).radius;
    let e = Complex64::cis(-p.t);
    (Complex64::new(0.0, -r) * e, -r * e)
}

/// Uniform node-at-zero grid with `n` points per circle.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    m: usize,
    n: usize,
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(GnkError::InvalidGridSize(n));
        }
        if m == 0 {
            return Err(GnkError::EmptyDomain);
        }
        let nodes = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        Ok(Self { m, n, nodes })
    }

    /// Number of circles.
    pub fn circles(&self) -> usize {
        self.m
    }

    /// Points per circle.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total node count `m * n`.
    pub fn len(&self) -> usize {
        self.m * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameter values `t_i = 2 pi i / n`, shared by every circle.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Trapezoidal weight, identical for every node.
    pub fn weight(&self) -> f64 {
        TAU / self.n as f64
    }

    pub fn point(&self, circle: usize, i: usize) -> ParamPoint {
        ParamPoint::new(self.nodes[i], circle)
    }

    /// All nodes in circle-major order.
    pub fn points(&self) -> impl Iterator<Item = ParamPoint> + '_ {
        (0..self.m).flat_map(move |j| (0..self.n).map(move |i| self.point(j, i)))
    }
}

pub fn uniform_grid(domain: &CircleDomain, n: usize) -> Result<Grid> {
    Grid::new(domain.len(), n)
}
