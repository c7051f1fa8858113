//! Fixed problems shared by the benchmarks.

use gnk::oracle::random_domain;
use gnk::{manufacture, Coefficient, ManufacturedProblem};

/// A manufactured problem on `m` random circles with degree `ell`.
pub fn problem(m: usize, ell: u32, n: usize) -> ManufacturedProblem {
    let domain = random_domain(m, 17).expect("fixture domain");
    let lambdas = (0..m).map(|j| 0.37 * j as f64 - 0.5).collect();
    let coeff = Coefficient::new(ell, lambdas).expect("fixture coefficient");
    manufacture(&domain, &coeff, n, 17, 2).expect("fixture problem")
}

/// `cos(3t) + 0.5 sin(7t)` sampled at `n` nodes.
pub fn periodic_samples(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (3.0 * t).cos() + 0.5 * (7.0 * t).sin()
        })
        .collect()
}
