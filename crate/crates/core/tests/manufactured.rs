use gnk::oracle::{random_domain, rng, RationalPsi};
use gnk::solver::h_by_analytic_projection;
use gnk::{
    compute_constants, conjugate_periodic, manufacture, residual_bandlimit, solve_gcp, verify,
    Circle, CircleDomain, Coefficient, Constants, GridFunction,
};
use num_complex::Complex64;
use rand::Rng;

fn lambdas(m: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..m).map(|_| r.random_range(-3.0..3.0)).collect()
}

#[test]
fn recovers_manufactured_solutions() {
    for (m, ell, poles, seed) in [(1, 0, 1, 1u64), (2, 1, 2, 2), (3, 2, 1, 3), (4, 1, 2, 4)] {
        let d = random_domain(m, seed).unwrap();
        let c = Coefficient::new(ell, lambdas(m, seed)).unwrap();
        let p = manufacture(&d, &c, 128, seed, poles).unwrap();
        let s = solve_gcp(&p.spec).unwrap();
        let report = verify(&p, &s).unwrap();
        assert!(report.max_error() < 1e-9, "m={m} l={ell}: {report:?}");
        assert!(s.bandlimit_residual() < 1e-9);
        assert!(s.boundary_residual() < 1e-12);
    }
}

#[test]
fn boundary_condition_holds_with_returned_constants() {
    let d = random_domain(2, 9).unwrap();
    let c = Coefficient::new(2, vec![1.0, -0.5]).unwrap();
    let p = manufacture(&d, &c, 96, 9, 2).unwrap();
    let s = solve_gcp(&p.spec).unwrap();
    let grid = p.spec.grid();
    for (idx, pt) in grid.points().enumerate() {
        let lhs = (c.at(pt) * s.psi_boundary.as_slice()[idx]).re - s.constants.psi(pt.circle, pt.t);
        assert!((lhs - p.spec.gamma().as_slice()[idx]).abs() < 1e-10);
    }
}

#[test]
fn conjugation_matches_single_circle_analytic_trace() {
    // For Psi = c / (eta - z0) on a single circle the traces satisfy
    // Im Psi - mean = -S(Re Psi), since the clockwise parametrization makes
    // the trace a series in positive powers of e^{it}.
    let d = CircleDomain::new(vec![Circle::new(Complex64::new(0.5, -0.5), 1.5)]).unwrap();
    let psi = RationalPsi {
        centers: vec![Complex64::new(0.5, -0.5)],
        coeffs: vec![vec![Complex64::new(0.3, 0.7), Complex64::new(-0.2, 0.1)]],
    };
    let c = Coefficient::unit(1);
    let p = gnk::oracle::manufacture_with(&d, &c, 64, psi, Constants::zeros(1, 0), 0).unwrap();
    let exact = p.psi_boundary_exact();
    let re: Vec<f64> = exact.as_slice().iter().map(|v| v.re).collect();
    let im: Vec<f64> = exact.as_slice().iter().map(|v| v.im).collect();
    let s = conjugate_periodic(&re).unwrap();
    let mean_im = im.iter().sum::<f64>() / 64.0;
    for i in 0..64 {
        assert!((s[i] + (im[i] - mean_im)).abs() < 1e-12);
    }
}

#[test]
fn constants_of_exact_h_are_recovered() {
    let d = random_domain(2, 33).unwrap();
    let c = Coefficient::new(2, lambdas(2, 33)).unwrap();
    let p = manufacture(&d, &c, 64, 33, 1).unwrap();
    let h = p.h_exact();
    assert!(residual_bandlimit(&h, 2) < 1e-13);
    // The fitted constants reproduce h.
    let k = compute_constants(&h, 2);
    let back = GridFunction::from_fn(p.spec.grid(), |q| k.psi(q.circle, q.t));
    assert!((&back - &h).sup_norm() < 1e-13);
}

#[test]
fn projection_agrees_with_formula() {
    let d = random_domain(3, 44).unwrap();
    let c = Coefficient::new(1, lambdas(3, 44)).unwrap();
    let p = manufacture(&d, &c, 128, 44, 2).unwrap();
    let s = solve_gcp(&p.spec).unwrap();
    let projected = h_by_analytic_projection(&p.spec, &s.mu).unwrap();
    assert!((&projected - &s.h).sup_norm() < 1e-10);
}
