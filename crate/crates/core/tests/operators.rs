use gnk::oracle::{nullspace_report, random_domain};
use gnk::{
    assemble_n, nullspace_dims, Circle, CircleDomain, Coefficient, GnkError, Grid, GridFunction,
};
use num_complex::Complex64;

#[test]
fn null_space_dimension_counts_free_constants() {
    for (m, ell) in [(1, 0u32), (2, 2), (4, 1)] {
        let d = random_domain(m, 7 + m as u64).unwrap();
        let c = Coefficient::new(ell, vec![0.25; m]).unwrap();
        let r = nullspace_dims(&d, &c, 96).unwrap();
        assert_eq!(r.dims(), (m * (2 * ell as usize + 1), 0));
        assert!(r.matches_theory());
    }
}

#[test]
fn rotating_the_coefficient_changes_nothing_in_the_count() {
    let d = random_domain(2, 3).unwrap();
    let a = nullspace_report(&d, &Coefficient::new(1, vec![0.0, 0.0]).unwrap(), 64).unwrap();
    let b = nullspace_report(&d, &Coefficient::new(1, vec![2.0, -1.0]).unwrap(), 64).unwrap();
    assert_eq!(a.dims(), b.dims());
}

#[test]
fn constants_are_annihilated_by_i_plus_n_when_l_is_zero() {
    let d = random_domain(3, 11).unwrap();
    let c = Coefficient::new(0, vec![0.4, 1.0, -2.0]).unwrap();
    let grid = Grid::new(3, 64).unwrap();
    let op = assemble_n(&d, &c, &grid).unwrap();
    let h = GridFunction::from_fn(&grid, |p| [1.0, -3.0, 0.5][p.circle]);
    let nh = op.apply(&h).unwrap();
    assert!((&nh + &h).sup_norm() < 1e-12);
}

#[test]
fn invalid_domains_are_rejected() {
    let c = |x: f64, r: f64| Circle::new(Complex64::new(x, 0.0), r);
    assert!(matches!(
        CircleDomain::new(vec![]),
        Err(GnkError::EmptyDomain)
    ));
    assert!(matches!(
        CircleDomain::new(vec![c(0.0, 1.0), c(2.0, 1.0)]),
        Err(GnkError::Overlap {
            first: 0,
            second: 1,
            ..
        })
    ));
    assert!(matches!(
        CircleDomain::new(vec![c(0.0, -1.0)]),
        Err(GnkError::NonPositiveRadius { index: 0, .. })
    ));
    let d = CircleDomain::new(vec![c(0.0, 1.0)]).unwrap();
    assert!(Coefficient::new(1, vec![0.0, 0.0])
        .unwrap()
        .check_domain(&d)
        .is_err());
}
