use std::f64::consts::PI;

use summa_core::arithmetic::{build_tables, default_tables, dirichlet_consistency, DirichletSeries};
use summa_core::expansions::{euler_circle, euler_maclaurin, euler_mobius_poisson_sides, euler_voronoi};
use summa_core::fixtures;
use summa_core::fractional::{gaussian, sech2};
use summa_core::rh::{default_zeros, fit_growth_constant, zero_side_partials, zeros_below};
use summa_core::summation::{mobius_poisson_defect, verify, weighted_sum, Formula, LinePair, VerifyOptions, Weights};
use summa_core::Complex64;

const SCALES: [f64; 3] = [0.7, 1.0, 1.4];

fn oracle(name: &str, x: f64) -> f64 {
    fixtures::lookup(&fixtures::load("oracle.tsv").unwrap(), name, x)
        .unwrap()
        .re
}

#[test]
fn expansions_reproduce_direct_sums() {
    let g = gaussian();
    let t = default_tables();
    for y in SCALES {
        let ones = weighted_sum(t, Weights::Ones, &g, y, 1e-16).unwrap().value;
        let d = weighted_sum(t, Weights::D, &g, y, 1e-16).unwrap().value;
        let r = weighted_sum(t, Weights::R, &g, y, 1e-16).unwrap().value;
        let em = euler_maclaurin(&g, -y, 2).unwrap().total();
        let ev = euler_voronoi(&g, -y, 2).unwrap().total();
        let ec = euler_circle(&g, -y).unwrap().total();
        assert!((em.re - ones).abs() <= 1e-7 && em.im.abs() <= 1e-7, "y={y} {em} {ones}");
        assert!((ev.re - d).abs() <= 1e-7, "y={y} {ev} {d}");
        assert!((ec.re - 0.25 * r).abs() <= 1e-7, "y={y} {ec} {r}");
    }
}

#[test]
fn euler_maclaurin_remainder_is_order_free_for_gaussian() {
    // odd derivatives at 0 vanish and zeta(-2k) = 0, so every order has the same remainder
    let g = gaussian();
    let r: Vec<f64> = (1..=3)
        .map(|n| euler_maclaurin(&g, -1.0, n).unwrap().remainder_value.unwrap().re)
        .collect();
    assert!((r[0] - r[1]).abs() <= 1e-12 && (r[1] - r[2]).abs() <= 1e-12, "{r:?}");
    assert!(r[0].abs() > 1e-9);
}

#[test]
fn summation_residuals_within_tails() {
    let g = gaussian();
    let t = default_tables();
    let z = default_zeros().unwrap();
    let opts = VerifyOptions::default();
    for f in Formula::ALL {
        if f == Formula::MobiusNaive {
            continue;
        }
        for y in SCALES {
            let r = verify(f, t, z, &g, y, &opts).unwrap();
            let tol = 1e-5f64.max(10.0 * (r.lhs_tail_bound + r.rhs_tail_bound));
            assert!(r.residual <= tol, "{f} y={y} {r:?}");
        }
    }
}

#[test]
fn naive_mobius_pair_differs() {
    let r = verify(
        Formula::MobiusNaive,
        default_tables(),
        default_zeros().unwrap(),
        &gaussian(),
        1.0,
        &VerifyOptions::default(),
    )
    .unwrap();
    assert!(r.residual > 1e-8, "{r:?}");
}

#[test]
fn zero_side_settles_inside_the_strip() {
    let z = default_zeros().unwrap();
    let p = zero_side_partials(Complex64::new(0.3, 0.0), z, 1).unwrap();
    let window: Vec<Complex64> = p[59..100].iter().map(|&(_, s)| s).collect();
    for s in &window {
        assert!((s - window[0]).norm() <= 1e-3, "{s} {}", window[0]);
    }
    assert_eq!(zeros_below(z, p[99].0).len(), 29);
}

#[test]
fn gaussian_growth_constant() {
    let g = gaussian();
    let a = fit_growth_constant(&g, 0.8, (-6.0, 6.0), (-20.0, 20.0), 25).unwrap();
    assert!(a <= 600.0, "{a}");
    let b = fit_growth_constant(&g, 0.7, (-6.0, 6.0), (-20.0, 20.0), 25).unwrap();
    assert!(b.is_finite() && b >= a);
}

#[test]
fn series_and_contour_defects_agree() {
    let g = gaussian();
    let sides = euler_mobius_poisson_sides(&g, Complex64::new(0.0, 0.0), 200).unwrap();
    let pair = LinePair::zero_avoiding(LinePair::DEFAULT_INDEX, default_zeros().unwrap()).unwrap();
    let d = mobius_poisson_defect(default_tables(), &g, 1.0, &pair, 1e-16).unwrap();
    assert!((sides.defect().re - d.contour).abs() <= 1e-8, "{sides:?} {d:?}");
    assert!((sides.defect().re - d.series).abs() <= 1e-8);
}

#[test]
fn growth_hypothesis_rejects_sech2() {
    assert!(euler_mobius_poisson_sides(&sech2(), Complex64::new(0.0, 0.0), 200).is_err());
}

#[test]
fn dirichlet_series_at_three() {
    let t = build_tables(100_000).unwrap();
    let s = Complex64::new(3.0, 0.0);
    let (p, target) = dirichlet_consistency(&t, DirichletSeries::Divisors, s).unwrap();
    assert!((p - target).norm() <= 1e-6);
    assert!((target.re - oracle("zeta3_sq", 3.0)).abs() <= 1e-14);
    let (p, target) = dirichlet_consistency(&t, DirichletSeries::TwoSquares, s).unwrap();
    assert!((p - target).norm() <= 1e-6);
    assert!((target.re - 4.0 * oracle("zeta3_l4", 3.0)).abs() <= 1e-13);
    let (p, target) = dirichlet_consistency(&t, DirichletSeries::Mobius, s).unwrap();
    assert!((p - target).norm() <= 1e-6);
}

#[test]
fn poisson_at_self_dual_scale() {
    let y = (2.0 * PI).sqrt();
    let r = verify(
        Formula::Poisson,
        default_tables(),
        &[],
        &gaussian(),
        y,
        &VerifyOptions::default(),
    )
    .unwrap();
    assert!(r.residual <= 1e-14, "{r:?}");
    assert!((r.lhs - oracle("poisson_lhs", 2.5066282746310007)).abs() <= 1e-14);
}
