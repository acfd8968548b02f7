use criterion::{black_box, criterion_group, criterion_main, Criterion};
use summa_core::arithmetic::{build_tables, default_tables};
use summa_core::expansions::euler_maclaurin;
use summa_core::fractional::{frac_deriv, gaussian, super_gaussian};
use summa_core::rh::{default_zeros, theta_identity_sides};
use summa_core::special::{bessel_y0, gamma, zeta, EvalOptions};
use summa_core::summation::{mobius_poisson_defect, poisson_check, voronoi_rhs_bessel, voronoi_rhs_cosine, LinePair};
use summa_core::Complex64;

fn special(c: &mut Criterion) {
    let o = EvalOptions::default();
    let s = Complex64::new(0.5, 14.134725);
    c.bench_function("zeta critical line", |b| b.iter(|| zeta(black_box(s), &o)));
    c.bench_function("zeta reflected", |b| {
        b.iter(|| zeta(black_box(Complex64::new(-7.5, 3.0)), &o))
    });
    c.bench_function("gamma", |b| b.iter(|| gamma(black_box(Complex64::new(2.5, 10.0)))));
    c.bench_function("bessel y0", |b| b.iter(|| bessel_y0(black_box(12.5))));
}

fn fractional(c: &mut Criterion) {
    let g = gaussian().without_closed_form();
    let sg = super_gaussian();
    let s = Complex64::new(-0.7, 3.0);
    c.bench_function("frac deriv gaussian quadrature", |b| {
        b.iter(|| frac_deriv(&g, black_box(s)))
    });
    c.bench_function("frac deriv super-gaussian", |b| {
        b.iter(|| frac_deriv(&sg, black_box(s)))
    });
}

fn sums(c: &mut Criterion) {
    let g = gaussian();
    let t = default_tables();
    c.bench_function("poisson check", |b| b.iter(|| poisson_check(&g, black_box(1.0))));
    c.bench_function("tables 1e5", |b| b.iter(|| build_tables(black_box(100_000))));
    let mut slow = c.benchmark_group("oscillatory");
    slow.sample_size(10);
    slow.bench_function("voronoi cosine n_max 50", |b| {
        b.iter(|| voronoi_rhs_cosine(t, &g, 1.0, 50))
    });
    slow.bench_function("voronoi bessel n_max 50", |b| {
        b.iter(|| voronoi_rhs_bessel(t, &g, 1.0, 50))
    });
    slow.finish();
}

fn contours(c: &mut Criterion) {
    let g = gaussian();
    let zeros = default_zeros().unwrap();
    let pair = LinePair::zero_avoiding(LinePair::DEFAULT_INDEX, zeros).unwrap();
    let mut group = c.benchmark_group("contours");
    group.sample_size(10);
    group.bench_function("euler-maclaurin N=2", |b| {
        b.iter(|| euler_maclaurin(&g, black_box(-1.0), 2))
    });
    group.bench_function("mobius-poisson defect", |b| {
        b.iter(|| mobius_poisson_defect(default_tables(), &g, 1.0, &pair, 1e-16))
    });
    group.finish();
    c.bench_function("theta identity 100 zeros", |b| {
        b.iter(|| theta_identity_sides(black_box(Complex64::new(0.5, 0.0)), &zeros[..100], 25))
    });
}

criterion_group!(benches, special, fractional, sums, contours);
criterion_main!(benches);
