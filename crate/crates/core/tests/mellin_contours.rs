use summa_core::fractional::{gaussian, super_gaussian};
use summa_core::mellin::{
    mother_line, rectangle_quadrature, rectangle_residue_sum, KernelKind, KernelSpec, RectanglePath, VerticalContour,
};
use summa_core::Complex64;

fn line(kind: KernelKind, c: f64, y: f64) -> Complex64 {
    let g = gaussian();
    let k = KernelSpec::new(kind);
    VerticalContour::new(c)
        .integrate_adaptive(|s| summa_core::mellin::mother_integrand(&k, &g, s, y), 200.0)
        .unwrap()
        .value
}

#[test]
fn identity_rectangle_matches_residues() {
    let g = gaussian();
    let k = KernelSpec::new(KernelKind::Identity);
    let path = RectanglePath::new(-0.5, 4.5, 60.0).unwrap();
    let quad = rectangle_quadrature(&k, &g, &path, 1.0).unwrap();
    let res = rectangle_residue_sum(&k, &g, &path, 1.0).unwrap();
    assert!((-quad.total() - res).norm() < 1e-7, "{} {}", quad.total(), res);
    assert!(quad.horizontal().norm() <= 1e-8 * quad.total().norm());
}

#[test]
fn line_differences_match_pole_terms() {
    let g = gaussian();
    for kind in KernelKind::ALL {
        let k = KernelSpec::new(kind);
        let a = k.canonical_abscissa;
        let b = a + 3.0;
        let path = RectanglePath::new(a, b, 60.0).unwrap();
        let res = rectangle_residue_sum(&k, &g, &path, 1.0).unwrap();
        let diff = line(kind, a, 1.0) - line(kind, b, 1.0);
        assert!((diff - res).norm() < 1e-9, "{kind}: {diff} vs {res}");
        let quad = rectangle_quadrature(&k, &g, &path, 1.0).unwrap();
        assert!(
            quad.horizontal().norm() <= 1e-8 * quad.total().norm().max(1e-300),
            "{kind}: {}",
            quad.horizontal()
        );
    }
}

#[test]
fn zeta_line_is_the_plain_sum() {
    let direct: f64 = (1..40).map(|n| (-0.5 * (n * n) as f64).exp()).sum();
    let v = line(KernelKind::Zeta, -1.5, 1.0);
    assert!((v.re - direct).abs() < 1e-12 && v.im.abs() < 1e-14, "{v}");
}

#[test]
fn quadrature_route_for_functions_without_closed_form() {
    let f = super_gaussian();
    let k = KernelSpec::new(KernelKind::Zeta);
    let r = mother_line(&k, &f, 1.0, &VerticalContour::new(-1.5)).unwrap();
    let direct: f64 = (1..20).map(|n| (-0.5 * (n as f64).powi(4)).exp()).sum();
    assert!((r.value.re - direct).abs() < 1e-9, "{} {direct}", r.value);
}
