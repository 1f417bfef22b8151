use std::collections::BTreeSet;

use canheight::canonical::{
    canonical_height, height_comparison_constant, naive_weil_height, per_term_bound_arch, AdelicDivisorP1, Depth,
    GreenEvaluator, Section,
};
use canheight::catalog;
use canheight::dynsets::{
    enumerate_rational_points, preperiodic_search, torsion_x_points, CloudPoint, EllipticCurveAB, PointCloud,
};
use canheight::numberfield::{Place, Q};
use canheight::obstruction::{
    certify_slope_zero, check_lemma_nondense, counterexample_sweep, default_family, SectionCandidate, SlopeStatus,
    Verdict,
};
use canheight::projline::{
    is_preperiodic_capped, AlgPoint, BinaryForm, DivisorP1, FormalProduct, ProjPoint, QuadraticPoint, RationalMap,
};
use canheight::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn lattes() -> RationalMap<Q> {
    EllipticCurveAB::from_i64(0, 1).unwrap().lattes_map()
}

#[test]
fn preperiodic_search_matches_exact_orbits() {
    for f in [catalog::squaring(), catalog::chebyshev(), lattes()] {
        let found: BTreeSet<String> =
            preperiodic_search(&f, 10, 1e-6).unwrap().iter().map(|p| p.point.to_string()).collect();
        let exact: BTreeSet<String> = enumerate_rational_points(10)
            .unwrap()
            .into_iter()
            // preperiodic points of naive height <= 10 keep small orbits
            .filter(|x| is_preperiodic_capped(&f, x, 64, 4096).is_preperiodic())
            .map(|x| x.to_string())
            .collect();
        assert_eq!(found, exact);
    }
}

#[test]
fn division_polynomial_degrees() {
    let e = EllipticCurveAB::from_i64(-2, 3).unwrap();
    for n in 1..=8usize {
        let odd = e.division_odd_part(n).unwrap().degree().unwrap_or(0);
        let expect = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n - 4) / 2 };
        assert_eq!(odd, expect, "n = {n}");
        if n > 1 {
            // nonzero points killed by n, up to sign; 2-torsion is its own inverse
            let locus = e.torsion_locus(n).unwrap().degree().unwrap();
            let expect = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n + 2) / 2 };
            assert_eq!(locus, expect, "n = {n}");
        }
    }
    assert_eq!(e.division_polynomial(2).unwrap().degree(), Some(3));
    let total: usize = e.exact_order_loci(8).unwrap().iter().map(|(_, p)| p.degree().unwrap()).sum();
    assert_eq!(total, torsion_x_points(&e, 8).unwrap().len());
}

#[test]
fn product_formula_for_canonical_divisor() {
    let f = lattes();
    let ad = AdelicDivisorP1::canonical(&f, DivisorP1::infinity(), Depth::Tolerance(1e-10)).unwrap();
    for x in [q(3, 4), q(-5, 7), q(11, 2), q(0, 1)] {
        let x = ProjPoint::affine(x);
        let a = ad.height(&x).unwrap();
        let b = ad.height_by_places(&x).unwrap();
        assert!((a.value - b.value).abs() <= a.error + b.error + 1e-10);
    }
}

/// `|h(f y) - d h(y)| <= C_f` for the naive height.
#[test]
fn comparison_constant_audit() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for f in [catalog::chebyshev(), lattes()] {
        let c = height_comparison_constant(&f).unwrap();
        let d = f.degree() as f64;
        for _ in 0..10_000 {
            let x = ProjPoint::affine(q(rng.gen_range(-1000..=1000), rng.gen_range(1..=1000)));
            let dev = naive_weil_height(&f.evaluate(&x)) - d * naive_weil_height(&x);
            assert!(dev.abs() <= c, "{x}: {dev} > {c}");
        }
    }
}

/// The archimedean per-term bound dominates `|log ||F(z)|| - d log ||z|||`.
#[test]
fn per_term_bound_audit() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for f in [catalog::chebyshev(), lattes(), catalog::squaring()] {
        let c = per_term_bound_arch(&f, 0);
        let cm = f.embedded(0);
        let d = f.degree() as f64;
        for _ in 0..10_000 {
            let z = [
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ];
            let norm = |w: [Complex64; 2]| w[0].norm().max(w[1].norm());
            let lambda = norm(cm.apply(z)).ln() - d * norm(z).ln();
            assert!(lambda.abs() <= c, "{lambda} > {c}");
        }
    }
}

#[test]
fn violations_are_sound_and_monotone() {
    let e = EllipticCurveAB::from_i64(0, 1).unwrap();
    let f = e.lattes_map();
    let cloud = torsion_x_points(&e, 6).unwrap();
    let s = FormalProduct { scalar: q(1, 1), factors: vec![(BinaryForm::linear_root(q(2, 1)), 1.0)] };
    let cand = SectionCandidate::new("x - 2z", s.clone(), DivisorP1::infinity()).unwrap();
    let tight = check_lemma_nondense(&f, &cand, &cloud, Place::INF, 1e-3).unwrap();
    let loose = check_lemma_nondense(&f, &cand, &cloud, Place::INF, 0.5).unwrap();
    assert_eq!(tight.verdict, Verdict::ViolationFound);
    assert!(loose.violations.len() <= tight.violations.len());

    // every reported violation re-evaluates below 1 - tol
    let section = Section::new(s, DivisorP1::infinity()).unwrap();
    let ev = GreenEvaluator::archimedean(&f, 0, tight.depth).unwrap();
    for v in &tight.violations {
        let n = section.norm_at(&ev, v.point);
        assert!(n.value + n.error < 1.0 - 1e-3);
        assert!((n.value - v.value).abs() < 1e-12);
    }
}

#[test]
fn squaring_sweep_keeps_the_control() {
    let f = catalog::squaring();
    let n = 2000;
    let pts = (0..n)
        .map(|k| CloudPoint::sample(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64)))
        .collect();
    let cloud = PointCloud::from_points("inf", pts);
    let summary = counterexample_sweep(&f, &default_family(), &cloud, Place::INF, 1e-3).unwrap();
    assert!(summary.survivors.iter().any(|s| s == "x - 0z"));
    assert!(summary.survivors.iter().any(|s| s == "(x/z)^1"));
    assert_eq!(summary.invalid.len(), 2);
}

#[test]
fn slope_certificate_counts() {
    let f = catalog::squaring();
    let w: Vec<AlgPoint> = vec![
        ProjPoint::affine(q(0, 1)).into(),
        ProjPoint::affine(q(1, 1)).into(),
        ProjPoint::affine(q(-1, 1)).into(),
        ProjPoint::<Q>::infinity().into(),
        QuadraticPoint::from_i64(1, 1, 1, 1).unwrap().into(),
    ];
    assert_eq!(certify_slope_zero(&f, &w, 5).unwrap().status, SlopeStatus::Certified);
    assert_eq!(certify_slope_zero(&f, &w, 6).unwrap().status, SlopeStatus::Inconclusive);
    let mut with_wanderer = w.clone();
    with_wanderer.push(ProjPoint::affine(q(2, 1)).into());
    assert_eq!(certify_slope_zero(&f, &with_wanderer, 1).unwrap().status, SlopeStatus::Inconclusive);
    let mut dup = w.clone();
    dup.push(w[0].clone());
    assert!(matches!(certify_slope_zero(&f, &dup, 1), Err(Error::Invalid(_))));
}

#[test]
fn heights_decay_to_zero_along_backward_pairs() {
    // h(x) = d^-1 h(f x): preimages of a point of height H have height H/2
    let f = catalog::squaring();
    let h4 = canonical_height(&f, &ProjPoint::affine(q(4, 1)).into(), 1e-12).unwrap();
    let h2 = canonical_height(&f, &ProjPoint::affine(q(-2, 1)).into(), 1e-12).unwrap();
    assert!((h4.value - 2.0 * h2.value).abs() < 1e-12);
}
