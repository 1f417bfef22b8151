use std::collections::BTreeMap;

use canheight::canonical::{
    canonical_height, height_comparison_constant, naive_height_telescope, naive_weil_height, principalize_spec_q,
    speck_degree, Exponent, GreenEvaluator, Principality, SpecKDivisor,
};
use canheight::catalog;
use canheight::dynsets::{backward_orbit_sample, essential_support_sample, CloudPoint, PointCloud, DEFAULT_LADDER};
use canheight::numberfield::{parse_rational, QuadInt, Q};
use canheight::projline::{
    pullback_and_multiplier, sylvester_resultant, BinaryForm, DivisorP1, ProjPoint, RationalMap, DEFAULT_BIT_CAP,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn lattes() -> RationalMap<Q> {
    RationalMap::from_i64(&[1, 0, 0, -8, 0], &[0, 4, 0, 0, 4]).unwrap()
}

fn rational() -> impl Strategy<Value = Q> {
    (-50i64..=50, 1i64..=20).prop_map(|(a, b)| Q::new(a.into(), b.into()))
}

fn point() -> impl Strategy<Value = ProjPoint<Q>> {
    prop_oneof![9 => rational().prop_map(ProjPoint::affine), 1 => Just(ProjPoint::infinity())]
}

fn form(deg: usize) -> impl Strategy<Value = BinaryForm<Q>> {
    prop::collection::vec(-6i64..=6, deg + 1).prop_map(|c| BinaryForm::new(c.into_iter().map(q).collect()))
}

/// `x^2 + c z^2` for small rational `c`; the denominator of `c` puts bad
/// primes into play.
fn quadratic_family() -> impl Strategy<Value = RationalMap<Q>> {
    (-6i64..=6, 1i64..=12).prop_map(|(a, b)| {
        let c = Q::new(a.into(), b.into());
        RationalMap::new(BinaryForm::new(vec![q(1), q(0), c]), BinaryForm::new(vec![q(0), q(0), q(1)])).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quad_norm_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000) {
        let x = QuadInt::new(a, b);
        let y = QuadInt::new(c, d);
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn resultant_swap_sign(f in form(2), g in form(3)) {
        prop_assume!(f.coeff(0) != q(0) || f.coeff(1) != q(0));
        let (Ok(r1), Ok(r2)) = (sylvester_resultant(&f, &g), sylvester_resultant(&g, &f)) else {
            return Ok(());
        };
        // (-1)^(2*3)
        prop_assert_eq!(r1, r2);
    }

    #[test]
    fn pullback_degree_and_multiplier(a in rational(), w in 0.25f64..3.0) {
        let f = lattes();
        let d = DivisorP1::from_terms([(BinaryForm::linear_root(a), w), (BinaryForm::z(), 1.0)]);
        let (pb, phi) = pullback_and_multiplier(&f, &d);
        prop_assert!((pb.degree() - 4.0 * d.degree()).abs() < 1e-9);
        prop_assert!(phi.degree().abs() < 1e-9);
        prop_assert!(pb.same_as(&d.scaled(4.0).plus(&phi.divisor())));
    }

    #[test]
    fn escape_functional_equation(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        for f in [lattes(), catalog::chebyshev()] {
            let ev = GreenEvaluator::archimedean(&f, 0, 60).unwrap();
            let z = [Complex64::new(re, im), Complex64::new(1.0, 0.0)];
            let fz = f.embedded(0).apply(z);
            let d = f.degree() as f64;
            let lhs = ev.escape_complex(fz);
            let rhs = d * ev.escape_complex(z);
            prop_assert!((lhs - rhs).abs() <= (d + 1.0) * ev.escape_error() + 1e-9, "{} vs {}", lhs, rhs);
        }
    }

    #[test]
    fn heights_are_nonnegative(f in quadratic_family(), x in point()) {
        let h = canonical_height(&f, &x.into(), 1e-9).unwrap();
        prop_assert!(h.value >= -h.error - 1e-12, "h = {}", h.value);
    }

    #[test]
    fn height_recursion_with_bad_primes(f in quadratic_family(), x in point()) {
        let hx = canonical_height(&f, &x.clone().into(), 1e-10).unwrap();
        let hfx = canonical_height(&f, &f.evaluate(&x).into(), 1e-10).unwrap();
        prop_assert!((hfx.value - 2.0 * hx.value).abs() <= hfx.error + 2.0 * hx.error + 1e-12);
    }

    #[test]
    fn telescope_brackets_height(x in point()) {
        let f = catalog::chebyshev();
        let n = 8;
        let h = canonical_height(&f, &x.clone().into(), 1e-10).unwrap();
        let t = naive_height_telescope(&f, &x, n, DEFAULT_BIT_CAP).unwrap();
        let c = height_comparison_constant(&f).unwrap();
        // |h - h_naive| <= C/(d-1) applied to f^n(x), scaled by d^-n
        prop_assert!((h.value - t).abs() <= c / 2f64.powi(n as i32) + h.error);
        prop_assert!((h.value - naive_weil_height(&x)).abs() <= c + h.error);
    }

    #[test]
    fn principalize_round_trip(exps in prop::collection::btree_map(prop::sample::select(vec![2u64, 3, 5, 7, 11, 101]), -9i64..=9, 0..6)) {
        let t: BTreeMap<u64, Q> = exps.into_iter().filter(|(_, e)| *e != 0).map(|(p, e)| (p, q(e))).collect();
        let z = SpecKDivisor::principal(&t).unwrap();
        prop_assert!(speck_degree(&z).is_zero());
        let Principality::Principal { exponents } = principalize_spec_q(&z) else {
            return Err(TestCaseError::fail("principal divisor reported non-principal"));
        };
        prop_assert_eq!(exponents.len(), t.len());
        for (p, e) in &t {
            match &exponents[&p.to_string()] {
                Exponent::Exact(s) => prop_assert_eq!(&parse_rational(s).unwrap(), e),
                Exponent::Real(_) => return Err(TestCaseError::fail("inexact exponent")),
            }
        }
    }

    #[test]
    fn backward_orbits_obey_modulus_law(r in 0.2f64..5.0, arg in 0.0f64..6.28, seed in any::<u64>()) {
        prop_assume!((r - 1.0).abs() > 1e-3);
        let f = catalog::squaring().embedded(0);
        let cloud = backward_orbit_sample(&f, Some(Complex64::from_polar(r, arg)), 8, 2, seed).unwrap();
        for p in cloud.points() {
            let k = p.depth.unwrap() as i32;
            let expect = r.powf(2f64.powi(-k));
            prop_assert!((p.value.unwrap().norm() - expect).abs() <= 1e-9 * expect.max(1.0));
        }
    }

    #[test]
    fn essential_support_is_monotone(a in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 0..300),
                                     b in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 0..300)) {
        let to_cloud = |v: &[(f64, f64)]| PointCloud::from_points(
            "inf",
            v.iter().map(|&(x, y)| CloudPoint::sample(Complex64::new(x, y))).collect(),
        );
        let small = to_cloud(&a);
        let mut both = a.clone();
        both.extend_from_slice(&b);
        let big = to_cloud(&both);
        let s_small = essential_support_sample(&small, 4, &DEFAULT_LADDER);
        let s_big = essential_support_sample(&big, 4, &DEFAULT_LADDER);
        let kept: Vec<_> = s_big.finite_values();
        for z in s_small.finite_values() {
            prop_assert!(kept.contains(&z));
        }
        // a larger budget keeps fewer points
        prop_assert!(essential_support_sample(&big, 8, &DEFAULT_LADDER).len() <= s_big.len());
    }
}
