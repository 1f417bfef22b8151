//! Rational points of bounded height and certified preperiodic points
//! among them.

use num_integer::Integer;
use serde::Serialize;

use crate::canonical::{Depth, HeightContext};
use crate::error::{Error, Result};
use crate::numberfield::Q;
use crate::projline::{is_preperiodic_exact, OrbitVerdict, ProjPoint, RationalMap};

/// Iteration cap for the exact confirmation stage.
pub const CONFIRM_STEPS: usize = 256;

/// Accuracy of the height filter.
const FILTER_TOL: f64 = 1e-11;

/// All `(p : q)` with `gcd(p, q) = 1`, `max(|p|, |q|) <= bound`, and the
/// point at infinity (listed last).
pub fn enumerate_rational_points(bound: u64) -> Result<Vec<ProjPoint<Q>>> {
    if bound < 1 {
        return Err(Error::Invalid("height bound must be at least 1".into()));
    }
    let b = bound as i64;
    let mut out = Vec::new();
    for q in 1..=b {
        for p in -b..=b {
            if p.gcd(&q) == 1 || (p == 0 && q == 1) {
                out.push(ProjPoint::affine(Q::new(p.into(), q.into())));
            }
        }
    }
    out.push(ProjPoint::infinity());
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PreperiodicPoint {
    pub point: ProjPoint<Q>,
    pub tail: usize,
    pub period: usize,
    pub height: f64,
    pub height_error: f64,
}

/// Points of naive height at most `bound` that are preperiodic: first those
/// with canonical height at most `eps` (up to the certified error), then
/// only those confirmed by an exact repeated orbit point.
pub fn preperiodic_search(f: &RationalMap<Q>, bound: u64, eps: f64) -> Result<Vec<PreperiodicPoint>> {
    if !(eps > 0.0) {
        return Err(Error::Invalid("eps must be positive".into()));
    }
    let ctx = HeightContext::new(f, Depth::Tolerance(FILTER_TOL.min(eps / 10.0)))?;
    let mut out = Vec::new();
    for x in enumerate_rational_points(bound)? {
        let h = ctx.height_rational(&x)?;
        if h.value - h.error > eps {
            continue;
        }
        if let OrbitVerdict::Preperiodic { tail, period } = is_preperiodic_exact(f, &x, CONFIRM_STEPS) {
            out.push(PreperiodicPoint { point: x, tail, period, height: h.value, height_error: h.error });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dynsets::EllipticCurveAB;

    fn q(n: i64) -> ProjPoint<Q> {
        ProjPoint::affine(Q::from_integer(n.into()))
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_rational_points(1).unwrap().len(), 4);
        assert_eq!(enumerate_rational_points(2).unwrap().len(), 8);
        assert!(enumerate_rational_points(0).is_err());
    }

    #[test]
    fn example_searches() {
        let pts = |f: &RationalMap<Q>| -> Vec<ProjPoint<Q>> {
            preperiodic_search(f, 5, 1e-6).unwrap().into_iter().map(|p| p.point).collect()
        };
        let z2 = pts(&catalog::squaring());
        assert_eq!(z2.len(), 4);
        for x in [q(0), q(1), q(-1), ProjPoint::infinity()] {
            assert!(z2.contains(&x));
        }
        let lat = pts(&EllipticCurveAB::from_i64(0, 1).unwrap().lattes_map());
        for x in [q(0), q(-1), ProjPoint::infinity()] {
            assert!(lat.contains(&x));
        }
        let cheb = pts(&catalog::chebyshev());
        for x in [q(0), q(1), q(-1), q(2), q(-2), ProjPoint::infinity()] {
            assert!(cheb.contains(&x));
        }
    }
}
