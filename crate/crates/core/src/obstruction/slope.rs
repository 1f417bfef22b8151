//! The zero certificate for the essential minimum and the asymptotic
//! maximal slope of a canonical compactification.

use std::collections::HashSet;

use serde::Serialize;

use crate::canonical::{Depth, HeightContext};
use crate::error::{Error, Result};
use crate::numberfield::Q;
use crate::projline::{is_preperiodic_alg, AlgPoint, OrbitVerdict, RationalMap};

/// Exact orbit steps allowed per witness.
pub const WITNESS_STEPS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeStatus {
    Certified,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub point: AlgPoint,
    pub verdict: OrbitVerdict,
    pub height: f64,
    pub height_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SlopeVerdict {
    pub status: SlopeStatus,
    pub min_count: usize,
    pub exact_certificates: usize,
    /// Every exact witness has canonical height exactly 0, so the essential
    /// minimum is at most 0 (given Zariski density of the family).
    pub essential_minimum_at_most_zero: bool,
    /// Heights are nonnegative (the canonical divisor is nef).
    pub nef_lower_bound_zero: bool,
    /// `Some(0)` when certified.
    pub slope: Option<f64>,
    pub caveat: String,
    pub witnesses: Vec<WitnessRecord>,
}

/// Checks that each witness is exactly preperiodic (hence of height 0) and
/// reports the essential minimum and the asymptotic maximal slope as 0 when
/// at least `min_count` exact certificates are found.
pub fn certify_slope_zero(f: &RationalMap<Q>, witnesses: &[AlgPoint], min_count: usize) -> Result<SlopeVerdict> {
    let mut seen = HashSet::new();
    for w in witnesses {
        if !seen.insert(w.clone()) {
            return Err(Error::Invalid(format!("duplicate witness {w}")));
        }
    }
    let ctx = HeightContext::new(f, Depth::Tolerance(1e-10))?;
    let mut records = Vec::new();
    let mut exact = 0;
    let mut heights_nonneg = true;
    for w in witnesses {
        let verdict = is_preperiodic_alg(f, w, WITNESS_STEPS);
        let h = ctx.height(w)?;
        if verdict.is_preperiodic() {
            exact += 1;
        }
        heights_nonneg &= h.value >= -h.error;
        records.push(WitnessRecord { point: w.clone(), verdict, height: h.value, height_error: h.error });
    }
    let certified = exact >= min_count.max(1) && exact == witnesses.len();
    Ok(SlopeVerdict {
        status: if certified { SlopeStatus::Certified } else { SlopeStatus::Inconclusive },
        min_count,
        exact_certificates: exact,
        essential_minimum_at_most_zero: certified,
        nef_lower_bound_zero: heights_nonneg,
        slope: if certified && heights_nonneg { Some(0.0) } else { None },
        caveat: "finitely many witnesses stand in for a Zariski-dense set of height-zero points".into(),
        witnesses: records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::projline::{ProjPoint, QuadraticPoint};

    #[test]
    fn squaring_roots_of_unity() {
        let mut w: Vec<AlgPoint> = [0i64, 1, -1]
            .iter()
            .map(|&n| AlgPoint::Rational(ProjPoint::affine(Q::from_integer(n.into()))))
            .collect();
        w.push(AlgPoint::Rational(ProjPoint::infinity()));
        // quadratic roots of unity: orders 3, 4, 6
        for (c1, c0) in [(1, 1), (0, 1), (-1, 1)] {
            for s in [1, -1] {
                w.push(AlgPoint::Quadratic(QuadraticPoint::from_i64(1, c1, c0, s).unwrap()));
            }
        }
        let v = certify_slope_zero(&catalog::squaring(), &w, 8).unwrap();
        assert_eq!(v.status, SlopeStatus::Certified);
        assert_eq!(v.slope, Some(0.0));
        let v = certify_slope_zero(&catalog::squaring(), &[], 1).unwrap();
        assert_eq!(v.status, SlopeStatus::Inconclusive);
    }
}
