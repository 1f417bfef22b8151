//! Finite-sample approximation of essential supports: keep the points that
//! stay accumulation points after deleting any `budget` points of the set.

use std::collections::HashMap;

use super::cloud::{to_sphere, PointCloud};

/// Default cell sizes on the sphere (side lengths in R^3).
pub const DEFAULT_LADDER: [f64; 2] = [0.5, 0.25];

/// Default number of deletable points.
pub const DEFAULT_BUDGET: usize = 16;

/// Grid offset keeping symmetric sets (e.g. the unit circle, which maps to
/// the equator) off cell boundaries.
const OFFSET: f64 = 0.123_456_789;

fn cell(p: [f64; 3], s: f64) -> (i64, i64, i64) {
    let f = |x: f64| ((x + 1.0 + OFFSET) / s).floor() as i64;
    (f(p[0]), f(p[1]), f(p[2]))
}

/// Survivors of the thinning: a point is kept when, at every scale of the
/// ladder, its cube cell on the Riemann sphere holds at least `budget + 2`
/// points of `s`, so at least two remain after any `budget` deletions.
/// Enlarging `s` never removes a survivor.
pub fn essential_support_sample(s: &PointCloud, budget: usize, ladder: &[f64]) -> PointCloud {
    let sphere: Vec<[f64; 3]> = s.points().iter().map(|p| to_sphere(p.value)).collect();
    let mut keep = vec![true; sphere.len()];
    for &scale in ladder {
        let mut counts: HashMap<(i64, i64, i64), usize> = HashMap::new();
        for p in &sphere {
            *counts.entry(cell(*p, scale)).or_insert(0) += 1;
        }
        for (k, p) in sphere.iter().enumerate() {
            if counts[&cell(*p, scale)] < budget + 2 {
                keep[k] = false;
            }
        }
    }
    let points = s.points().iter().zip(&keep).filter(|(_, &k)| k).map(|(p, _)| *p).collect();
    PointCloud::from_points(&s.place, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsets::cloud::CloudPoint;
    use num_complex::Complex64;

    #[test]
    fn finite_sets_vanish() {
        let c = PointCloud::from_points(
            "inf",
            (0..10).map(|k| CloudPoint::sample(Complex64::new(k as f64, 0.0))).collect(),
        );
        assert!(essential_support_sample(&c, 10, &DEFAULT_LADDER).is_empty());
    }
}
