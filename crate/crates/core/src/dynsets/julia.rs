//! Backward-orbit sampling of Julia sets.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::projline::ComplexMap;

use super::cloud::{chordal, CloudPoint, PointCloud, Provenance};
use super::roots::polynomial_roots;

/// Largest number of points a backward orbit may produce.
pub const POINT_BUDGET: usize = 1_000_000;

/// Perturbed retries before a failing root solve is reported.
const RETRIES: usize = 3;

/// Two preimages closer than this (chordally) count as one.
const DISTINCT_EPS: f64 = 1e-7;

/// All preimages of `t` (None is infinity) with multiplicity, from the roots
/// of `F(w, 1) - t G(w, 1)`; a drop in degree contributes infinity.
pub fn preimages(f: &ComplexMap, t: Option<Complex64>) -> Result<Vec<Option<Complex64>>> {
    let d = f.degree();
    // ComplexMap stores coefficients x-major; reverse to lowest first in w
    let poly: Vec<Complex64> = match t {
        None => f.g.iter().rev().cloned().collect(),
        Some(t) => f.f.iter().zip(&f.g).map(|(a, b)| a - t * b).rev().collect(),
    };
    let mut deg = d;
    while deg > 0 && poly[deg].norm() <= 1e-300 {
        deg -= 1;
    }
    let mut out: Vec<Option<Complex64>> = polynomial_roots(&poly[..=deg])?.into_iter().map(Some).collect();
    out.extend(std::iter::repeat(None).take(d - deg));
    Ok(out)
}

fn preimages_retry(f: &ComplexMap, t: Option<Complex64>) -> Result<Vec<Option<Complex64>>> {
    let mut last = None;
    for k in 0..=RETRIES {
        let tt = match (t, k) {
            (t, 0) => t,
            (Some(t), k) => Some(t * (1.0 + 1e-13 * k as f64)),
            (None, _) => None,
        };
        match preimages(f, tt) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

fn distinct(points: &[Option<Complex64>]) -> Vec<Option<Complex64>> {
    let mut out: Vec<Option<Complex64>> = Vec::new();
    for p in points {
        if !out.iter().any(|q| chordal(*p, *q) < DISTINCT_EPS) {
            out.push(*p);
        }
    }
    out
}

/// Whether the backward orbit of `seed` is finite. Exceptional sets have at
/// most two points, so the orbit closes up within two steps if at all.
pub fn is_exceptional(f: &ComplexMap, seed: Option<Complex64>) -> Result<bool> {
    let mut level = vec![seed];
    let mut all = vec![seed];
    for _ in 0..2 {
        let mut next = Vec::new();
        for t in &level {
            next.extend(distinct(&preimages_retry(f, *t)?));
        }
        let next = distinct(&next);
        let fresh: Vec<Option<Complex64>> =
            next.iter().filter(|p| !all.iter().any(|q| chordal(**p, *q) < DISTINCT_EPS)).cloned().collect();
        if fresh.is_empty() {
            return Ok(true);
        }
        all.extend(fresh);
        level = next;
    }
    Ok(false)
}

fn node_rng(seed: u64, depth: usize, index: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(((depth as u64) << 40) ^ index as u64);
    r
}

/// A tree of random inverse images of `seed`: each node keeps `per_node`
/// of its `d` preimages (chosen without replacement). Node `j` at one level
/// has children `j * per_node + c` at the next. All levels from 1 to
/// `depth` are returned, each point tagged with its depth.
pub fn backward_orbit_sample(
    f: &ComplexMap,
    seed: Option<Complex64>,
    depth: usize,
    per_node: usize,
    rng_seed: u64,
) -> Result<PointCloud> {
    let d = f.degree();
    if per_node == 0 || per_node > d {
        return Err(Error::Invalid(format!("per-node count must lie in 1..={d}")));
    }
    let mut total = 0usize;
    let mut width = 1usize;
    for _ in 0..depth {
        width = width.checked_mul(per_node).ok_or_else(|| Error::Invalid("backward orbit too large".into()))?;
        total = total.saturating_add(width);
    }
    if total > POINT_BUDGET {
        return Err(Error::Invalid(format!("backward orbit would hold {total} points (budget {POINT_BUDGET})")));
    }
    if is_exceptional(f, seed)? {
        return Err(Error::ExceptionalSeed);
    }
    let mut cloud = PointCloud::new("inf");
    let mut level = vec![seed];
    for k in 1..=depth {
        let next: Result<Vec<Vec<Option<Complex64>>>> = level
            .par_iter()
            .enumerate()
            .map(|(j, t)| {
                let pre = preimages_retry(f, *t)?;
                let mut rng = node_rng(rng_seed, k, j);
                let mut chosen: Vec<usize> = sample(&mut rng, d, per_node).into_vec();
                chosen.sort_unstable();
                Ok(chosen.into_iter().map(|i| pre[i]).collect())
            })
            .collect();
        level = next?.into_iter().flatten().collect();
        for p in &level {
            cloud.push(CloudPoint { value: *p, provenance: Provenance::BackwardOrbit, depth: Some(k as u32) });
        }
    }
    Ok(cloud)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn squaring_modulus_law() {
        let f = catalog::squaring().embedded(0);
        let cloud = backward_orbit_sample(&f, Some(Complex64::new(2.0, 0.0)), 6, 2, 7).unwrap();
        assert_eq!(cloud.len(), 2 + 4 + 8 + 16 + 32 + 64);
        for p in cloud.points() {
            let k = p.depth.unwrap() as i32;
            let want = 2f64.powf(2f64.powi(-k));
            assert!((p.value.unwrap().norm() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn exceptional_seeds_rejected() {
        let f = catalog::squaring().embedded(0);
        assert!(matches!(
            backward_orbit_sample(&f, Some(Complex64::new(0.0, 0.0)), 3, 2, 1),
            Err(Error::ExceptionalSeed)
        ));
        assert!(matches!(backward_orbit_sample(&f, None, 3, 2, 1), Err(Error::ExceptionalSeed)));
        assert!(!is_exceptional(&f, Some(Complex64::new(1.0, 0.0))).unwrap());
    }

    #[test]
    fn deterministic_given_seed() {
        let (a, b) = catalog::lattes_forms(&crate::numberfield::Q::from_integer(0.into()), &crate::numberfield::Q::from_integer(1.into()));
        let f = crate::projline::RationalMap::new(a, b).unwrap().embedded(0);
        let s = Some(Complex64::new(0.3, 0.2));
        let c1 = backward_orbit_sample(&f, s, 4, 2, 11).unwrap();
        let c2 = backward_orbit_sample(&f, s, 4, 2, 11).unwrap();
        assert_eq!(c1, c2);
        let c3 = backward_orbit_sample(&f, s, 4, 2, 12).unwrap();
        assert_ne!(c1, c3);
    }
}
