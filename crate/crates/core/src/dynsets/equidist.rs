//! Binned comparison of a point cloud with the uniform measure on the unit
//! circle or on the Riemann sphere.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

use super::cloud::{to_sphere, PointCloud};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    /// Uniform measure on |z| = 1, binned by argument.
    UniformCircle,
    /// Normalized area on P^1(C) with the chordal metric, binned in
    /// equal-area height bands times longitude sectors.
    UniformSphere,
}

impl std::str::FromStr for Reference {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-circle" | "circle" => Ok(Reference::UniformCircle),
            "uniform-sphere" | "sphere" => Ok(Reference::UniformSphere),
            _ => Err(Error::Invalid(format!("unknown reference measure {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub reference: Reference,
    pub points: usize,
    pub bins: usize,
    /// `max_b |count_b / n - mass_b|`.
    pub max_bin_deviation: f64,
    /// `|mean z|` over finite points (circle) or the norm of the mean unit
    /// vector (sphere).
    pub first_moment: f64,
    pub counts: Vec<usize>,
}

fn circle_bin(z: Complex64, bins: usize) -> usize {
    let t = (z.arg() + std::f64::consts::PI) / (2.0 * std::f64::consts::PI);
    ((t * bins as f64) as usize).min(bins - 1)
}

/// Index of the equal-area cell of a sphere point in a `k x k` grid: height
/// bands in the z-coordinate (Archimedes) times longitude sectors.
pub fn sphere_cell(p: [f64; 3], k: usize) -> usize {
    let band = (((p[2] + 1.0) / 2.0 * k as f64) as usize).min(k - 1);
    let t = (p[1].atan2(p[0]) + std::f64::consts::PI) / (2.0 * std::f64::consts::PI);
    let sector = ((t * k as f64) as usize).min(k - 1);
    band * k + sector
}

pub fn equidistribution_discrepancy(cloud: &PointCloud, reference: Reference, bins: usize) -> Result<Discrepancy> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if bins == 0 {
        return Err(Error::Invalid("bin count must be positive".into()));
    }
    let n = cloud.len();
    let (counts, first_moment) = match reference {
        Reference::UniformCircle => {
            let mut counts = vec![0usize; bins];
            let mut sum = Complex64::new(0.0, 0.0);
            let mut finite = 0usize;
            for p in cloud.points() {
                if let Some(z) = p.value {
                    counts[circle_bin(z, bins)] += 1;
                    sum += z;
                    finite += 1;
                }
            }
            let m = if finite == 0 { 0.0 } else { (sum / finite as f64).norm() };
            (counts, m)
        }
        Reference::UniformSphere => {
            let k = (bins as f64).sqrt().round().max(1.0) as usize;
            let mut counts = vec![0usize; k * k];
            let mut s = [0.0; 3];
            for p in cloud.points() {
                let u = to_sphere(p.value);
                counts[sphere_cell(u, k)] += 1;
                for i in 0..3 {
                    s[i] += u[i];
                }
            }
            let m = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt() / n as f64;
            (counts, m)
        }
    };
    let mass = 1.0 / counts.len() as f64;
    let max_bin_deviation = counts.iter().map(|&c| (c as f64 / n as f64 - mass).abs()).fold(0.0, f64::max);
    Ok(Discrepancy { reference, points: n, bins: counts.len(), max_bin_deviation, first_moment, counts })
}

/// Fraction of the cells of the `k x k` equal-area sphere grid that
/// contain at least one cloud point.
pub fn sphere_coverage(cloud: &PointCloud, k: usize) -> f64 {
    let mut hit = vec![false; k * k];
    for p in cloud.points() {
        hit[sphere_cell(to_sphere(p.value), k)] = true;
    }
    hit.iter().filter(|&&h| h).count() as f64 / (k * k) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsets::cloud::CloudPoint;

    fn circle(n: usize, phase: f64) -> PointCloud {
        PointCloud::from_points(
            "inf",
            (0..n)
                .map(|j| CloudPoint::sample(Complex64::from_polar(1.0, phase + 2.0 * std::f64::consts::PI * j as f64 / n as f64)))
                .collect(),
        )
    }

    #[test]
    fn uniform_grid_and_single_point() {
        let d = equidistribution_discrepancy(&circle(640, 0.01), Reference::UniformCircle, 64).unwrap();
        assert!(d.max_bin_deviation < 1e-12);
        assert!(d.first_moment < 1e-12);
        let one = PointCloud::from_points("inf", vec![CloudPoint::sample(Complex64::new(1.0, 0.0))]);
        let d = equidistribution_discrepancy(&one, Reference::UniformCircle, 64).unwrap();
        assert!((d.max_bin_deviation - 63.0 / 64.0).abs() < 1e-12);
        assert!(matches!(
            equidistribution_discrepancy(&PointCloud::new("inf"), Reference::UniformCircle, 8),
            Err(Error::EmptyCloud)
        ));
    }

    #[test]
    fn sphere_cells_cover() {
        let mut c = PointCloud::new("inf");
        for i in 0..200 {
            for j in 0..200 {
                let zc = -1.0 + (i as f64 + 0.5) / 100.0;
                let t = (j as f64 + 0.5) / 200.0 * 2.0 * std::f64::consts::PI - std::f64::consts::PI;
                // invert the stereographic map
                let r = ((1.0 + zc) / (1.0 - zc)).sqrt();
                c.push(CloudPoint::sample(Complex64::from_polar(r, t)));
            }
        }
        assert_eq!(sphere_coverage(&c, 20), 1.0);
        let d = equidistribution_discrepancy(&c, Reference::UniformSphere, 400).unwrap();
        assert!(d.max_bin_deviation < 1e-9, "{}", d.max_bin_deviation);
    }
}
