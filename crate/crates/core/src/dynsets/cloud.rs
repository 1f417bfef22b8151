//! Finite samples of P^1(C) with per-point provenance, and their CSV and
//! PPM encodings.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Where a sample point came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// An exact preperiodic point with its certificate.
    Preperiodic { tail: u32, period: u32 },
    /// A numerical inverse image in a backward orbit.
    BackwardOrbit,
    /// The x-coordinate of a torsion point of the given exact order.
    Torsion { order: u32 },
    /// Anything else, e.g. a grid sample.
    Sample,
}

impl Provenance {
    pub fn tag(&self) -> String {
        match self {
            Provenance::Preperiodic { tail, period } => format!("preperiodic:{tail}:{period}"),
            Provenance::BackwardOrbit => "backward".into(),
            Provenance::Torsion { order } => format!("torsion:{order}"),
            Provenance::Sample => "sample".into(),
        }
    }

    pub fn parse(tag: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown provenance tag {tag:?}"));
        let parts: Vec<&str> = tag.split(':').collect();
        match parts.as_slice() {
            ["backward"] => Ok(Provenance::BackwardOrbit),
            ["sample"] => Ok(Provenance::Sample),
            ["torsion", n] => Ok(Provenance::Torsion { order: n.parse().map_err(|_| bad())? }),
            ["preperiodic", t, p] => Ok(Provenance::Preperiodic {
                tail: t.parse().map_err(|_| bad())?,
                period: p.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }

    /// Points whose membership in the preperiodic set is certified exactly
    /// or by construction, as opposed to heuristic samples.
    pub fn is_certified(&self) -> bool {
        matches!(self, Provenance::Preperiodic { .. } | Provenance::Torsion { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CloudPoint {
    /// `None` is the point at infinity.
    pub value: Option<Complex64>,
    pub provenance: Provenance,
    pub depth: Option<u32>,
}

impl CloudPoint {
    pub fn sample(z: Complex64) -> Self {
        CloudPoint { value: Some(z), provenance: Provenance::Sample, depth: None }
    }
}

/// Image on the unit sphere under inverse stereographic projection, with
/// infinity at the north pole.
pub fn to_sphere(z: Option<Complex64>) -> [f64; 3] {
    match z {
        None => [0.0, 0.0, 1.0],
        Some(z) => {
            let r2 = z.norm_sqr();
            if !r2.is_finite() {
                return [0.0, 0.0, 1.0];
            }
            let d = 1.0 + r2;
            [2.0 * z.re / d, 2.0 * z.im / d, (r2 - 1.0) / d]
        }
    }
}

/// Chordal distance on P^1(C).
pub fn chordal(a: Option<Complex64>, b: Option<Complex64>) -> f64 {
    let (u, v) = (to_sphere(a), to_sphere(b));
    ((u[0] - v[0]).powi(2) + (u[1] - v[1]).powi(2) + (u[2] - v[2]).powi(2)).sqrt() / 2.0
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PointCloud {
    pub place: String,
    points: Vec<CloudPoint>,
}

const CSV_HEADER: &str = "re,im,tag,depth";

impl PointCloud {
    pub fn new(place: &str) -> Self {
        PointCloud { place: place.to_string(), points: Vec::new() }
    }

    pub fn from_points(place: &str, points: Vec<CloudPoint>) -> Self {
        PointCloud { place: place.to_string(), points }
    }

    pub fn push(&mut self, p: CloudPoint) {
        self.points.push(p);
    }

    pub fn extend(&mut self, other: &PointCloud) {
        self.points.extend_from_slice(&other.points);
    }

    pub fn points(&self) -> &[CloudPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Finite values only.
    pub fn finite_values(&self) -> Vec<Complex64> {
        self.points.iter().filter_map(|p| p.value).collect()
    }

    /// `re,im,tag,depth`; infinity is a row with empty coordinates and tag
    /// `INF:<provenance>`.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(48 * self.points.len() + 16);
        s.push_str(CSV_HEADER);
        s.push('\n');
        for p in &self.points {
            let depth = p.depth.map(|d| d.to_string()).unwrap_or_default();
            match p.value {
                Some(z) => writeln!(s, "{:.16e},{:.16e},{},{depth}", z.re, z.im, p.provenance.tag()).unwrap(),
                None => writeln!(s, ",,INF:{},{depth}", p.provenance.tag()).unwrap(),
            }
        }
        s
    }

    pub fn from_csv(place: &str, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == CSV_HEADER => {}
            _ => return Err(Error::Invalid(format!("cloud CSV must start with the header {CSV_HEADER}"))),
        }
        let mut cloud = PointCloud::new(place);
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Invalid(format!("cloud CSV line {}: {what}", i + 2));
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 4 {
                return Err(bad("expected 4 columns"));
            }
            let depth = if cols[3].is_empty() { None } else { Some(cols[3].parse().map_err(|_| bad("bad depth"))?) };
            let (value, tag) = match cols[2].strip_prefix("INF") {
                Some(rest) => (None, rest.trim_start_matches(':')),
                None => {
                    let re: f64 = cols[0].parse().map_err(|_| bad("bad real part"))?;
                    let im: f64 = cols[1].parse().map_err(|_| bad("bad imaginary part"))?;
                    (Some(Complex64::new(re, im)), cols[2])
                }
            };
            let provenance = if tag.is_empty() { Provenance::Sample } else { Provenance::parse(tag)? };
            cloud.push(CloudPoint { value, provenance, depth });
        }
        Ok(cloud)
    }

    /// Binary P6 raster of the finite points, black on white, on the chart
    /// `[-R, R]^2` with `R` fitted to the 99th percentile of `max(|re|, |im|)`.
    pub fn to_ppm(&self, res: usize) -> Vec<u8> {
        let res = res.max(1);
        let mut extent: Vec<f64> = self
            .finite_values()
            .iter()
            .map(|z| z.re.abs().max(z.im.abs()))
            .filter(|v| v.is_finite())
            .collect();
        extent.sort_by(f64::total_cmp);
        let r = if extent.is_empty() {
            1.0
        } else {
            let k = ((extent.len() as f64) * 0.99).ceil() as usize;
            (extent[k.clamp(1, extent.len()) - 1] * 1.05).max(1e-9)
        };
        let mut data = vec![255u8; res * res * 3];
        for z in self.finite_values() {
            let u = (z.re + r) / (2.0 * r) * res as f64;
            let v = (r - z.im) / (2.0 * r) * res as f64;
            if u >= 0.0 && v >= 0.0 && (u as usize) < res && (v as usize) < res {
                let i = ((v as usize) * res + u as usize) * 3;
                data[i..i + 3].copy_from_slice(&[0, 0, 0]);
            }
        }
        let mut out = format!("P6\n{res} {res}\n255\n").into_bytes();
        out.extend(data);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let mut c = PointCloud::new("inf");
        c.push(CloudPoint { value: Some(Complex64::new(0.1, -2.5)), provenance: Provenance::BackwardOrbit, depth: Some(3) });
        c.push(CloudPoint { value: None, provenance: Provenance::Preperiodic { tail: 0, period: 1 }, depth: None });
        c.push(CloudPoint { value: Some(Complex64::new(1.0 / 3.0, 0.0)), provenance: Provenance::Torsion { order: 5 }, depth: None });
        let text = c.to_csv();
        assert!(text.starts_with("re,im,tag,depth\n"));
        let back = PointCloud::from_csv("inf", &text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn ppm_header() {
        let c = PointCloud::from_points("inf", vec![CloudPoint::sample(Complex64::new(0.5, 0.5))]);
        let img = c.to_ppm(10);
        assert!(img.starts_with(b"P6\n10 10\n255\n"));
        assert_eq!(img.len(), 13 + 300);
        assert!(img[13..].contains(&0));
    }

    #[test]
    fn sphere_map() {
        assert_eq!(to_sphere(None), [0.0, 0.0, 1.0]);
        assert_eq!(to_sphere(Some(Complex64::new(0.0, 0.0))), [0.0, 0.0, -1.0]);
        assert!((chordal(Some(Complex64::new(1.0, 0.0)), Some(Complex64::new(-1.0, 0.0))) - 1.0).abs() < 1e-15);
    }
}
