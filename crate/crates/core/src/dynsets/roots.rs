//! Simultaneous polynomial root finding (Aberth-Ehrlich) with a residual
//! certificate evaluated in double-double arithmetic.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Certificate threshold: `|p(z)| <= RESIDUAL * sum |c_i| |z|^i`.
pub const RESIDUAL: f64 = 1e-12;

const MAX_ITER: usize = 2000;

/// Degrees from which the iteration runs in parallel.
const PAR_DEGREE: usize = 256;

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
}

impl Dd {
    fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let lo = s.lo + self.lo + o.lo;
        let r = two_sum(s.hi, lo);
        Dd { hi: r.hi, lo: r.lo }
    }

    fn mul_f64(self, x: f64) -> Dd {
        let p = self.hi * x;
        let e = self.hi.mul_add(x, -p);
        let r = two_sum(p, e + self.lo * x);
        Dd { hi: r.hi, lo: r.lo }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Horner in double-double: `sum c_i z^i`, lowest first.
fn horner_dd(c: &[Complex64], z: Complex64) -> Complex64 {
    let (mut re, mut im) = (Dd::new(0.0), Dd::new(0.0));
    for a in c.iter().rev() {
        let nre = re.mul_f64(z.re).add(im.mul_f64(z.im).neg());
        let nim = re.mul_f64(z.im).add(im.mul_f64(z.re));
        re = nre.add(Dd::new(a.re));
        im = nim.add(Dd::new(a.im));
    }
    Complex64::new(re.to_f64(), im.to_f64())
}

/// `p(z)` and `p'(z)` by double-double Horner.
fn horner_dd2(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let d: Vec<Complex64> = c.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
    (horner_dd(c, z), horner_dd(&d, z))
}

/// Relative residual `|p(z)| / sum |c_i| |z|^i`, evaluated on the reversed
/// polynomial when `|z| > 1` to avoid overflow.
pub fn relative_residual(c: &[Complex64], z: Complex64) -> f64 {
    let (coeffs, w): (Vec<Complex64>, Complex64) =
        if z.norm() > 1.0 { (c.iter().rev().cloned().collect(), 1.0 / z) } else { (c.to_vec(), z) };
    let val = horner_dd(&coeffs, w).norm();
    let r = w.norm();
    let mut scale = 0.0;
    for a in coeffs.iter().rev() {
        scale = scale * r + a.norm();
    }
    if scale == 0.0 {
        return 0.0;
    }
    val / scale
}

/// Newton correction `p(z) / p'(z)` in plain floating point, robust for
/// large `|z|`.
fn newton_ratio(c: &[Complex64], rev: &[Complex64], z: Complex64) -> Complex64 {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        p / dp
    } else {
        let w = 1.0 / z;
        let (mut q, mut dq) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for a in rev.iter().rev() {
            dq = dq * w + q;
            q = q * w + a;
        }
        z * q / (q * n as f64 - w * dq)
    }
}

fn describe(c: &[Complex64]) -> String {
    let parts: Vec<String> = c.iter().map(|z| format!("{}", z)).collect();
    format!("[{}] (lowest degree first)", parts.join(", "))
}

/// All complex roots of `sum c_i z^i` (lowest first) with multiplicity.
/// Every returned root passes the residual certificate.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().map_or(false, |z| z.norm() == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::Invalid("zero polynomial has no isolated roots".into()));
    }
    let mut zeros = 0;
    while c.len() > 1 && c[0].norm() == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    if n == 1 {
        roots.push(-c[0]);
        return Ok(roots);
    }
    let rev: Vec<Complex64> = c.iter().rev().cloned().collect();
    // initial guesses on a circle of the geometric-mean root radius
    let radius = c[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let step = |k: usize, z: &[Complex64]| -> Complex64 {
            let ratio = newton_ratio(&c, &rev, z[k]);
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    s += 1.0 / (z[k] - zj);
                }
            }
            ratio / (1.0 - ratio * s)
        };
        let updates: Vec<Complex64> = if n >= PAR_DEGREE {
            (0..n).into_par_iter().map(|k| if done[k] { Complex64::new(0.0, 0.0) } else { step(k, &z) }).collect()
        } else {
            (0..n).map(|k| if done[k] { Complex64::new(0.0, 0.0) } else { step(k, &z) }).collect()
        };
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let w = updates[k];
            if w.is_finite() {
                z[k] -= w;
            } else {
                z[k] *= Complex64::from_polar(1.01, 0.1);
            }
            if w.is_finite() && w.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(f64::MIN_POSITIVE) {
                done[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    for zk in &mut z {
        polish(&c, zk);
        if !(relative_residual(&c, *zk) <= RESIDUAL) {
            return Err(Error::RootFinder(describe(coeffs)));
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// A few Newton steps with the double-double residual, kept only when they
/// reduce it.
fn polish(c: &[Complex64], z: &mut Complex64) {
    for _ in 0..3 {
        let r0 = relative_residual(c, *z);
        if r0 <= RESIDUAL * 1e-3 {
            return;
        }
        let (p, dp) = horner_dd2(c, *z);
        if dp.norm() == 0.0 {
            return;
        }
        let cand = *z - p / dp;
        if cand.is_finite() && relative_residual(c, cand) < r0 {
            *z = cand;
        } else {
            return;
        }
    }
}

/// Roots of a real polynomial given as f64 coefficients, lowest first.
pub fn real_polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let c: Vec<Complex64> = coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    polynomial_roots(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_and_cubic() {
        let r = real_polynomial_roots(&[-2.0, 0.0, 1.0]).unwrap();
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 2f64.sqrt()).abs() < 1e-14 && (re[1] - 2f64.sqrt()).abs() < 1e-14);
        // x^3 + 1
        let r = real_polynomial_roots(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(r.iter().any(|z| (z + 1.0).norm() < 1e-14));
        assert!(r.iter().any(|z| (z - Complex64::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-14));
    }

    #[test]
    fn roots_of_unity_high_degree() {
        let n = 1023;
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[0] = Complex64::new(-1.0, 0.0);
        c[n] = Complex64::new(1.0, 0.0);
        let r = polynomial_roots(&c).unwrap();
        assert_eq!(r.len(), n);
        let mean: Complex64 = r.iter().sum::<Complex64>() / n as f64;
        assert!(mean.norm() < 1e-12);
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-13));
    }

    #[test]
    fn zero_roots_and_wide_range() {
        // x^2 (x - 1e6)(x - 1e-6)
        let r = real_polynomial_roots(&[0.0, 0.0, 1.0, -(1e6 + 1e-6), 1.0]).unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| (z.re - 1e6).abs() < 1e-6));
        assert!(r.iter().any(|z| (z.re - 1e-6).abs() < 1e-18));
    }
}
