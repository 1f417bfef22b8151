//! Short Weierstrass curves `y^2 = x^3 + a x + b`, their division
//! polynomials and the x-coordinate duplication (Lattès) map.

use num_complex::Complex64;
use num_traits::Zero;

use crate::catalog::lattes_forms;
use crate::error::{Error, Result};
use crate::numberfield::{format_rational, rational_to_f64, Poly, Q};
use crate::projline::RationalMap;

use super::cloud::{CloudPoint, PointCloud, Provenance};
use super::roots::polynomial_roots;

/// Largest supported torsion order.
pub const MAX_TORSION: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCurveAB {
    a: Q,
    b: Q,
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn p(c: &[Q]) -> Poly<Q> {
    Poly::new(c.to_vec())
}

impl EllipticCurveAB {
    pub fn new(a: Q, b: Q) -> Result<Self> {
        let disc = -qi(16) * (qi(4) * &a * &a * &a + qi(27) * &b * &b);
        if disc.is_zero() {
            return Err(Error::Invalid(format!(
                "singular curve y^2 = x^3 + {}x + {}",
                format_rational(&a),
                format_rational(&b)
            )));
        }
        Ok(EllipticCurveAB { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(qi(a), qi(b))
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    /// `x^3 + a x + b`.
    pub fn rhs(&self) -> Poly<Q> {
        p(&[self.b.clone(), self.a.clone(), qi(0), qi(1)])
    }

    /// The map `x(P) -> x(2P)`.
    pub fn lattes_map(&self) -> RationalMap<Q> {
        let (f, g) = lattes_forms(&self.a, &self.b);
        RationalMap::new(f, g).expect("nonsingular curve gives a nondegenerate map")
    }

    /// `f_0 .. f_n` with `psi_n = f_n` for odd n and `psi_n = y f_n` for even n.
    fn f_table(&self, n: usize) -> Vec<Poly<Q>> {
        let (a, b) = (&self.a, &self.b);
        let r2 = self.rhs().pow(2);
        let mut f = vec![
            Poly::zero(),
            Poly::one(),
            Poly::constant(qi(2)),
            p(&[-(a * a), qi(12) * b, qi(6) * a, qi(0), qi(3)]),
            p(&[
                qi(-32) * b * b - qi(4) * a * a * a,
                qi(-16) * a * b,
                qi(-20) * a * a,
                qi(80) * b,
                qi(20) * a,
                qi(0),
                qi(4),
            ]),
        ];
        for k in 5..=n {
            let m = k / 2;
            let next = if k % 2 == 1 {
                let t1 = f[m + 2].mul(&f[m].pow(3));
                let t2 = f[m - 1].mul(&f[m + 1].pow(3));
                if m % 2 == 0 {
                    r2.mul(&t1).sub(&t2)
                } else {
                    t1.sub(&r2.mul(&t2))
                }
            } else {
                let inner = f[m + 2].mul(&f[m - 1].pow(2)).sub(&f[m - 2].mul(&f[m + 1].pow(2)));
                f[m].mul(&inner).scale(&Q::new(1.into(), 2.into()))
            };
            f.push(next);
        }
        f.truncate(n + 1);
        f
    }

    /// The odd part of `psi_n`: `psi_n` for odd n, `psi_n / (2y)` for even n.
    pub fn division_odd_part(&self, n: usize) -> Result<Poly<Q>> {
        check_order(n)?;
        let f = self.f_table(n.max(4)).swap_remove(n);
        Ok(if n % 2 == 0 { f.scale(&Q::new(1.into(), 2.into())) } else { f })
    }

    /// Division polynomial in x: the odd part for `n != 2`, and the
    /// 2-torsion locus `psi_2^2 = 4 x^3 + 4 a x + 4 b` for `n = 2`.
    pub fn division_polynomial(&self, n: usize) -> Result<Poly<Q>> {
        check_order(n)?;
        if n == 2 {
            return Ok(self.rhs().scale(&qi(4)));
        }
        self.division_odd_part(n)
    }

    /// Polynomial whose roots are the x-coordinates of the nonzero points
    /// killed by n (each with multiplicity one).
    pub fn torsion_locus(&self, n: usize) -> Result<Poly<Q>> {
        check_order(n)?;
        if n == 1 {
            return Ok(Poly::one());
        }
        let odd = self.division_odd_part(n)?;
        Ok(if n % 2 == 0 { odd.mul(&self.rhs().scale(&qi(4))) } else { odd })
    }

    /// Monic polynomials `P_n` (n = 2..=n_max) whose roots are the
    /// x-coordinates of points of exact order n, computed by dividing out
    /// lower orders exactly.
    pub fn exact_order_loci(&self, n_max: usize) -> Result<Vec<(usize, Poly<Q>)>> {
        check_order(n_max)?;
        let mut seen = Poly::one();
        let mut out = Vec::new();
        for n in 2..=n_max {
            let t = self.torsion_locus(n)?.monic();
            let g = t.gcd(&seen);
            let new = t.div_rem(&g).0.monic();
            if new.degree().unwrap_or(0) > 0 {
                seen = seen.mul(&new);
                out.push((n, new));
            }
        }
        Ok(out)
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_TORSION {
        return Err(Error::Invalid(format!("torsion order must lie in 1..={MAX_TORSION}, got {n}")));
    }
    Ok(())
}

/// x-coordinates of the nonzero torsion points of order at most `n_max`, as
/// complex numbers tagged `torsion`, grouped by exact order.
pub fn torsion_x_points(e: &EllipticCurveAB, n_max: usize) -> Result<PointCloud> {
    let mut cloud = PointCloud::new("inf");
    if n_max <= 1 {
        check_order(n_max.max(1))?;
        return Ok(cloud);
    }
    for (n, poly) in e.exact_order_loci(n_max)? {
        let c: Vec<Complex64> = poly.coeffs().iter().map(|q| Complex64::new(rational_to_f64(q), 0.0)).collect();
        for z in polynomial_roots(&c)? {
            cloud.push(CloudPoint { value: Some(z), provenance: Provenance::Torsion { order: n as u32 }, depth: None });
        }
    }
    Ok(cloud)
}
