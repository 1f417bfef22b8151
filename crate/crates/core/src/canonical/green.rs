//! Canonical Green functions for D = (infinity), evaluated through the
//! homogeneous escape rate
//! `G(z) = log ||z|| + sum_i d^-(i+1) lambda(Phi^i z)`,
//! with `g(x) = 2 (G(x, 1))` and in general `g(a:b) = 2 (G(a, b) - log |b|)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numberfield::padic::{LocalElem, LocalRing};
use crate::numberfield::{bigint_log, padic_ord, rational_log_abs, rational_to_f64, Field, Place, Q};
use crate::projline::{ComplexMap, DivisorP1, ProjPoint, RationalMap};

use super::bounds::{integral_lift, per_term_bound_arch, per_term_bound_padic};

/// Hard cap on the series depth.
pub const MAX_DEPTH: usize = 400;

/// Attempts at doubling the p-adic working precision.
const PRECISION_RETRIES: usize = 8;

/// A value with a certified absolute error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GreenValue {
    pub value: f64,
    pub error: f64,
}

/// Smallest `N >= 1` with `c d^-(N+1) / (1 - 1/d) <= tol`.
pub fn required_depth(c: f64, d: usize, tol: f64) -> usize {
    if c <= 0.0 {
        return 1;
    }
    let d = d as f64;
    let mut n = 1;
    while c * d.powi(-(n as i32 + 1)) / (1.0 - 1.0 / d) > tol && n < 10 * MAX_DEPTH {
        n += 1;
    }
    n
}

/// `c d^-(N+1) / (1 - 1/d)`.
pub fn truncation_bound(c: f64, d: usize, n: usize) -> f64 {
    let d = d as f64;
    c * d.powi(-(n as i32 + 1)) / (1.0 - 1.0 / d)
}

#[derive(Clone, Debug)]
enum Local {
    Arch { index: usize, cmap: ComplexMap },
    Padic { p: u64, fi: Vec<BigInt>, gi: Vec<BigInt>, shift: f64 },
}

/// Evaluator of the canonical Green function of `(infinity)` at one place,
/// truncated after `depth + 1` series terms.
#[derive(Clone, Debug)]
pub struct GreenEvaluator<K: Field> {
    map: RationalMap<K>,
    place: Place,
    depth: usize,
    per_term: f64,
    local: Local,
}

impl<K: Field> GreenEvaluator<K> {
    /// Evaluator at the complex embedding `index` of the coefficient field.
    pub fn archimedean(map: &RationalMap<K>, index: usize, depth: usize) -> Result<Self> {
        if depth == 0 || depth > MAX_DEPTH {
            return Err(Error::Invalid(format!("series depth must lie in 1..={MAX_DEPTH}")));
        }
        Ok(GreenEvaluator {
            map: map.clone(),
            place: Place::Infinite(index),
            depth,
            per_term: per_term_bound_arch(map, index),
            local: Local::Arch { index, cmap: map.embedded(index) },
        })
    }

    pub fn map(&self) -> &RationalMap<K> {
        &self.map
    }

    pub fn place(&self) -> Place {
        self.place
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn degree(&self) -> usize {
        self.map.degree()
    }

    /// The per-term constant `C_v`.
    pub fn per_term(&self) -> f64 {
        self.per_term
    }

    /// Certified error of `g` (twice that of `G`), including a rounding
    /// allowance at archimedean places.
    pub fn error_bound(&self) -> f64 {
        let trunc = truncation_bound(self.per_term, self.degree(), self.depth);
        match self.local {
            Local::Arch { .. } => trunc + self.rounding(),
            Local::Padic { .. } => trunc,
        }
    }

    fn rounding(&self) -> f64 {
        8.0 * f64::EPSILON * (self.depth as f64 + 2.0) * (1.0 + self.per_term)
    }

    /// Error of the escape rate `G` itself.
    pub fn escape_error(&self) -> f64 {
        self.error_bound() / 2.0
    }

    /// Fail with the required depth when the bound exceeds `tol`.
    pub fn check_tolerance(&self, tol: f64) -> Result<()> {
        let bound = self.error_bound();
        if bound > tol {
            return Err(Error::InsufficientDepth {
                required: required_depth(self.per_term, self.degree(), tol),
                bound,
                tol,
            });
        }
        Ok(())
    }

    fn cmap(&self) -> &ComplexMap {
        match &self.local {
            Local::Arch { cmap, .. } => cmap,
            Local::Padic { .. } => panic!("complex evaluation at a finite place"),
        }
    }

    pub fn embedding_index(&self) -> Option<usize> {
        match self.local {
            Local::Arch { index, .. } => Some(index),
            Local::Padic { .. } => None,
        }
    }

    /// The terms `d^-(i+1) lambda(z_i)`, i = 0..=depth, at a complex pair,
    /// plus `log ||z||`.
    pub fn escape_terms_complex(&self, z: [Complex64; 2]) -> (f64, Vec<f64>) {
        let cmap = self.cmap();
        let d = self.degree() as f64;
        let n0 = z[0].norm().max(z[1].norm());
        assert!(n0 > 0.0 && n0.is_finite(), "escape rate needs a nonzero finite pair");
        let mut cur = [z[0] / n0, z[1] / n0];
        let mut terms = Vec::with_capacity(self.depth + 1);
        let mut scale = 1.0 / d;
        for _ in 0..=self.depth {
            let w = cmap.apply(cur);
            let nrm = w[0].norm().max(w[1].norm());
            terms.push(scale * nrm.ln());
            cur = [w[0] / nrm, w[1] / nrm];
            scale /= d;
        }
        (n0.ln(), terms)
    }

    /// `G(z)` at a complex pair, given separately as `log ||z||` and the
    /// normalized pair (so huge coordinates never overflow).
    pub fn escape_normalized(&self, log_norm: f64, unit: [Complex64; 2]) -> f64 {
        let (l, terms) = self.escape_terms_complex(unit);
        log_norm + l + terms.iter().sum::<f64>()
    }

    pub fn escape_complex(&self, z: [Complex64; 2]) -> f64 {
        self.escape_normalized(0.0, z)
    }

    /// `G(w, 1)` for a finite complex point, or `G(1, 0)` for `None`.
    pub fn escape_affine_complex(&self, w: Option<Complex64>) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        match w {
            None => self.escape_complex([one, Complex64::new(0.0, 0.0)]),
            Some(w) if w.norm() > 1.0 => self.escape_normalized(w.norm().ln(), [w / w.norm(), one / w.norm()]),
            Some(w) => self.escape_complex([w, one]),
        }
    }

    /// `g(w) = 2 G(w, 1)` at a finite complex point.
    pub fn green_complex(&self, w: Complex64) -> GreenValue {
        GreenValue { value: 2.0 * self.escape_affine_complex(Some(w)), error: self.error_bound() }
    }

    /// Green function of a general divisor at a complex pair:
    /// `sum w (2 deg(l) G(z) - log |l(z)|^2)`.
    pub fn green_divisor_complex(&self, d: &DivisorP1<K>, z: [Complex64; 2]) -> GreenValue {
        let index = self.embedding_index().expect("archimedean evaluator");
        let g = self.escape_complex(z);
        let mut value = 0.0;
        let mut error = 0.0;
        for (l, w) in d.terms() {
            let deg = l.degree() as f64;
            value += w * (2.0 * deg * g - 2.0 * l.eval_complex(index, z[0], z[1]).norm().ln());
            error += w.abs() * deg * self.error_bound();
        }
        GreenValue { value, error }
    }

    /// `g` at a point over the coefficient field, through this evaluator's
    /// embedding; the pole at infinity is reported as an error.
    pub fn green_at(&self, x: &ProjPoint<K>) -> Result<GreenValue> {
        let index = self.embedding_index().ok_or_else(|| Error::Unsupported("finite place over this field".into()))?;
        match x.embed(index) {
            None => Err(Error::OnSupport),
            Some(w) => Ok(self.green_complex(w)),
        }
    }
}

impl GreenEvaluator<Q> {
    pub fn new(map: &RationalMap<Q>, place: Place, depth: usize) -> Result<Self> {
        match place {
            Place::Infinite(0) => Self::archimedean(map, 0, depth),
            Place::Infinite(k) => Err(Error::Invalid(format!("Q has one embedding, got index {k}"))),
            Place::Finite(p) => Self::padic(map, p, depth),
        }
    }

    /// Evaluator sized so the error of `g` is at most `tol`.
    pub fn with_tolerance(map: &RationalMap<Q>, place: Place, tol: f64) -> Result<Self> {
        let c = match place {
            Place::Infinite(_) => per_term_bound_arch(map, 0),
            Place::Finite(p) => per_term_bound_padic(map, p),
        };
        let depth = required_depth(c, map.degree(), tol * 0.5).min(MAX_DEPTH);
        let ev = Self::new(map, place, depth)?;
        ev.check_tolerance(tol)?;
        Ok(ev)
    }

    pub fn padic(map: &RationalMap<Q>, p: u64, depth: usize) -> Result<Self> {
        Place::finite(p)?;
        if depth == 0 || depth > MAX_DEPTH {
            return Err(Error::Invalid(format!("series depth must lie in 1..={MAX_DEPTH}")));
        }
        let (l, fi, gi) = integral_lift(map);
        let shift = padic_ord(&Q::from_integer(l), p)? as f64 * (p as f64).ln();
        Ok(GreenEvaluator {
            map: map.clone(),
            place: Place::Finite(p),
            depth,
            per_term: per_term_bound_padic(map, p),
            local: Local::Padic { p, fi, gi, shift },
        })
    }

    /// `G(a, b)` at an integer pair (not both zero).
    pub fn escape_integer_pair(&self, a: &BigInt, b: &BigInt) -> Result<f64> {
        match &self.local {
            Local::Arch { .. } => {
                let one = Complex64::new(1.0, 0.0);
                if a.is_zero() && b.is_zero() {
                    return Err(Error::Invalid("(0, 0)".into()));
                }
                if a.abs() >= b.abs() {
                    let r = rational_to_f64(&Q::new(b.clone(), a.clone()));
                    let s = if a.is_negative() { -1.0 } else { 1.0 };
                    Ok(self.escape_normalized(bigint_log(a), [Complex64::new(s, 0.0), Complex64::new(r * s, 0.0) * one]))
                } else {
                    let r = rational_to_f64(&Q::new(a.clone(), b.clone()));
                    let s = if b.is_negative() { -1.0 } else { 1.0 };
                    Ok(self.escape_normalized(bigint_log(b), [Complex64::new(r * s, 0.0), Complex64::new(s, 0.0)]))
                }
            }
            Local::Padic { p, .. } => {
                let ring = LocalRing::zp(*p);
                let (a, b) = (a.clone(), b.clone());
                self.escape_padic(&ring, &move |prec| {
                    (LocalElem::from_int(a.clone()), LocalElem::from_int(b.clone()), prec)
                })
            }
        }
    }

    /// `g(x)` at a rational point of P^1 (pole at infinity).
    pub fn green_rational(&self, x: &ProjPoint<Q>) -> Result<GreenValue> {
        let Some(xv) = x.affine_coord() else {
            return Err(Error::OnSupport);
        };
        Ok(GreenValue { value: 2.0 * self.local_affine(xv)?, error: self.error_bound() })
    }

    /// `G(x, 1)` for rational x, computed from the primitive lift.
    pub fn local_affine(&self, x: &Q) -> Result<f64> {
        let (a, b) = (x.numer(), x.denom());
        let g = self.escape_integer_pair(a, b)?;
        Ok(match self.place {
            Place::Infinite(_) => g - bigint_log(b),
            Place::Finite(p) => g + padic_ord(&Q::from_integer(b.clone()), p)? as f64 * (p as f64).ln(),
        })
    }

    /// p-adic escape rate at a lift supplied at a requested precision; the
    /// closure returns the pair and the precision it is known to. The
    /// precision is doubled until every valuation along the orbit is
    /// determined.
    pub fn escape_padic(
        &self,
        ring: &LocalRing,
        lift: &dyn Fn(u64) -> (LocalElem, LocalElem, u64),
    ) -> Result<f64> {
        let Local::Padic { p, .. } = &self.local else {
            return Err(Error::Invalid("p-adic escape at an archimedean place".into()));
        };
        let lp = (*p as f64).ln();
        let per_step = (self.per_term / lp).ceil() as u64 + 2;
        let mut k = 48 + (self.depth as u64 + 1) * per_step;
        for _ in 0..PRECISION_RETRIES {
            if let Some(v) = self.padic_run(ring, lift, k) {
                return Ok(v);
            }
            k *= 2;
        }
        Err(Error::PrecisionExhausted(*p))
    }

    fn padic_run(
        &self,
        ring: &LocalRing,
        lift: &dyn Fn(u64) -> (LocalElem, LocalElem, u64),
        k: u64,
    ) -> Option<f64> {
        let Local::Padic { p, fi, gi, shift } = &self.local else {
            return None;
        };
        let lp = (*p as f64).ln();
        let d = self.degree();
        let (x0, z0, mut prec) = lift(k);
        let mut m = ring.modulus(prec);
        let mut x = ring.reduce(&x0, &m);
        let mut z = ring.reduce(&z0, &m);
        let mut o_cur = min_ord(ring.ord2(&x, prec), ring.ord2(&z, prec))?;
        let mut g = -(o_cur as f64) / 2.0 * lp;
        let mut scale = 1.0 / d as f64;
        for i in 0..=self.depth {
            let fx = eval_local(ring, fi, &x, &z, &m);
            let gx = eval_local(ring, gi, &x, &z, &m);
            let o_phi = min_ord(ring.ord2(&fx, prec), ring.ord2(&gx, prec))?;
            let lambda = (d as f64 * o_cur as f64 - o_phi as f64) / 2.0 * lp + shift;
            g += scale * lambda;
            scale /= d as f64;
            if i == self.depth {
                break;
            }
            let mc = ring.component_ord(&fx, prec).min(ring.component_ord(&gx, prec));
            if mc >= prec {
                return None;
            }
            x = ring.div_p_pow(&fx, mc);
            z = ring.div_p_pow(&gx, mc);
            prec -= mc;
            m = ring.modulus(prec);
            x = ring.reduce(&x, &m);
            z = ring.reduce(&z, &m);
            o_cur = o_phi - 2 * mc;
        }
        Some(g)
    }
}

fn min_ord(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    }
}

fn eval_local(ring: &LocalRing, coeffs: &[BigInt], x: &LocalElem, z: &LocalElem, m: &BigInt) -> LocalElem {
    let n = coeffs.len() - 1;
    let mut xp = vec![LocalElem::from_int(1.into())];
    let mut zp = vec![LocalElem::from_int(1.into())];
    for i in 1..=n {
        xp.push(ring.reduce(&ring.mul(&xp[i - 1], x), m));
        zp.push(ring.reduce(&ring.mul(&zp[i - 1], z), m));
    }
    let mut acc = LocalElem::from_int(0.into());
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = ring.scale(c, &ring.mul(&xp[n - i], &zp[i]));
        acc = ring.add(&acc, &t);
    }
    ring.reduce(&acc, m)
}

/// `g_v(x)` truncated at depth `n` for a map over Q, optionally enforcing a
/// tolerance on the certified error.
pub fn escape_green(
    f: &RationalMap<Q>,
    x: &ProjPoint<Q>,
    v: Place,
    n: usize,
    tol: Option<f64>,
) -> Result<GreenValue> {
    let ev = GreenEvaluator::new(f, v, n)?;
    if let Some(t) = tol {
        ev.check_tolerance(t)?;
    }
    ev.green_rational(x)
}

/// `log |x|` helper for huge rationals.
pub fn log_abs(x: &Q) -> f64 {
    rational_log_abs(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn squaring_closed_forms() {
        let f = catalog::squaring();
        let v = escape_green(&f, &ProjPoint::affine(q(2, 1)), Place::INF, 10, None).unwrap();
        assert!((v.value - 2.0 * 2f64.ln()).abs() <= v.error + 1e-14);
        let ev = GreenEvaluator::archimedean(&f, 0, 10).unwrap();
        let w = Complex64::from_polar(1.0, 0.7);
        assert!(ev.green_complex(w).value.abs() < 1e-14);
        let v2 = escape_green(&f, &ProjPoint::affine(q(1, 2)), Place::Finite(2), 10, None).unwrap();
        assert!((v2.value - 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!(matches!(
            escape_green(&f, &ProjPoint::infinity(), Place::INF, 10, None),
            Err(Error::OnSupport)
        ));
    }

    #[test]
    fn insufficient_depth_reports_requirement() {
        let f = catalog::chebyshev();
        match escape_green(&f, &ProjPoint::affine(q(1, 3)), Place::INF, 2, Some(1e-12)) {
            Err(Error::InsufficientDepth { required, .. }) => assert!(required > 2),
            other => panic!("expected insufficient depth, got {other:?}"),
        }
    }

    #[test]
    fn padic_matches_exact_orbit() {
        // Lattès at p = 2 and 3: compare with the exact telescoped local term
        let (a, b) = catalog::lattes_forms(&q(0, 1), &q(1, 1));
        let f = RationalMap::new(a, b).unwrap();
        for p in [2u64, 3] {
            let ev = GreenEvaluator::padic(&f, p, 30).unwrap();
            for x in [q(1, 1), q(2, 3), q(5, 4), q(-3, 7)] {
                let g = ev.escape_integer_pair(x.numer(), x.denom()).unwrap();
                // exact: G(z) ~ d^-n log ||Phi^n(z)||_p for n = 6
                let (mut u, mut w) = (Q::from_integer(x.numer().clone()), Q::from_integer(x.denom().clone()));
                let n = 6;
                for _ in 0..n {
                    let (nu, nw) = f.apply_pair(&u, &w);
                    u = nu;
                    w = nw;
                }
                let ordmin = [&u, &w]
                    .iter()
                    .filter(|c| !c.is_zero())
                    .map(|c| padic_ord(c, p).unwrap())
                    .min()
                    .unwrap();
                let approx = -(ordmin as f64) * (p as f64).ln() / 4f64.powi(n);
                let bound = ev.per_term() * 4f64.powi(-n) / 0.75;
                assert!((g - approx).abs() <= bound + 1e-12, "p={p} x={x} g={g} approx={approx}");
            }
        }
    }
}
