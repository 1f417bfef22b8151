//! Global canonical heights as sums of local escape rates.
//!
//! For a point `x` of degree `n` over the base field,
//! `h(x) = (1/n) sum_v sum_{tau} G_v(tau x, 1)`, where `G_v = g_v / 2` and
//! `tau` runs over the embeddings of `K(x)` into the completions. At a
//! prime of good reduction `G_p(w, 1) = log max(1, |w|_p)`, so only the
//! archimedean places, the bad primes and the primes of the leading
//! coefficient of the minimal polynomial contribute.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numberfield::padic::{hensel_sqrt, is_padic_square_unit, ord_int, LocalElem, LocalRing};
use crate::numberfield::{bigint_log, Field, Place, QuadElem, Q};
use crate::projline::{AlgPoint, ProjPoint, QuadraticPoint, RationalMap};

use super::bounds::{good_reduction_everywhere_quad, good_reduction_places};
use super::green::{required_depth, GreenEvaluator, MAX_DEPTH};

/// Integers up to this many bits are factored to itemize good-prime locals.
const ITEMIZE_BITS: u64 = 128;

/// A global height with its certified error and the contribution of each
/// place (keyed by place name, plus `"good"` for an unitemized remainder).
#[derive(Clone, Debug, Serialize)]
pub struct HeightValue {
    pub value: f64,
    pub error: f64,
    pub locals: BTreeMap<String, f64>,
    pub local_errors: BTreeMap<String, f64>,
}

impl HeightValue {
    fn new() -> Self {
        HeightValue { value: 0.0, error: 0.0, locals: BTreeMap::new(), local_errors: BTreeMap::new() }
    }

    fn add(&mut self, key: String, value: f64, error: f64) {
        *self.locals.entry(key.clone()).or_insert(0.0) += value;
        *self.local_errors.entry(key).or_insert(0.0) += error;
        self.value += value;
        self.error += error;
    }
}

/// How deep to run each local series.
#[derive(Clone, Copy, Debug)]
pub enum Depth {
    /// Choose per place so the total error is at most the tolerance.
    Tolerance(f64),
    /// Fixed truncation at every place.
    Fixed(usize),
}

/// The evaluators needed for heights of points over Q: the archimedean one
/// and one per bad prime.
#[derive(Clone, Debug)]
pub struct HeightContext {
    map: RationalMap<Q>,
    arch: GreenEvaluator<Q>,
    bad: Vec<GreenEvaluator<Q>>,
    bad_primes: BTreeSet<u64>,
}

impl HeightContext {
    pub fn new(f: &RationalMap<Q>, depth: Depth) -> Result<Self> {
        let bad_primes = good_reduction_places(f)?;
        let places: Vec<Place> =
            std::iter::once(Place::INF).chain(bad_primes.iter().map(|&p| Place::Finite(p))).collect();
        let mut evs = Vec::with_capacity(places.len());
        for v in &places {
            let ev = match depth {
                Depth::Fixed(n) => GreenEvaluator::new(f, *v, n)?,
                Depth::Tolerance(tol) => {
                    if !(tol > 0.0) {
                        return Err(Error::Invalid("tolerance must be positive".into()));
                    }
                    // each of the (at most two) roots at each place gets an equal share
                    let share = tol / places.len() as f64;
                    let c = super::bounds::per_term_bound(f, *v);
                    let n = required_depth(c, f.degree(), share).min(MAX_DEPTH);
                    let ev = GreenEvaluator::new(f, *v, n)?;
                    if ev.escape_error() > share {
                        return Err(Error::InsufficientDepth { required: n + 1, bound: ev.escape_error(), tol: share });
                    }
                    ev
                }
            };
            evs.push(ev);
        }
        let arch = evs.remove(0);
        Ok(HeightContext { map: f.clone(), arch, bad: evs, bad_primes })
    }

    pub fn map(&self) -> &RationalMap<Q> {
        &self.map
    }

    pub fn bad_primes(&self) -> &BTreeSet<u64> {
        &self.bad_primes
    }

    pub fn archimedean(&self) -> &GreenEvaluator<Q> {
        &self.arch
    }

    pub fn evaluator(&self, v: Place) -> Option<&GreenEvaluator<Q>> {
        match v {
            Place::Infinite(0) => Some(&self.arch),
            Place::Finite(p) => self.bad.iter().find(|e| e.place() == Place::Finite(p)),
            _ => None,
        }
    }

    /// Canonical height of a rational point.
    pub fn height_rational(&self, x: &ProjPoint<Q>) -> Result<HeightValue> {
        let mut out = HeightValue::new();
        let (a, b) = x.integer_pair();
        if x.is_infinity() {
            // primitive lift (1, 0); good primes contribute nothing
            out.add("inf".into(), self.arch.escape_integer_pair(&a, &b)?, self.arch.escape_error());
            for ev in &self.bad {
                out.add(ev.place().to_string(), ev.escape_integer_pair(&a, &b)?, ev.escape_error());
            }
            return Ok(out);
        }
        let xv = x.affine_coord().unwrap();
        out.add("inf".into(), self.arch.local_affine(xv)?, self.arch.escape_error());
        for ev in &self.bad {
            out.add(ev.place().to_string(), ev.local_affine(xv)?, ev.escape_error());
        }
        self.add_good_part(&mut out, &b.abs(), 1.0);
        Ok(out)
    }

    /// Good-prime part `sum_{p good} ord_p(n) log p * weight`, itemized when
    /// `n` is small enough to factor.
    fn add_good_part(&self, out: &mut HeightValue, n: &BigInt, weight: f64) {
        if n.is_one() || n.is_zero() {
            return;
        }
        if n.bits() <= ITEMIZE_BITS {
            let mag = n.to_biguint().unwrap();
            for (p, e) in num_prime::nt_funcs::factorize(mag) {
                let p = p.to_u64().unwrap();
                if self.bad_primes.contains(&p) {
                    continue;
                }
                out.add(p.to_string(), weight * e as f64 * (p as f64).ln(), 0.0);
            }
        } else {
            let mut rest = bigint_log(n);
            for &p in &self.bad_primes {
                rest -= ord_int(n, p) as f64 * (p as f64).ln();
            }
            out.add("good".into(), weight * rest, 0.0);
        }
    }

    /// Canonical height of a quadratic point, averaging over its two
    /// conjugates at every place.
    pub fn height_quadratic(&self, x: &QuadraticPoint) -> Result<HeightValue> {
        let mut out = HeightValue::new();
        let roots = x.complex_roots()?;
        let mut arch = 0.0;
        for w in roots {
            arch += self.arch.escape_affine_complex(Some(w));
        }
        out.add("inf".into(), arch / 2.0, self.arch.escape_error());
        for ev in &self.bad {
            let p = ev.place().prime().unwrap();
            let s = quadratic_local_sum(ev, x, p)?;
            out.add(p.to_string(), s / 2.0, ev.escape_error());
        }
        // Gauss: sum_tau log max(1, |tau x|_p) = ord_p(c2) log p at good p
        self.add_good_part(&mut out, &x.minpoly_coeffs()[0].abs(), 0.5);
        Ok(out)
    }

    pub fn height(&self, x: &AlgPoint) -> Result<HeightValue> {
        match x {
            AlgPoint::Rational(p) => self.height_rational(p),
            AlgPoint::Quadratic(q) => self.height_quadratic(q),
        }
    }
}

/// `sum_tau G_p(tau x, 1)` over both embeddings of a quadratic point.
fn quadratic_local_sum(ev: &GreenEvaluator<Q>, x: &QuadraticPoint, p: u64) -> Result<f64> {
    let [c2, c1, _] = x.minpoly_coeffs();
    let (s, core) = x.radical();
    let lp = (p as f64).ln();
    let z = BigInt::from(2) * &c2;
    let z_shift = ord_int(&z, p) as f64 * lp;
    let minus_c1 = -c1.clone();
    if is_padic_square_unit(&core, p) {
        let ring = LocalRing::zp(p);
        let mut total = 0.0;
        for sigma in [1i64, -1] {
            let (s, core, minus_c1, z) = (s.clone(), core.clone(), minus_c1.clone(), z.clone());
            let lift = move |k: u64| {
                let r = hensel_sqrt(&core, p, k as u32 + 1).expect("split prime");
                let known = if p == 2 { k } else { k + 1 };
                let x = &minus_c1 + BigInt::from(sigma) * &s * r;
                (LocalElem::from_int(x), LocalElem::from_int(z.clone()), known)
            };
            total += ev.escape_padic(&ring, &lift)? + z_shift;
        }
        Ok(total)
    } else {
        let ring = LocalRing::extension(p, core);
        let lift = move |k: u64| (LocalElem { u: minus_c1.clone(), v: s.clone() }, LocalElem::from_int(z.clone()), k);
        Ok(2.0 * (ev.escape_padic(&ring, &lift)? + z_shift))
    }
}

/// Canonical height for (infinity) of an algebraic point of degree at most 2
/// under a map over Q, with total error at most `tol`.
pub fn canonical_height(f: &RationalMap<Q>, x: &AlgPoint, tol: f64) -> Result<HeightValue> {
    HeightContext::new(f, Depth::Tolerance(tol))?.height(x)
}

/// Same, with a fixed series depth at every place.
pub fn canonical_height_at_depth(f: &RationalMap<Q>, x: &AlgPoint, depth: usize) -> Result<HeightValue> {
    HeightContext::new(f, Depth::Fixed(depth))?.height(x)
}

/// Canonical height of a K-rational point for a map over Q(sqrt D) with good
/// reduction at every prime. Heights are relative to K: both archimedean
/// embeddings are summed and the finite part is `sum_p sum_tau log max(1,
/// |tau x|_p)`, which by Gauss's lemma equals `(2 / deg m) log |lead m|` for
/// the primitive minimal polynomial `m` of `x` over Z.
pub fn canonical_height_k(f: &RationalMap<QuadElem>, x: &ProjPoint<QuadElem>, tol: f64) -> Result<HeightValue> {
    if !good_reduction_everywhere_quad(f) {
        return Err(Error::Unsupported("maps over a quadratic field need good reduction everywhere".into()));
    }
    let share = tol / 2.0;
    let mut evs = Vec::new();
    for index in 0..2 {
        let c = super::bounds::per_term_bound_arch(f, index);
        let n = required_depth(c, f.degree(), share).min(MAX_DEPTH);
        let ev = GreenEvaluator::archimedean(f, index, n)?;
        if ev.escape_error() > share {
            return Err(Error::InsufficientDepth { required: n + 1, bound: ev.escape_error(), tol: share });
        }
        evs.push(ev);
    }
    let mut out = HeightValue::new();
    for ev in &evs {
        let key = format!("inf{}", ev.embedding_index().unwrap());
        let v = if x.is_infinity() {
            ev.escape_affine_complex(None)
        } else {
            affine_escape_quad(ev, x.affine_coord().unwrap())
        };
        out.add(key, v, ev.escape_error());
    }
    if let Some(w) = x.affine_coord() {
        let lead_log = minpoly_leading_log(w);
        if lead_log != 0.0 {
            out.add("finite".into(), lead_log, 0.0);
        }
    }
    Ok(out)
}

/// `G(tau w, 1)` through the embedding of `ev`, using the exact sign data of
/// the field element for large values.
fn affine_escape_quad(ev: &GreenEvaluator<QuadElem>, w: &QuadElem) -> f64 {
    let idx = ev.embedding_index().unwrap();
    ev.escape_affine_complex(Some(w.embed(idx)))
}

/// `(2 / deg m) log |lead m|` for the primitive integer minimal polynomial.
fn minpoly_leading_log(w: &QuadElem) -> f64 {
    let m = w.minpoly();
    let ints = crate::numberfield::primitive_integer_coeffs(&m);
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
    let deg = ints.len() - 1;
    2.0 / deg as f64 * bigint_log(&lead)
}

/// `log max(|a|, |b|)` for the primitive integer pair of a rational point.
pub fn naive_weil_height(x: &ProjPoint<Q>) -> f64 {
    let (a, b) = x.integer_pair();
    let m = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    bigint_log(&m)
}

/// `d^-n h(f^n x)`, computed exactly; fails once the orbit outgrows
/// `bit_cap` bits.
pub fn naive_height_telescope(f: &RationalMap<Q>, x: &ProjPoint<Q>, n: usize, bit_cap: u64) -> Result<f64> {
    let mut y = x.clone();
    for _ in 0..n {
        y = f.evaluate(&y);
        if y.size_bits() > bit_cap {
            return Err(Error::DepthTooLarge(bit_cap));
        }
    }
    Ok(naive_weil_height(&y) / (f.degree() as f64).powi(n as i32))
}

/// Complex images of a point, for callers that need them next to heights.
pub fn complex_images(x: &AlgPoint) -> Result<Vec<Option<Complex64>>> {
    x.complex_images()
}
