//! Certified bounds on the one-step escape term
//! `lambda(z) = log ||Phi(z)|| - d log ||z||` and the bad primes of a lift.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numberfield::{padic_ord, Field, Place, QuadElem, QuadInt, Q};
use crate::projline::{bezout_identities, BinaryForm, RationalMap};

/// Relative slack added to floating bounds to absorb rounding.
const SLACK: f64 = 1e-12;

fn l1(c: &[num_complex::Complex64]) -> f64 {
    c.iter().map(|z| z.norm()).sum()
}

/// Archimedean bound for `sup |lambda|` under the embedding `index`.
///
/// The upper side is the triangle inequality; the lower side uses the two
/// Bezout identities `A F + B G = x^(2d-1)` and `= z^(2d-1)`, which give
/// `1 <= (||A||_1 + ||B||_1) ||Phi(z)||` on the max-norm unit sphere.
pub fn per_term_bound_arch<K: Field>(f: &RationalMap<K>, index: usize) -> f64 {
    let upper = l1(&f.f().embedded(index)).max(l1(&f.g().embedded(index)));
    let (px, pz) = bezout_identities(f.f(), f.g()).expect("nonzero resultant");
    let m = [px, pz]
        .iter()
        .map(|p| l1(&p.a.embedded(index)) + l1(&p.b.embedded(index)))
        .fold(0.0, f64::max);
    let c = upper.ln().abs().max(m.ln().abs());
    c * (1.0 + SLACK) + SLACK
}

fn log_sup_p(coeffs: &[Q], p: u64) -> f64 {
    let lp = (p as f64).ln();
    coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| -(padic_ord(c, p).unwrap() as f64) * lp)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// p-adic bound for `sup |lambda|`, by the ultrametric version of the
/// archimedean argument. Zero at primes of good reduction.
pub fn per_term_bound_padic(f: &RationalMap<Q>, p: u64) -> f64 {
    let mut all: Vec<Q> = f.f().coeffs().to_vec();
    all.extend_from_slice(f.g().coeffs());
    let upper = log_sup_p(&all, p);
    let (px, pz) = bezout_identities(f.f(), f.g()).expect("nonzero resultant");
    let mut bez: Vec<Q> = Vec::new();
    for pair in [px, pz] {
        bez.extend_from_slice(pair.a.coeffs());
        bez.extend_from_slice(pair.b.coeffs());
    }
    let lower = log_sup_p(&bez, p);
    upper.abs().max(lower.abs()) * (1.0 + SLACK)
}

pub fn per_term_bound(f: &RationalMap<Q>, v: Place) -> f64 {
    match v {
        Place::Infinite(i) => per_term_bound_arch(f, i),
        Place::Finite(p) => per_term_bound_padic(f, p),
    }
}

/// Integer scaling of the lift: `(L, F*L, G*L)` with `L` the lcm of the
/// coefficient denominators.
pub fn integral_lift(f: &RationalMap<Q>) -> (BigInt, Vec<BigInt>, Vec<BigInt>) {
    let mut l = BigInt::one();
    for c in f.f().coeffs().iter().chain(f.g().coeffs()) {
        l = l.lcm(c.denom());
    }
    let conv = |form: &BinaryForm<Q>| -> Vec<BigInt> {
        form.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect()
    };
    let fi = conv(f.f());
    let gi = conv(f.g());
    (l, fi, gi)
}

fn prime_factors(n: &BigInt) -> Result<Vec<u64>> {
    let mag: BigUint = n.abs().to_biguint().unwrap();
    if mag <= BigUint::one() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (p, _) in num_prime::nt_funcs::factorize(mag) {
        out.push(p.to_u64().ok_or_else(|| Error::Unsupported(format!("prime {p} exceeds 64 bits")))?);
    }
    Ok(out)
}

/// Primes where the given lift fails to have good reduction: those dividing
/// a coefficient denominator or the resultant of the integral scaling.
pub fn good_reduction_places(f: &RationalMap<Q>) -> Result<BTreeSet<u64>> {
    let (l, fi, gi) = integral_lift(f);
    let to_q = |v: &[BigInt]| BinaryForm::new(v.iter().map(|c| Q::from_integer(c.clone())).collect());
    let res = crate::projline::sylvester_resultant(&to_q(&fi), &to_q(&gi))?;
    let mut out: BTreeSet<u64> = prime_factors(&l)?.into_iter().collect();
    out.extend(prime_factors(res.numer())?);
    Ok(out)
}

/// For a map over Q(sqrt 29): `Ok(true)` when every coefficient lies in Z[e]
/// and the resultant is a unit, i.e. the lift has good reduction at every
/// prime of the field.
pub fn good_reduction_everywhere_quad(f: &RationalMap<QuadElem>) -> bool {
    let integral = f
        .f()
        .coeffs()
        .iter()
        .chain(f.g().coeffs())
        .all(|c| QuadInt::from_quad_elem(c).is_some());
    integral && QuadInt::from_quad_elem(f.resultant()).map_or(false, |r| r.is_unit())
}

/// Rational primes below the bad primes of a map over Q(sqrt 29), as a
/// superset: primes dividing denominators or the norm of the resultant.
pub fn bad_rational_primes_quad(f: &RationalMap<QuadElem>) -> Result<BTreeSet<u64>> {
    if good_reduction_everywhere_quad(f) {
        return Ok(BTreeSet::new());
    }
    let mut out = BTreeSet::new();
    for c in f.f().coeffs().iter().chain(f.g().coeffs()) {
        out.extend(prime_factors(c.a().denom())?);
        out.extend(prime_factors(c.b().denom())?);
    }
    let n = f.resultant().norm();
    if !n.is_zero() {
        out.extend(prime_factors(n.numer())?);
        out.extend(prime_factors(n.denom())?);
    }
    Ok(out)
}

/// `C_f = sum_v C_v` over the archimedean place and the bad primes; bounds
/// `|h(f(y)) - d h(y)|` for the naive height.
pub fn height_comparison_constant(f: &RationalMap<Q>) -> Result<f64> {
    let mut c = per_term_bound_arch(f, 0);
    for p in good_reduction_places(f)? {
        c += per_term_bound_padic(f, p);
    }
    Ok(c)
}
