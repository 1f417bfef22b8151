//! p-adic valuations, Newton polygons of quadratics, and truncated local
//! arithmetic in Z_p and Z_p[sqrt D].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn check_prime(p: u64) -> Result<()> {
    if num_prime::nt_funcs::is_prime64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// ord_p of a nonzero integer.
pub fn ord_int(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// ord_p(q), so that |q|_p = p^(-ord).
pub fn padic_ord(q: &BigRational, p: u64) -> Result<i64> {
    check_prime(p)?;
    if q.is_zero() {
        return Err(Error::OrdOfZero);
    }
    Ok(ord_int(q.numer(), p) as i64 - ord_int(q.denom(), p) as i64)
}

fn ord_or_inf(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        None
    } else {
        Some(ord_int(n, p) as i64)
    }
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Valuations of the two roots of `c2 x^2 + c1 x + c0` (integer coefficients,
/// irreducible over Q), read off the Newton polygon, smallest first.
pub fn quadratic_root_valuations(
    c2: &BigInt,
    c1: &BigInt,
    c0: &BigInt,
    p: u64,
) -> Result<(BigRational, BigRational)> {
    check_prime(p)?;
    if c2.is_zero() {
        return Err(Error::Invalid("leading coefficient is zero".into()));
    }
    let disc = c1 * c1 - BigInt::from(4) * c2 * c0;
    if c0.is_zero() || is_square(&disc) {
        return Err(Error::NotIrreducible(format!("{c2}x^2 + {c1}x + {c0}")));
    }
    let oa = ord_int(c2, p) as i64;
    let oc = ord_int(c0, p) as i64;
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    match ord_or_inf(c1, p) {
        // vertex (1, ob) strictly below the chord from (0, oc) to (2, oa)
        Some(ob) if 2 * ob < oc + oa => {
            let (s1, s2) = (oc - ob, ob - oa);
            Ok((r(s1.min(s2), 1), r(s1.max(s2), 1)))
        }
        _ => Ok((r(oc - oa, 2), r(oc - oa, 2))),
    }
}

fn legendre(a: u128, p: u128) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // operands are below 2^64
    (a * b) % m
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Tonelli-Shanks square root of a nonzero quadratic residue modulo an odd prime.
fn sqrt_mod_p(a: u128, p: u128) -> Option<u128> {
    let a = a % p;
    if legendre(a, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1u128 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Whether a squarefree `d` (with p not dividing it) is a square in Q_p.
pub fn is_padic_square_unit(d: &BigInt, p: u64) -> bool {
    let pb = BigInt::from(p);
    if (d % &pb).is_zero() {
        return false;
    }
    if p == 2 {
        return d.mod_floor(&BigInt::from(8)) == BigInt::one();
    }
    let r = d.mod_floor(&pb).to_u64().unwrap() as u128;
    legendre(r, p as u128) == 1
}

/// A square root of `d` in Z_p modulo p^k, for d a p-adic unit square.
/// For p = 2 the result is only determined modulo 2^(k-1).
pub fn hensel_sqrt(d: &BigInt, p: u64, k: u32) -> Option<BigInt> {
    if !is_padic_square_unit(d, p) {
        return None;
    }
    let pb = BigInt::from(p);
    let modulus = num_traits::pow(pb.clone(), k as usize);
    if p == 2 {
        let mut r = BigInt::one();
        for j in 3..k {
            // r^2 = d mod 2^j; fix bit j
            let mj1 = BigInt::one() << (j + 1);
            if !((&r * &r - d).mod_floor(&mj1)).is_zero() {
                r += BigInt::one() << (j - 1);
            }
        }
        return Some(r.mod_floor(&modulus));
    }
    let r0 = sqrt_mod_p(d.mod_floor(&pb).to_u64().unwrap() as u128, p as u128)?;
    let mut r = BigInt::from(r0 as u64);
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = num_traits::pow(pb.clone(), prec as usize);
        let two_r = (BigInt::from(2) * &r).mod_floor(&m);
        let inv = mod_inverse(&two_r, &m)?;
        r = (&r - (&r * &r - d) * inv).mod_floor(&m);
    }
    Some(r.mod_floor(&modulus))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Truncated arithmetic in Z_p or in Z_p[sqrt D] (D a non-square in Q_p).
///
/// Elements are pairs (u, v) meaning u + v sqrt D; in the Z_p case v = 0.
/// Valuations are reported doubled so that ramified half-integers stay
/// integral.
#[derive(Clone, Debug)]
pub struct LocalRing {
    pub p: u64,
    pub radicand: Option<BigInt>,
    pb: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalElem {
    pub u: BigInt,
    pub v: BigInt,
}

impl LocalElem {
    pub fn from_int(u: BigInt) -> Self {
        LocalElem { u, v: BigInt::zero() }
    }
}

impl LocalRing {
    pub fn zp(p: u64) -> Self {
        LocalRing { p, radicand: None, pb: BigInt::from(p) }
    }

    pub fn extension(p: u64, d: BigInt) -> Self {
        LocalRing { p, radicand: Some(d), pb: BigInt::from(p) }
    }

    pub fn modulus(&self, prec: u64) -> BigInt {
        num_traits::pow(self.pb.clone(), prec as usize)
    }

    pub fn reduce(&self, x: &LocalElem, m: &BigInt) -> LocalElem {
        LocalElem { u: x.u.mod_floor(m), v: x.v.mod_floor(m) }
    }

    pub fn add(&self, x: &LocalElem, y: &LocalElem) -> LocalElem {
        LocalElem { u: &x.u + &y.u, v: &x.v + &y.v }
    }

    pub fn mul(&self, x: &LocalElem, y: &LocalElem) -> LocalElem {
        match &self.radicand {
            None => LocalElem::from_int(&x.u * &y.u),
            Some(d) => LocalElem {
                u: &x.u * &y.u + d * &x.v * &y.v,
                v: &x.u * &y.v + &x.v * &y.u,
            },
        }
    }

    pub fn scale(&self, c: &BigInt, x: &LocalElem) -> LocalElem {
        LocalElem { u: c * &x.u, v: c * &x.v }
    }

    fn ord_capped(&self, n: &BigInt, cap: u64) -> u64 {
        if n.is_zero() {
            return cap;
        }
        ord_int(n, self.p).min(cap)
    }

    /// Twice the valuation of `x` known modulo p^prec, or `None` when the
    /// truncation cannot distinguish it from zero.
    pub fn ord2(&self, x: &LocalElem, prec: u64) -> Option<u64> {
        let m = self.modulus(prec);
        match &self.radicand {
            None => {
                let r = x.u.mod_floor(&m);
                if r.is_zero() {
                    None
                } else {
                    Some(2 * ord_int(&r, self.p))
                }
            }
            Some(d) => {
                let n = (&x.u * &x.u - d * &x.v * &x.v).mod_floor(&m);
                if n.is_zero() {
                    None
                } else {
                    Some(ord_int(&n, self.p))
                }
            }
        }
    }

    /// Smallest valuation among the integer components, capped at `prec`.
    pub fn component_ord(&self, x: &LocalElem, prec: u64) -> u64 {
        let m = self.modulus(prec);
        let a = self.ord_capped(&x.u.mod_floor(&m), prec);
        let b = self.ord_capped(&x.v.mod_floor(&m), prec);
        a.min(b)
    }

    pub fn div_p_pow(&self, x: &LocalElem, k: u64) -> LocalElem {
        if k == 0 {
            return x.clone();
        }
        let m = self.modulus(k);
        LocalElem { u: x.u.div_floor(&m), v: x.v.div_floor(&m) }
    }
}
