//! The order Z[e] with e^2 = 5e + 1, the ring of integers of Q(sqrt 29).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::quadfield::QuadElem;

/// Discriminant of the order: e = (5 + sqrt 29) / 2.
pub const EPS_DISC: i64 = 29;

/// `a + b*e` with `e^2 = 5e + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        QuadInt::new(0, 0)
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    pub fn eps() -> Self {
        QuadInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// N(a + b e) = a^2 + 5ab - b^2.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + BigInt::from(5) * &self.a * &self.b - &self.b * &self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Galois conjugate: e maps to 5 - e.
    pub fn conj(&self) -> Self {
        QuadInt { a: &self.a + BigInt::from(5) * &self.b, b: -&self.b }
    }

    pub fn to_quad_elem(&self) -> QuadElem {
        let two = BigInt::from(2);
        QuadElem::new(
            BigRational::new(&self.a * &two + BigInt::from(5) * &self.b, two.clone()),
            BigRational::new(self.b.clone(), two),
            EPS_DISC,
        )
    }

    /// Inverse of [`to_quad_elem`](Self::to_quad_elem); `None` when the
    /// element is not integral.
    pub fn from_quad_elem(x: &QuadElem) -> Option<Self> {
        if !x.b().is_zero() && x.disc() != EPS_DISC {
            return None;
        }
        // u + v sqrt29 = (u - 5v) + 2v e
        let two_v = x.b() * BigRational::from_integer(2.into());
        let a = x.a() - x.b() * BigRational::from_integer(5.into());
        if !two_v.is_integer() || !a.is_integer() {
            return None;
        }
        Some(QuadInt { a: a.to_integer(), b: two_v.to_integer() })
    }

    /// Exact sign under the embedding `index` (0: e > 0, 1: e < 0).
    pub fn sign_at(&self, index: usize) -> i32 {
        // 2(a + b e) = (2a + 5b) + s b sqrt29
        let u = BigInt::from(2) * &self.a + BigInt::from(5) * &self.b;
        let v = if index == 0 { self.b.clone() } else { -&self.b };
        let su = u.sign();
        let sv = v.sign();
        use num_bigint::Sign::*;
        match (su, sv) {
            (NoSign, NoSign) => 0,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => 1,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => -1,
            _ => {
                // compare u^2 with 29 v^2
                let lhs = &u * &u;
                let rhs = BigInt::from(EPS_DISC) * &v * &v;
                let mag_u_wins = lhs > rhs;
                match (su, mag_u_wins) {
                    (Plus, true) | (Minus, false) => 1,
                    _ => -1,
                }
            }
        }
    }

    /// Value under the real embedding `index`, accurate to a few ulps even
    /// under cancellation (the small conjugate is recovered from the exact
    /// norm).
    pub fn embed(&self, index: usize) -> f64 {
        let s29 = (EPS_DISC as f64).sqrt();
        let u = (BigInt::from(2) * &self.a + BigInt::from(5) * &self.b).to_f64().unwrap_or(f64::NAN);
        let v = self.b.to_f64().unwrap_or(f64::NAN);
        let sgn = if index == 0 { 1.0 } else { -1.0 };
        let direct = (u + sgn * v * s29) / 2.0;
        let other = (u - sgn * v * s29) / 2.0;
        if direct.abs() >= other.abs() || other == 0.0 {
            direct
        } else {
            self.norm().to_f64().unwrap_or(f64::NAN) / other
        }
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    // (a+be)(c+de) = (ac + bd) + (ad + bc + 5bd)e
    fn mul(self, o: &QuadInt) -> QuadInt {
        let bd = &self.b * &o.b;
        QuadInt {
            a: &self.a * &o.a + &bd,
            b: &self.a * &o.b + &self.b * &o.a + BigInt::from(5) * bd,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*e", self.a, self.b)
    }
}

fn int_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(n.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for QuadInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        vec![int_to_json(&self.a), int_to_json(&self.b)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<serde_json::Value> = Vec::deserialize(d)?;
        if v.len() != 2 {
            return Err(D::Error::custom("QuadInt must be an [a, b] pair"));
        }
        let a = int_from_json(&v[0]).ok_or_else(|| D::Error::custom("bad integer"))?;
        let b = int_from_json(&v[1]).ok_or_else(|| D::Error::custom("bad integer"))?;
        Ok(QuadInt { a, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_and_units() {
        assert_eq!(QuadInt::eps().norm(), BigInt::from(-1));
        assert_eq!(QuadInt::one().norm(), BigInt::from(1));
        let e2 = QuadInt::eps().pow(2);
        assert_eq!(e2, QuadInt::new(1, 5));
        assert_eq!(e2.norm(), BigInt::from(1));
        assert!(QuadInt::eps().is_unit());
        assert!(!QuadInt::new(2, 0).is_unit());
        assert!(!QuadInt::zero().is_unit());
        assert_eq!(QuadInt::eps().pow(4), QuadInt::new(26, 135));
    }

    #[test]
    fn embeddings_and_conversion() {
        let e = QuadInt::eps();
        assert!((e.embed(0) - (5.0 + 29f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!((e.embed(1) - (5.0 - 29f64.sqrt()) / 2.0).abs() < 1e-15);
        assert_eq!(e.sign_at(1), -1);
        let x = QuadInt::new(-7, 3);
        assert_eq!(QuadInt::from_quad_elem(&x.to_quad_elem()), Some(x.clone()));
        assert_eq!(&x * &x.conj(), QuadInt::new(x.norm(), 0));
        // large unit power: tiny conjugate is still accurate
        let u = QuadInt::eps().pow(40);
        let prod = u.embed(0) * u.embed(1);
        assert!((prod - 1.0).abs() < 1e-12);
    }

    #[test]
    fn serde_pair() {
        let x = QuadInt::new(26, 135);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "[26,135]");
        let y: QuadInt = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
