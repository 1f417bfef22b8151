//! Elements of a quadratic field Q(sqrt d), d squarefree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{self, rational_to_f64};
use super::poly::Poly;

/// `a + b sqrt(d)`. The radicand is forgotten (stored as 0) whenever `b = 0`,
/// so rationals have one representation regardless of the ambient field and
/// equality is structural. Mixing two different nonzero radicands panics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadElem {
    a: BigRational,
    b: BigRational,
    d: i64,
}

impl std::hash::Hash for QuadElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        field::Field::hash_exact(&self.a, state);
        field::Field::hash_exact(&self.b, state);
        self.d.hash(state);
    }
}

impl QuadElem {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            QuadElem { a, b, d: 0 }
        } else {
            assert!(d != 0 && d != 1, "radicand must be a non-square");
            QuadElem { a, b, d }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadElem { a, b: BigRational::zero(), d: 0 }
    }

    /// `sqrt d` itself.
    pub fn sqrt(d: i64) -> Self {
        QuadElem::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// Radicand, or 0 for a rational element.
    pub fn disc(&self) -> i64 {
        self.d
    }

    fn join(d1: i64, d2: i64) -> i64 {
        match (d1, d2) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("incompatible quadratic fields Q(sqrt {x}) and Q(sqrt {y})"),
        }
    }

    pub fn conj(&self) -> Self {
        QuadElem::new(self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    /// Minimal polynomial over Q, monic, lowest degree first.
    pub fn minpoly(&self) -> Poly<BigRational> {
        if self.b.is_zero() {
            Poly::new(vec![-self.a.clone(), BigRational::one()])
        } else {
            Poly::new(vec![self.norm(), -self.trace(), BigRational::one()])
        }
    }

    fn real_embed(&self, sign: f64) -> f64 {
        let s = (self.d as f64).sqrt();
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b);
        let direct = a + sign * b * s;
        let other = a - sign * b * s;
        if direct.abs() >= other.abs() || other == 0.0 {
            direct
        } else {
            rational_to_f64(&self.norm()) / other
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, o: QuadElem) -> QuadElem {
        self + &o
    }
}

impl<'a> Add<&'a QuadElem> for QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        let d = QuadElem::join(self.d, o.d);
        QuadElem::new(self.a + &o.a, self.b + &o.b, d)
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, o: QuadElem) -> QuadElem {
        self - &o
    }
}

impl<'a> Sub<&'a QuadElem> for QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        let d = QuadElem::join(self.d, o.d);
        QuadElem::new(self.a - &o.a, self.b - &o.b, d)
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, o: QuadElem) -> QuadElem {
        self * &o
    }
}

impl<'a> Mul<&'a QuadElem> for QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        let d = QuadElem::join(self.d, o.d);
        let dq = BigRational::from_integer(d.into());
        let a = &self.a * &o.a + &self.b * &o.b * dq;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadElem::new(a, b, d)
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(-self.a, -self.b, self.d)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Zero for QuadElem {
    fn zero() -> Self {
        QuadElem::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadElem {
    fn one() -> Self {
        QuadElem::rational(BigRational::one())
    }
}

impl field::Field for QuadElem {
    fn inv(&self) -> Option<Self> {
        if self.a.is_zero() && self.b.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadElem::new(&self.a / &n, -(&self.b / &n), self.d))
    }
    fn from_rational(q: &BigRational) -> Self {
        QuadElem::rational(q.clone())
    }
    fn split_fraction(&self) -> (Self, Self) {
        use num_integer::Integer;
        let l = BigRational::from_integer(self.a.denom().lcm(self.b.denom()));
        (QuadElem::new(&self.a * &l, &self.b * &l, self.d), QuadElem::rational(l))
    }
    fn as_rational(&self) -> Option<BigRational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }
    fn size_bits(&self) -> u64 {
        self.a.size_bits() + self.b.size_bits()
    }
    fn embed(&self, index: usize) -> Complex64 {
        if self.b.is_zero() {
            return Complex64::new(rational_to_f64(&self.a), 0.0);
        }
        let sign = if index == 0 { 1.0 } else { -1.0 };
        if self.d > 0 {
            Complex64::new(self.real_embed(sign), 0.0)
        } else {
            let s = (-(self.d as f64)).sqrt();
            Complex64::new(rational_to_f64(&self.a), sign * rational_to_f64(&self.b) * s)
        }
    }
}

/// Squarefree part of a nonzero integer together with the square cofactor:
/// `n = s^2 * core`.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    use num_bigint::BigUint;
    use num_prime::nt_funcs::factorize;
    assert!(!n.is_zero());
    let mag: BigUint = n.abs().to_biguint().unwrap();
    let mut core = BigInt::one();
    let mut s = BigInt::one();
    if mag > BigUint::one() {
        for (p, e) in factorize(mag) {
            let p = BigInt::from(p);
            if e % 2 == 1 {
                core *= &p;
            }
            s *= num_traits::pow(p, e / 2);
        }
    }
    if n.is_negative() {
        core = -core;
    }
    (s, core)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    use crate::numberfield::Field;

    #[test]
    fn arithmetic() {
        let x = QuadElem::new(q(1, 2), q(3, 1), 29);
        let y = x.inv().unwrap();
        assert_eq!(x.clone() * &y, QuadElem::one());
        assert_eq!((x.clone() - &x).disc(), 0);
        let m = x.minpoly();
        let xx = Poly::new(m.coeffs().iter().map(QuadElem::from_rational).collect()).eval(&x);
        assert!(xx.is_zero());
        let i = QuadElem::sqrt(-1);
        assert_eq!(i.clone() * &i, QuadElem::from_i64(-1));
        assert_eq!(i.embed(0), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn squarefree() {
        let (s, c) = squarefree_decompose(&BigInt::from(-108));
        assert_eq!((s, c), (BigInt::from(6), BigInt::from(-3)));
        let (s, c) = squarefree_decompose(&BigInt::from(29));
        assert_eq!((s, c), (BigInt::from(1), BigInt::from(29)));
    }
}
