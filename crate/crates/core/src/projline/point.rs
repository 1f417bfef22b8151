use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numberfield::{parse_rational, squarefree_decompose, Field, QuadElem, Q};

/// A point of P^1 over `K`, stored as `(a : 1)` or `(1 : 0)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint<K: Field> {
    x: K,
    z: K,
}

impl<K: Field> std::hash::Hash for ProjPoint<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.x.hash_exact(state);
        self.z.hash_exact(state);
    }
}

impl<K: Field> ProjPoint<K> {
    pub fn affine(x: K) -> Self {
        ProjPoint { x, z: K::one() }
    }

    pub fn infinity() -> Self {
        ProjPoint { x: K::one(), z: K::zero() }
    }

    /// Normalize a homogeneous pair; `None` for `(0, 0)`.
    pub fn from_pair(x: K, z: K) -> Option<Self> {
        if z.is_zero() {
            if x.is_zero() {
                None
            } else {
                Some(Self::infinity())
            }
        } else {
            let zi = z.inv()?;
            Some(ProjPoint { x: x * &zi, z: K::one() })
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.z.is_zero()
    }

    pub fn x(&self) -> &K {
        &self.x
    }

    pub fn z(&self) -> &K {
        &self.z
    }

    /// Affine coordinate, `None` at infinity.
    pub fn affine_coord(&self) -> Option<&K> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x)
        }
    }

    pub fn size_bits(&self) -> u64 {
        self.x.size_bits() + self.z.size_bits()
    }

    /// Image under a complex embedding as an affine value (`None` at infinity).
    pub fn embed(&self, index: usize) -> Option<Complex64> {
        self.affine_coord().map(|x| x.embed(index))
    }

    pub fn map_field<L: Field>(&self, f: impl Fn(&K) -> L) -> ProjPoint<L> {
        ProjPoint { x: f(&self.x), z: f(&self.z) }
    }
}

impl<K: Field> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.x)
        }
    }
}

impl<K: Field> serde::Serialize for ProjPoint<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl ProjPoint<Q> {
    /// Coprime integer representative `(p, q)` with `q >= 0`.
    pub fn integer_pair(&self) -> (BigInt, BigInt) {
        if self.is_infinity() {
            (BigInt::one(), BigInt::zero())
        } else {
            (self.x.numer().clone(), self.x.denom().clone())
        }
    }

    /// Parse `"inf"`, `"p/q"`, an integer or a decimal.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t == "1:0" {
            return Ok(Self::infinity());
        }
        if let Some((a, b)) = t.split_once(':') {
            let a = parse_rational(a)?;
            let b = parse_rational(b)?;
            return Self::from_pair(a, b).ok_or_else(|| Error::Invalid("(0:0) is not a point".into()));
        }
        Ok(Self::affine(parse_rational(t)?))
    }
}

/// A point of degree 2 over Q: a root of the primitive irreducible quadratic
/// `c2 x^2 + c1 x + c0` (with `c2 > 0`) chosen by `selector`, which is the
/// sign in front of the square root in `(-c1 +- sqrt(disc)) / (2 c2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticPoint {
    pub c2: BigInt,
    pub c1: BigInt,
    pub c0: BigInt,
    pub selector: i8,
}

impl QuadraticPoint {
    pub fn new(c2: BigInt, c1: BigInt, c0: BigInt, selector: i8) -> Result<Self> {
        let mut g = c2.gcd(&c1).gcd(&c0);
        if g.is_zero() {
            return Err(Error::Invalid("zero polynomial".into()));
        }
        if c2.is_negative() {
            g = -g;
        }
        let (c2, c1, c0) = (c2 / &g, c1 / &g, c0 / &g);
        if c2.is_zero() {
            return Err(Error::NotIrreducible("degree below 2".into()));
        }
        let disc = &c1 * &c1 - BigInt::from(4) * &c2 * &c0;
        if crate::numberfield::padic::is_square(&disc) {
            return Err(Error::NotIrreducible(format!("{c2}x^2 + {c1}x + {c0}")));
        }
        if selector != 1 && selector != -1 {
            return Err(Error::Invalid("root selector must be +1 or -1".into()));
        }
        Ok(QuadraticPoint { c2, c1, c0, selector })
    }

    pub fn from_i64(c2: i64, c1: i64, c0: i64, selector: i8) -> Result<Self> {
        Self::new(c2.into(), c1.into(), c0.into(), selector)
    }

    pub fn discriminant(&self) -> BigInt {
        &self.c1 * &self.c1 - BigInt::from(4) * &self.c2 * &self.c0
    }

    pub fn conjugate(&self) -> Self {
        QuadraticPoint { selector: -self.selector, ..self.clone() }
    }

    /// `(s, core)` with `disc = s^2 core`, core squarefree.
    pub fn radical(&self) -> (BigInt, BigInt) {
        squarefree_decompose(&self.discriminant())
    }

    /// The root as an element of Q(sqrt core).
    pub fn root(&self) -> Result<QuadElem> {
        let (s, core) = self.radical();
        let d: i64 = core
            .try_into()
            .map_err(|_| Error::Unsupported("radicand does not fit in 64 bits".into()))?;
        let den = BigInt::from(2) * &self.c2;
        let a = BigRational::new(-self.c1.clone(), den.clone());
        let b = BigRational::new(BigInt::from(self.selector) * s, den);
        Ok(QuadElem::new(a, b, d))
    }

    pub fn to_field_point(&self) -> Result<ProjPoint<QuadElem>> {
        Ok(ProjPoint::affine(self.root()?))
    }

    /// Both complex roots, this point's root first.
    pub fn complex_roots(&self) -> Result<[Complex64; 2]> {
        let r = self.root()?;
        Ok([r.embed(0), r.embed(1)])
    }

    pub fn minpoly_coeffs(&self) -> [BigInt; 3] {
        [self.c2.clone(), self.c1.clone(), self.c0.clone()]
    }
}

impl fmt::Display for QuadraticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root[{}] of {}x^2 + {}x + {}",
            if self.selector > 0 { "+" } else { "-" },
            self.c2,
            self.c1,
            self.c0
        )
    }
}

/// A point of degree at most 2 over Q.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AlgPoint {
    Rational(ProjPoint<Q>),
    Quadratic(QuadraticPoint),
}

impl AlgPoint {
    pub fn degree(&self) -> usize {
        match self {
            AlgPoint::Rational(_) => 1,
            AlgPoint::Quadratic(_) => 2,
        }
    }

    /// Complex images, one per embedding of Q(x).
    pub fn complex_images(&self) -> Result<Vec<Option<Complex64>>> {
        Ok(match self {
            AlgPoint::Rational(p) => vec![p.embed(0)],
            AlgPoint::Quadratic(q) => q.complex_roots()?.iter().map(|z| Some(*z)).collect(),
        })
    }
}

impl From<ProjPoint<Q>> for AlgPoint {
    fn from(p: ProjPoint<Q>) -> Self {
        AlgPoint::Rational(p)
    }
}

impl From<QuadraticPoint> for AlgPoint {
    fn from(p: QuadraticPoint) -> Self {
        AlgPoint::Quadratic(p)
    }
}

impl fmt::Display for AlgPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgPoint::Rational(p) => write!(f, "{p}"),
            AlgPoint::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_canonical() {
        let q = |n: i64| Q::from_integer(n.into());
        let a = ProjPoint::from_pair(q(4), q(2)).unwrap();
        assert_eq!(a, ProjPoint::affine(q(2)));
        assert_eq!(ProjPoint::from_pair(q(3), q(0)).unwrap(), ProjPoint::infinity());
        assert!(ProjPoint::<Q>::from_pair(q(0), q(0)).is_none());
        assert_eq!(ProjPoint::parse("6/4").unwrap(), ProjPoint::affine(Q::new(3.into(), 2.into())));
        assert_eq!(ProjPoint::parse("inf").unwrap(), ProjPoint::infinity());
    }

    #[test]
    fn quadratic_root() {
        // x^2 - x + 1: roots (1 +- sqrt(-3)) / 2
        let p = QuadraticPoint::from_i64(1, -1, 1, 1).unwrap();
        let r = p.root().unwrap();
        let m = r.minpoly();
        assert_eq!(m.coeff(0), Q::one());
        assert_eq!(m.coeff(1), -Q::one());
        let z = p.complex_roots().unwrap();
        assert!((z[0] - Complex64::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        assert!(QuadraticPoint::from_i64(1, -3, 2, 1).is_err());
    }
}

impl serde::Serialize for AlgPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
