use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;

/// An exact field of characteristic zero with finitely many complex embeddings.
///
/// Implemented by [`BigRational`] and by [`QuadElem`](super::QuadElem).
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &BigRational) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
    /// `Some(q)` when the element lies in the prime field.
    fn as_rational(&self) -> Option<BigRational>;
    /// Image under the `index`-th complex embedding (0 or 1 for quadratic fields).
    fn embed(&self, index: usize) -> Complex64;

    /// Rough bit size of the exact representation, used to cap exact orbits.
    fn size_bits(&self) -> u64;

    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * &i)
    }

    /// Factor a nonzero polynomial into coprime pieces with multiplicities.
    ///
    /// The default is a square-free decomposition; fields with a real
    /// factorization algorithm override it.
    fn factor_poly(p: &Poly<Self>) -> Vec<(Poly<Self>, usize)> {
        p.square_free_decomposition()
    }

    /// `(n, m)` with `self = n / m` and both as integral as the field
    /// allows, so forms evaluated at `(n, m)` avoid fraction reductions.
    fn split_fraction(&self) -> (Self, Self) {
        (self.clone(), Self::one())
    }

    /// Hash consistent with `Eq`. The `BigRational` impl of `Hash` runs a
    /// recursive continued-fraction expansion, far too slow (and deep) for
    /// the large points met along orbits, so reduced fractions hash their
    /// numerator and denominator directly.
    fn hash_exact<H: Hasher>(&self, state: &mut H) {
        self.hash(state)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn embed(&self, _index: usize) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn size_bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
    fn factor_poly(p: &Poly<Self>) -> Vec<(Poly<Self>, usize)> {
        super::factor::factor_rational_poly(p)
    }
    fn split_fraction(&self) -> (Self, Self) {
        (BigRational::from_integer(self.numer().clone()), BigRational::from_integer(self.denom().clone()))
    }
    fn hash_exact<H: Hasher>(&self, state: &mut H) {
        self.numer().hash(state);
        self.denom().hash(state);
    }
}

/// Nearest f64 to a rational, robust to numerators and denominators beyond
/// the f64 range.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    (sign * (bigint_log(q.numer()) - bigint_log(q.denom())).exp()).clamp(f64::MIN, f64::MAX)
}

/// Natural log of |n| for a nonzero big integer.
pub fn bigint_log(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.abs().to_f64().map(f64::ln).unwrap_or(f64::INFINITY)
    } else {
        let shift = bits - 64;
        let top: BigInt = n.abs() >> shift;
        top.to_f64().unwrap().ln() + (shift as f64) * std::f64::consts::LN_2
    }
}

/// log |q| for a nonzero rational.
pub fn rational_log_abs(q: &BigRational) -> f64 {
    bigint_log(q.numer()) - bigint_log(q.denom())
}
