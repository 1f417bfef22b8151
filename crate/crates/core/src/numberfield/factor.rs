use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;

/// Clear denominators and content: returns a primitive integer polynomial
/// (lowest degree first) with positive leading coefficient.
pub fn primitive_integer_coeffs(p: &Poly<BigRational>) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    if ints.last().map_or(false, |c| c < &BigInt::zero()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

/// Complete factorization over the rationals into monic irreducible factors
/// with multiplicities, sorted by degree then coefficients.
pub fn factor_rational_poly(p: &Poly<BigRational>) -> Vec<(Poly<BigRational>, usize)> {
    if p.degree().map_or(true, |d| d == 0) {
        return Vec::new();
    }
    let ints = primitive_integer_coeffs(p);
    let factors = Polynomial::<BigInt>::from(ints).factor();
    let mut out: Vec<(Poly<BigRational>, usize)> = factors
        .polynomial_factors
        .into_iter()
        .map(|f| {
            let coeffs = f
                .polynomial
                .into_coefficients()
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            (Poly::new(coeffs).monic(), f.power)
        })
        .collect();
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
    });
    out
}
