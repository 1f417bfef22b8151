use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numberfield::{Field, QuadElem, Q};

use super::form::{eval_complex_coeffs, BinaryForm};
use super::point::ProjPoint;
use super::resultant::sylvester_resultant;

/// An endomorphism `(x : z) -> (F(x, z) : G(x, z))` of P^1 of degree at least 2
/// with nonzero resultant. The pair `(F, G)` is kept as given: it is the lift
/// that all Green functions are normalized against.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMap<K: Field> {
    f: BinaryForm<K>,
    g: BinaryForm<K>,
    resultant: K,
}

impl<K: Field> RationalMap<K> {
    pub fn new(f: BinaryForm<K>, g: BinaryForm<K>) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch(f.degree(), g.degree()));
        }
        let resultant = sylvester_resultant(&f, &g)?;
        if resultant.is_zero() {
            return Err(Error::DegenerateMap);
        }
        if f.degree() < 2 {
            return Err(Error::DegreeTooSmall(f.degree()));
        }
        Ok(RationalMap { f, g, resultant })
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn f(&self) -> &BinaryForm<K> {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm<K> {
        &self.g
    }

    pub fn resultant(&self) -> &K {
        &self.resultant
    }

    /// Apply the lift to a homogeneous pair.
    pub fn apply_pair(&self, x: &K, z: &K) -> (K, K) {
        (self.f.eval(x, z), self.g.eval(x, z))
    }

    pub fn evaluate(&self, p: &ProjPoint<K>) -> ProjPoint<K> {
        let (a, b) = match p.affine_coord() {
            Some(x) => {
                let (n, m) = x.split_fraction();
                self.apply_pair(&n, &m)
            }
            None => self.apply_pair(p.x(), p.z()),
        };
        ProjPoint::from_pair(a, b).expect("nonzero resultant rules out common zeros")
    }

    pub fn iterate(&self, p: &ProjPoint<K>, n: usize) -> ProjPoint<K> {
        let mut q = p.clone();
        for _ in 0..n {
            q = self.evaluate(&q);
        }
        q
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        RationalMap::new(
            self.f.compose(&other.f, &other.g),
            self.g.compose(&other.f, &other.g),
        )
    }

    pub fn embedded(&self, index: usize) -> ComplexMap {
        ComplexMap { f: self.f.embedded(index), g: self.g.embedded(index) }
    }

    pub fn map_field<L: Field>(&self, h: impl Fn(&K) -> L) -> Result<RationalMap<L>> {
        RationalMap::new(
            BinaryForm::new(self.f.coeffs().iter().map(&h).collect()),
            BinaryForm::new(self.g.coeffs().iter().map(&h).collect()),
        )
    }
}

impl RationalMap<Q> {
    /// The same map over a quadratic field, for exact orbits of quadratic points.
    pub fn to_quadratic(&self) -> RationalMap<QuadElem> {
        self.map_field(QuadElem::from_rational).expect("resultant is field independent")
    }

    pub fn from_i64(f: &[i64], g: &[i64]) -> Result<Self> {
        let conv = |c: &[i64]| BinaryForm::new(c.iter().map(|&v| Q::from_integer(v.into())).collect());
        RationalMap::new(conv(f), conv(g))
    }
}

/// The lift embedded into C, with coefficients in the x-major order.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub f: Vec<Complex64>,
    pub g: Vec<Complex64>,
}

impl ComplexMap {
    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn apply(&self, z: [Complex64; 2]) -> [Complex64; 2] {
        [eval_complex_coeffs(&self.f, z[0], z[1]), eval_complex_coeffs(&self.g, z[0], z[1])]
    }

    /// Affine image, `None` at infinity.
    pub fn evaluate(&self, w: Option<Complex64>) -> Option<Complex64> {
        let z = match w {
            Some(w) => [w, Complex64::new(1.0, 0.0)],
            None => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        };
        let [a, b] = self.apply(z);
        if b == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(a / b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn evaluate_examples() {
        let sq = RationalMap::from_i64(&[1, 0, 0], &[0, 0, 1]).unwrap();
        assert_eq!(sq.evaluate(&ProjPoint::affine(q(2))), ProjPoint::affine(q(4)));
        assert_eq!(sq.iterate(&ProjPoint::affine(q(2)), 3), ProjPoint::affine(q(256)));
        assert_eq!(sq.iterate(&ProjPoint::affine(q(-1)), 2), ProjPoint::affine(q(1)));
        let lattes = RationalMap::from_i64(&[1, 0, 0, -8, 0], &[0, 4, 0, 0, 4]).unwrap();
        assert_eq!(lattes.evaluate(&ProjPoint::affine(q(0))), ProjPoint::affine(q(0)));
        assert_eq!(lattes.iterate(&ProjPoint::affine(q(-1)), 1), ProjPoint::infinity());
    }

    #[test]
    fn rejects_bad_maps() {
        assert_eq!(RationalMap::from_i64(&[1, 0], &[2, 0]), Err(Error::DegenerateMap));
        assert_eq!(RationalMap::from_i64(&[1, 0], &[0, 1]), Err(Error::DegreeTooSmall(1)));
        assert_eq!(RationalMap::from_i64(&[1, 0, 0], &[0, 1]), Err(Error::DegreeMismatch(2, 1)));
    }
}
