use std::fmt;

use num_complex::Complex64;

use crate::numberfield::Field;

use super::form::BinaryForm;
use super::map::RationalMap;

/// Weights this small are treated as cancelled.
const WEIGHT_EPS: f64 = 1e-12;

/// A real divisor on P^1: a finite sum of weights on normalized irreducible
/// forms. `z` stands for the point at infinity, `x - c z` for the point `c`.
#[derive(Clone, PartialEq, Debug)]
pub struct DivisorP1<K: Field> {
    terms: Vec<(BinaryForm<K>, f64)>,
}

impl<K: Field> Default for DivisorP1<K> {
    fn default() -> Self {
        DivisorP1 { terms: Vec::new() }
    }
}

impl<K: Field> DivisorP1<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from (form, weight) pairs; forms are normalized and merged by
    /// equality, so callers must pass irreducible (or at least coprime) forms.
    pub fn from_terms(terms: impl IntoIterator<Item = (BinaryForm<K>, f64)>) -> Self {
        let mut d = Self::zero();
        for (f, w) in terms {
            d.add_term(f, w);
        }
        d
    }

    /// The divisor (infinity).
    pub fn infinity() -> Self {
        Self::from_terms([(BinaryForm::z(), 1.0)])
    }

    /// The divisor (c) of a finite point.
    pub fn point(c: K) -> Self {
        Self::from_terms([(BinaryForm::linear_root(c), 1.0)])
    }

    pub fn add_term(&mut self, form: BinaryForm<K>, w: f64) {
        let form = form.normalized();
        if let Some(t) = self.terms.iter_mut().find(|(f, _)| *f == form) {
            t.1 += w;
        } else {
            self.terms.push((form, w));
        }
        self.terms.retain(|(_, w)| w.abs() > WEIGHT_EPS);
    }

    pub fn terms(&self) -> &[(BinaryForm<K>, f64)] {
        &self.terms
    }

    pub fn weight_of(&self, form: &BinaryForm<K>) -> f64 {
        let form = form.normalized();
        self.terms.iter().find(|(f, _)| *f == form).map_or(0.0, |t| t.1)
    }

    pub fn degree(&self) -> f64 {
        self.terms.iter().map(|(f, w)| w * f.degree() as f64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.iter().all(|(_, w)| *w >= 0.0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (f, w) in &other.terms {
            d.add_term(f.clone(), *w);
        }
        d
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|(f, w)| (f.clone(), w * c)))
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1.0))
    }

    /// Order-independent equality.
    pub fn same_as(&self, other: &Self) -> bool {
        self.minus(other).is_zero()
    }

    /// `f^* D`, by factoring each `l(F, G)`.
    pub fn pullback(&self, f: &RationalMap<K>) -> Self {
        let mut out = Self::zero();
        for (l, w) in &self.terms {
            let composed = l.compose(f.f(), f.g());
            let (_, pieces) = composed.factor();
            for (piece, mult) in pieces {
                out.add_term(piece, w * mult as f64);
            }
        }
        out
    }
}

impl<K: Field> fmt::Display for DivisorP1<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (form, w)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w}*[{form}]")?;
        }
        Ok(())
    }
}

/// A rational function with real exponents, `scalar * prod n_k^(e_k)` with
/// `sum e_k deg n_k = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalProduct<K: Field> {
    pub scalar: K,
    pub factors: Vec<(BinaryForm<K>, f64)>,
}

impl<K: Field> FormalProduct<K> {
    pub fn one() -> Self {
        FormalProduct { scalar: K::one(), factors: Vec::new() }
    }

    pub fn from_divisor(d: &DivisorP1<K>) -> Self {
        FormalProduct { scalar: K::one(), factors: d.terms().to_vec() }
    }

    /// The divisor of the function.
    pub fn divisor(&self) -> DivisorP1<K> {
        DivisorP1::from_terms(self.factors.iter().cloned())
    }

    /// Total homogeneous degree; zero for a genuine function.
    pub fn degree(&self) -> f64 {
        self.factors.iter().map(|(f, e)| e * f.degree() as f64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.divisor().is_zero()
    }

    /// `log |s(z)|` at a homogeneous complex pair under the given embedding.
    pub fn log_abs_complex(&self, index: usize, z: [Complex64; 2]) -> f64 {
        let mut acc = self.scalar.embed(index).norm().ln();
        for (f, e) in &self.factors {
            acc += e * f.eval_complex(index, z[0], z[1]).norm().ln();
        }
        acc
    }
}

impl<K: Field> fmt::Display for FormalProduct<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scalar)?;
        for (form, e) in &self.factors {
            write!(f, " * [{form}]^{e}")?;
        }
        Ok(())
    }
}

/// Returns `f^* D` and `phi` with `f^* D = d D + (phi)`; `phi` is normalized
/// to scalar 1 with normalized forms.
pub fn pullback_and_multiplier<K: Field>(
    f: &RationalMap<K>,
    d: &DivisorP1<K>,
) -> (DivisorP1<K>, FormalProduct<K>) {
    let pulled = d.pullback(f);
    let phi_div = pulled.minus(&d.scaled(f.degree() as f64));
    (pulled, FormalProduct::from_divisor(&phi_div))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::Q;

    fn form(c: &[i64]) -> BinaryForm<Q> {
        BinaryForm::new(c.iter().map(|&v| Q::from_integer(v.into())).collect())
    }

    #[test]
    fn squaring_pullback() {
        let f = RationalMap::from_i64(&[1, 0, 0], &[0, 0, 1]).unwrap();
        let (pb, phi) = pullback_and_multiplier(&f, &DivisorP1::infinity());
        assert!(pb.same_as(&DivisorP1::infinity().scaled(2.0)));
        assert!(phi.is_constant());
        let (pb0, phi0) = pullback_and_multiplier(&f, &DivisorP1::zero());
        assert!(pb0.is_zero() && phi0.is_constant());
    }

    #[test]
    fn lattes_pullback() {
        let f = RationalMap::from_i64(&[1, 0, 0, -8, 0], &[0, 4, 0, 0, 4]).unwrap();
        let d = DivisorP1::infinity();
        let (pb, phi) = pullback_and_multiplier(&f, &d);
        let expect = DivisorP1::from_terms([
            (BinaryForm::z(), 1.0),
            (form(&[1, 1]), 1.0),
            (form(&[1, -1, 1]), 1.0),
        ]);
        assert!(pb.same_as(&expect));
        assert_eq!(phi.degree(), 0.0);
        assert!(pb.minus(&d.scaled(4.0)).minus(&phi.divisor()).is_zero());
        assert_eq!(phi.divisor().weight_of(&BinaryForm::z()), -3.0);
    }
}
