use std::fmt;

use num_complex::Complex64;

use crate::numberfield::{Field, Poly};

/// Homogeneous binary form of fixed degree. `coeffs[i]` multiplies
/// `x^(deg-i) z^i`, so the list runs from the pure `x` power down to the pure
/// `z` power. Leading zeros are kept: the degree is part of the data.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryForm<K: Field> {
    coeffs: Vec<K>,
}

impl<K: Field> BinaryForm<K> {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn constant(c: K) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn x() -> Self {
        BinaryForm::new(vec![K::one(), K::zero()])
    }

    pub fn z() -> Self {
        BinaryForm::new(vec![K::zero(), K::one()])
    }

    /// `x - c z`
    pub fn linear_root(c: K) -> Self {
        BinaryForm::new(vec![K::one(), -c])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of `x^(deg-i) z^i`.
    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn eval(&self, x: &K, z: &K) -> K {
        // sum c_i x^(n-i) z^i via Horner in x with z powers
        let mut acc = K::zero();
        let mut zp = K::one();
        let n = self.degree();
        let mut xp = vec![K::one(); n + 1];
        for i in 1..=n {
            xp[i] = xp[i - 1].clone() * x;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + &(c.clone() * &xp[n - i] * &zp);
            }
            zp = zp * z;
        }
        acc
    }

    /// Evaluate at a complex pair under the given embedding of the coefficients.
    pub fn eval_complex(&self, index: usize, x: Complex64, z: Complex64) -> Complex64 {
        let c: Vec<Complex64> = self.coeffs.iter().map(|c| c.embed(index)).collect();
        eval_complex_coeffs(&c, x, z)
    }

    pub fn embedded(&self, index: usize) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.embed(index)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &K) -> Self {
        BinaryForm::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        BinaryForm::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BinaryForm::constant(K::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(F, G)`, a form of degree `deg(self) * deg(F)`.
    pub fn compose(&self, f: &Self, g: &Self) -> Self {
        assert_eq!(f.degree(), g.degree());
        let n = self.degree();
        let fp: Vec<Self> = (0..=n).map(|k| f.pow(k)).collect();
        let gp: Vec<Self> = (0..=n).map(|k| g.pow(k)).collect();
        let mut acc = BinaryForm::new(vec![K::zero(); n * f.degree() + 1]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&fp[n - i].mul(&gp[i]).scale(c));
        }
        acc
    }

    /// Precompose with the swap (x, z) -> (z, x).
    pub fn swapped(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        BinaryForm::new(c)
    }

    /// Multiplicity of the root at infinity, i.e. the power of `z` dividing it.
    pub fn z_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Dehomogenize: `t -> self(t, 1)`, lowest degree first.
    pub fn to_poly(&self) -> Poly<K> {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// Homogenize a polynomial to a form of the given degree (at least its own).
    pub fn from_poly(p: &Poly<K>, degree: usize) -> Self {
        let mut c: Vec<K> = (0..=degree).map(|i| p.coeff(i)).collect();
        c.reverse();
        BinaryForm::new(c)
    }

    /// First nonzero coefficient (in the x-major order).
    pub fn leading(&self) -> K {
        self.coeffs.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(K::zero)
    }

    /// Scale so the first nonzero coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    /// Factor into normalized coprime pieces with multiplicity (irreducible
    /// over Q; square-free pieces over other fields) and the leftover scalar.
    pub fn factor(&self) -> (K, Vec<(BinaryForm<K>, usize)>) {
        let mut out = Vec::new();
        let m = self.z_multiplicity();
        if m > 0 {
            out.push((BinaryForm::z(), m));
        }
        let p = self.to_poly();
        let lead = p.leading();
        for (q, e) in K::factor_poly(&p) {
            let deg = q.degree().unwrap_or(0);
            out.push((BinaryForm::from_poly(&q, deg), e));
        }
        (lead, out)
    }
}

pub(crate) fn eval_complex_coeffs(c: &[Complex64], x: Complex64, z: Complex64) -> Complex64 {
    // Horner in whichever coordinate is larger keeps the powers bounded.
    let n = c.len() - 1;
    if x.norm() >= z.norm() {
        let t = z / x;
        let mut acc = Complex64::new(0.0, 0.0);
        for ci in c.iter().rev() {
            acc = acc * t + ci;
        }
        acc * x.powu(n as u32)
    } else {
        let t = x / z;
        let mut acc = Complex64::new(0.0, 0.0);
        for ci in c.iter() {
            acc = acc * t + ci;
        }
        acc * z.powu(n as u32)
    }
}

impl<K: Field> fmt::Display for BinaryForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match n - i {
                0 => {}
                1 => write!(f, "x")?,
                k => write!(f, "x^{k}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                k => write!(f, "z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::Q;

    fn form(c: &[i64]) -> BinaryForm<Q> {
        BinaryForm::new(c.iter().map(|&v| Q::from_integer(v.into())).collect())
    }

    #[test]
    fn compose_and_factor() {
        // z(F, G) = G for the Lattès map of y^2 = x^3 + 1
        let f = form(&[1, 0, 0, -8, 0]);
        let g = form(&[0, 4, 0, 0, 4]);
        assert_eq!(BinaryForm::z().compose(&f, &g), g);
        let (lead, fac) = g.factor();
        assert_eq!(lead, Q::from_integer(4.into()));
        assert_eq!(
            fac,
            vec![(BinaryForm::z(), 1), (form(&[1, 1]), 1), (form(&[1, -1, 1]), 1)]
        );
    }

    #[test]
    fn complex_eval_matches_exact() {
        let f = form(&[1, -2, 0, 3]);
        let exact = f.eval(&Q::from_integer(3.into()), &Q::from_integer(2.into()));
        let num = f.eval_complex(0, Complex64::new(3.0, 0.0), Complex64::new(2.0, 0.0));
        assert!((num.re - crate::numberfield::rational_to_f64(&exact)).abs() < 1e-12);
    }
}
