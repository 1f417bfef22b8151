//! The maps used throughout: squaring, the Chebyshev-type map z^2 - 2,
//! Lattès maps of short Weierstrass curves, and the degree-4 map over
//! Z[e] attached to Tate's curve y^2 + xy + e^2 y = x^3.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::numberfield::{Field, Poly, QuadElem, QuadInt, Q};
use crate::projline::{BinaryForm, RationalMap};

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `(x^2 : z^2)`.
pub fn squaring() -> RationalMap<Q> {
    RationalMap::from_i64(&[1, 0, 0], &[0, 0, 1]).unwrap()
}

/// `(x^2 - 2 z^2 : z^2)`.
pub fn chebyshev() -> RationalMap<Q> {
    RationalMap::from_i64(&[1, 0, -2], &[0, 0, 1]).unwrap()
}

/// The x-coordinate of duplication on `y^2 = x^3 + a x + b`:
/// `(x^4 - 2a x^2 z^2 - 8b x z^3 + a^2 z^4 : 4x^3 z + 4a x z^3 + 4b z^4)`.
pub fn lattes_forms(a: &Q, b: &Q) -> (BinaryForm<Q>, BinaryForm<Q>) {
    let f = BinaryForm::new(vec![
        q(1),
        q(0),
        -(q(2) * a),
        -(q(8) * b),
        a.clone() * a,
    ]);
    let g = BinaryForm::new(vec![q(0), q(4), q(0), q(4) * a, q(4) * b]);
    (f, g)
}

/// Coefficients of the Tate map as elements of Z[e], x-major order.
pub fn tate_coefficients() -> (Vec<QuadInt>, Vec<QuadInt>) {
    let e2 = QuadInt::eps().pow(2);
    let e4 = QuadInt::eps().pow(4);
    let two = QuadInt::new(2, 0);
    let f = vec![
        QuadInt::one(),
        QuadInt::zero(),
        -&e2,
        -&(&two * &e4),
        QuadInt::zero(),
    ];
    let g = vec![QuadInt::zero(), QuadInt::new(4, 0), QuadInt::one(), &two * &e2, e4];
    (f, g)
}

/// `(x^4 - e^2 x^2 z^2 - 2e^4 x z^3 : 4x^3 z + x^2 z^2 + 2e^2 x z^3 + e^4 z^4)`.
pub fn tate() -> RationalMap<QuadElem> {
    let (f, g) = tate_coefficients();
    let conv = |c: &[QuadInt]| BinaryForm::new(c.iter().map(QuadInt::to_quad_elem).collect());
    RationalMap::new(conv(&f), conv(&g)).expect("nonzero resultant")
}

/// The residue computation showing the Tate map has no common zero modulo
/// any prime, replayed step by step in exact arithmetic.
#[derive(Clone, Debug, Serialize)]
pub struct TateResidueCert {
    /// `G(x,1) - 4 F(x,1)/x = (x + 3e^2)^2`.
    pub square_identity: bool,
    /// `F(x,1)/x` at `x = -3e^2` equals `e^4 (1 - 27 e^2)`.
    pub substitution: bool,
    /// `27 e^2 - 1 = 135 e + 26` (from `e^2 = 5e + 1`).
    pub linear_relation: bool,
    /// `26^2 - 27 * 25`.
    pub integer_identity: BigInt,
    /// `N(135 e + 26)`, showing the obstruction element is a unit.
    pub residue_norm: BigInt,
}

impl TateResidueCert {
    pub fn holds(&self) -> bool {
        self.square_identity
            && self.substitution
            && self.linear_relation
            && self.integer_identity.is_one()
            && self.residue_norm.is_one()
    }
}

pub fn tate_residue_certificate() -> TateResidueCert {
    let (f, g) = tate_coefficients();
    let e2 = QuadInt::eps().pow(2);
    let e4 = QuadInt::eps().pow(4);
    // dehomogenized, lowest degree first
    let to_poly = |c: &[QuadInt]| {
        let mut v: Vec<QuadElem> = c.iter().map(QuadInt::to_quad_elem).collect();
        v.reverse();
        Poly::new(v)
    };
    let f_over_x = {
        let p = to_poly(&f);
        Poly::new(p.coeffs()[1..].to_vec())
    };
    let g1 = to_poly(&g);
    let lhs = g1.sub(&f_over_x.scale(&QuadElem::from_i64(4)));
    let three_e2 = (&QuadInt::new(3, 0) * &e2).to_quad_elem();
    let lin = Poly::new(vec![three_e2.clone(), QuadElem::one()]);
    let square_identity = lhs == lin.mul(&lin);

    let root = -three_e2;
    let at_root = f_over_x.eval(&root);
    let expect = (&e4 * &(&QuadInt::one() - &(&QuadInt::new(27, 0) * &e2))).to_quad_elem();
    let substitution = at_root == expect;

    let r = &(&QuadInt::new(27, 0) * &e2) - &QuadInt::one();
    let linear_relation = r == QuadInt::new(26, 135);

    let integer_identity = BigInt::from(26 * 26) - BigInt::from(27 * 25);
    let residue_norm = QuadInt::new(26, 135).norm();
    TateResidueCert { square_identity, substitution, linear_relation, integer_identity, residue_norm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::ProjPoint;
    use num_traits::Zero;

    #[test]
    fn tate_fixes_zero() {
        let f = tate();
        let zero = ProjPoint::affine(QuadElem::zero());
        assert_eq!(f.evaluate(&zero), zero);
        assert!(tate_residue_certificate().holds());
    }

    #[test]
    fn lattes_matches_closed_form() {
        let (f, g) = lattes_forms(&q(0), &q(1));
        assert_eq!(f, BinaryForm::new(vec![q(1), q(0), q(0), q(-8), q(0)]));
        assert_eq!(g, BinaryForm::new(vec![q(0), q(4), q(0), q(0), q(4)]));
    }
}
