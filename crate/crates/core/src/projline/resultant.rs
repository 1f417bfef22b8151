//! Exact Sylvester resultants and the Bezout identity behind them.

use crate::error::{Error, Result};
use crate::numberfield::Field;

use super::form::BinaryForm;

/// Rows are the coefficient vectors of `x^(n-1-i) z^i F` (i < n) followed by
/// `x^(m-1-j) z^j G` (j < m), m = deg F, n = deg G; columns are the
/// monomials `x^(m+n-1-k) z^k`.
pub fn sylvester_matrix<K: Field>(f: &BinaryForm<K>, g: &BinaryForm<K>) -> Vec<Vec<K>> {
    let m = f.degree();
    let n = g.degree();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![K::zero(); size];
        for (k, c) in f.coeffs().iter().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for j in 0..m {
        let mut row = vec![K::zero(); size];
        for (k, c) in g.coeffs().iter().enumerate() {
            row[j + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Gaussian elimination over the field.
pub fn determinant<K: Field>(mut a: Vec<Vec<K>>) -> K {
    let n = a.len();
    let mut det = K::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return K::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let inv = a[col][col].inv().unwrap();
        det = det * &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() * &inv;
            for c in col..n {
                let t = factor.clone() * &a[col][c];
                a[r][c] = a[r][c].clone() - &t;
            }
        }
    }
    det
}

/// Solve `A^T y = b` for square invertible `A`.
fn solve_transposed<K: Field>(a: &[Vec<K>], b: &[K]) -> Option<Vec<K>> {
    let n = a.len();
    let mut m: Vec<Vec<K>> = (0..n)
        .map(|i| {
            let mut row: Vec<K> = (0..n).map(|j| a[j][i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let inv = m[col][col].inv()?;
        for c in col..=n {
            m[col][c] = m[col][c].clone() * &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=n {
                let t = factor.clone() * &m[col][c];
                m[r][c] = m[r][c].clone() - &t;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// The resultant of two forms of equal degree.
pub fn sylvester_resultant<K: Field>(f: &BinaryForm<K>, g: &BinaryForm<K>) -> Result<K> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch(f.degree(), g.degree()));
    }
    Ok(determinant(sylvester_matrix(f, g)))
}

/// Forms `(A, B)` of degree `deg - 1` with `A F + B G` equal to a monomial.
#[derive(Clone, Debug)]
pub struct BezoutPair<K: Field> {
    pub a: BinaryForm<K>,
    pub b: BinaryForm<K>,
}

/// The two Bezout identities `A F + B G = x^(2d-1)` and `= z^(2d-1)`;
/// `None` when the resultant vanishes.
pub fn bezout_identities<K: Field>(
    f: &BinaryForm<K>,
    g: &BinaryForm<K>,
) -> Option<(BezoutPair<K>, BezoutPair<K>)> {
    let s = sylvester_matrix(f, g);
    let size = s.len();
    let n = g.degree();
    let solve = |k: usize| -> Option<BezoutPair<K>> {
        let mut e = vec![K::zero(); size];
        e[k] = K::one();
        let y = solve_transposed(&s, &e)?;
        Some(BezoutPair {
            a: BinaryForm::new(y[..n].to_vec()),
            b: BinaryForm::new(y[n..].to_vec()),
        })
    };
    Some((solve(0)?, solve(size - 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::Q;

    fn form(c: &[i64]) -> BinaryForm<Q> {
        BinaryForm::new(c.iter().map(|&v| Q::from_integer(v.into())).collect())
    }

    #[test]
    fn small_resultants() {
        let one = Q::from_integer(1.into());
        assert_eq!(sylvester_resultant(&form(&[1, 0, 0]), &form(&[0, 0, 1])).unwrap(), one);
        assert_eq!(sylvester_resultant(&form(&[1, 0]), &form(&[0, 1])).unwrap(), one);
        assert_eq!(
            sylvester_resultant(&form(&[1, 0]), &form(&[2, 0])).unwrap(),
            Q::from_integer(0.into())
        );
        assert!(matches!(
            sylvester_resultant(&form(&[1, 0]), &form(&[1, 0, 0])),
            Err(Error::DegreeMismatch(1, 2))
        ));
    }

    #[test]
    fn bezout_reproduces_monomials() {
        let f = form(&[1, 0, 0, -8, 0]);
        let g = form(&[0, 4, 0, 0, 4]);
        let (px, pz) = bezout_identities(&f, &g).unwrap();
        let lhs = px.a.mul(&f).add(&px.b.mul(&g));
        assert_eq!(lhs, form(&[1, 0, 0, 0, 0, 0, 0, 0]));
        let lhs = pz.a.mul(&f).add(&pz.b.mul(&g));
        assert_eq!(lhs, form(&[0, 0, 0, 0, 0, 0, 0, 1]));
    }
}
