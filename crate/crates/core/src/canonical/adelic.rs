//! The canonical compactification of an R-divisor on P^1 over Q, with
//! optional constant adjustments of the Green functions.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numberfield::{bigint_log, padic_ord, rational_log_abs, Place, Q};
use crate::projline::{DivisorP1, ProjPoint, RationalMap};

use super::green::GreenValue;
use super::height::{Depth, HeightContext};

/// `D` together with Green data at every place: canonical evaluators at the
/// archimedean place and the bad primes, the model Green function at all
/// other primes, each shifted by an optional constant.
#[derive(Clone, Debug)]
pub struct AdelicDivisorP1 {
    divisor: DivisorP1<Q>,
    ctx: HeightContext,
    adjustments: BTreeMap<Place, f64>,
}

impl AdelicDivisorP1 {
    pub fn canonical(f: &RationalMap<Q>, divisor: DivisorP1<Q>, depth: Depth) -> Result<Self> {
        Ok(AdelicDivisorP1 { divisor, ctx: HeightContext::new(f, depth)?, adjustments: BTreeMap::new() })
    }

    pub fn divisor(&self) -> &DivisorP1<Q> {
        &self.divisor
    }

    pub fn context(&self) -> &HeightContext {
        &self.ctx
    }

    /// Replace `g_v` by `g_v + c`.
    pub fn with_adjustment(mut self, v: Place, c: f64) -> Self {
        *self.adjustments.entry(v).or_insert(0.0) += c;
        self
    }

    /// Whether the place uses the unadjusted model Green function.
    pub fn is_model_default(&self, v: Place) -> bool {
        match v {
            Place::Finite(p) => !self.ctx.bad_primes().contains(&p) && !self.adjustments.contains_key(&v),
            Place::Infinite(_) => false,
        }
    }

    /// `g_{D,v}(x) = sum_l w (2 deg(l) G_v(z) - log |l(z)|_v^2) + c_v` for any
    /// lift `z` of `x`.
    pub fn green(&self, v: Place, x: &ProjPoint<Q>) -> Result<GreenValue> {
        let (a, b) = x.integer_pair();
        let (ga, err) = match (v, self.ctx.evaluator(v)) {
            (_, Some(ev)) => (ev.escape_integer_pair(&a, &b)?, ev.escape_error()),
            // model Green function at a good prime: log ||(a, b)||_p = 0
            (Place::Finite(_), None) => (0.0, 0.0),
            (Place::Infinite(_), None) => return Err(Error::Invalid(format!("no place {v} over Q"))),
        };
        let (qa, qb) = (Q::from_integer(a), Q::from_integer(b));
        let mut value = 0.0;
        let mut error = 0.0;
        for (l, w) in self.divisor.terms() {
            let lv = l.eval(&qa, &qb);
            if lv.is_zero() {
                return Err(Error::OnSupport);
            }
            let log_abs = match v {
                Place::Infinite(_) => rational_log_abs(&lv),
                Place::Finite(p) => -(padic_ord(&lv, p)? as f64) * (p as f64).ln(),
            };
            let k = l.degree() as f64;
            value += w * (2.0 * k * ga - 2.0 * log_abs);
            error += w.abs() * 2.0 * k * err;
        }
        value += self.adjustments.get(&v).copied().unwrap_or(0.0);
        Ok(GreenValue { value, error })
    }

    /// Height of a rational point off the support:
    /// `deg(D) h(x) + (1/2) sum_v c_v` by the product formula.
    pub fn height(&self, x: &ProjPoint<Q>) -> Result<GreenValue> {
        let h = self.ctx.height_rational(x)?;
        let shift: f64 = self.adjustments.values().sum::<f64>() / 2.0;
        let deg = self.divisor.degree();
        Ok(GreenValue { value: deg * h.value + shift, error: deg.abs() * h.error })
    }

    /// The height as an explicit sum of halved local Green values over the
    /// contributing places, for cross-checking [`Self::height`].
    pub fn height_by_places(&self, x: &ProjPoint<Q>) -> Result<GreenValue> {
        let (a, b) = x.integer_pair();
        let mut places: Vec<Place> = vec![Place::INF];
        places.extend(self.ctx.bad_primes().iter().map(|&p| Place::Finite(p)));
        for (l, _) in self.divisor.terms() {
            let lv = l.eval(&Q::from_integer(a.clone()), &Q::from_integer(b.clone()));
            if lv.is_zero() {
                return Err(Error::OnSupport);
            }
            for n in [lv.numer(), lv.denom()] {
                if bigint_log(n) > 0.0 {
                    for (p, _) in num_prime::nt_funcs::factorize(n.magnitude().clone()) {
                        places.push(Place::Finite(p.to_u64().ok_or_else(|| Error::Unsupported("large prime".into()))?));
                    }
                }
            }
        }
        places.extend(self.adjustments.keys().copied());
        places.sort();
        places.dedup();
        let mut value = 0.0;
        let mut error = 0.0;
        for v in places {
            let g = self.green(v, x)?;
            value += g.value / 2.0;
            error += g.error / 2.0;
        }
        Ok(GreenValue { value, error })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::projline::BinaryForm;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn product_formula_for_other_divisors() {
        let (a, b) = catalog::lattes_forms(&q(0, 1), &q(1, 1));
        let f = RationalMap::new(a, b).unwrap();
        let d = DivisorP1::from_terms([
            (BinaryForm::linear_root(q(1, 1)), 0.75),
            (BinaryForm::new(vec![q(1, 1), q(0, 1), q(-2, 1)]), 0.5),
        ]);
        let ad = AdelicDivisorP1::canonical(&f, d, Depth::Tolerance(1e-10)).unwrap().with_adjustment(Place::Finite(5), 0.25);
        assert!(!ad.is_model_default(Place::Finite(5)));
        assert!(ad.is_model_default(Place::Finite(7)));
        for x in [q(3, 5), q(-7, 2), q(0, 1)] {
            let x = ProjPoint::affine(x);
            let h1 = ad.height(&x).unwrap();
            let h2 = ad.height_by_places(&x).unwrap();
            assert!((h1.value - h2.value).abs() < 1e-8, "{x}: {} vs {}", h1.value, h2.value);
        }
        assert!(matches!(ad.green(Place::INF, &ProjPoint::affine(q(1, 1))), Err(Error::OnSupport)));
    }
}
