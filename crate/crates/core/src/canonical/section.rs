//! Section norms `|s|_g = |s| exp(-g/2)` for the canonical metric of a
//! divisor built from (infinity).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numberfield::Field;
use crate::projline::{DivisorP1, FormalProduct};

use super::green::{GreenEvaluator, GreenValue};

/// Tolerance on weights and degrees in the effectivity check.
const EFFECTIVE_EPS: f64 = 1e-12;

/// A rational function with real exponents together with the divisor it is
/// a section of; `divisor + div(s)` must be effective.
#[derive(Clone, Debug)]
pub struct Section<K: Field> {
    pub s: FormalProduct<K>,
    pub divisor: DivisorP1<K>,
    effective: DivisorP1<K>,
}

impl<K: Field> Section<K> {
    /// `s` is either a function (degree 0) or a product of forms of total
    /// degree `deg(D)`, read as `s` divided by the equation of `D`.
    pub fn new(mut s: FormalProduct<K>, divisor: DivisorP1<K>) -> Result<Self> {
        let deg = s.degree();
        let ddeg = divisor.degree();
        if deg.abs() > EFFECTIVE_EPS && (deg - ddeg).abs() <= EFFECTIVE_EPS {
            s.factors.extend(divisor.terms().iter().map(|(m, w)| (m.clone(), -w)));
        } else if deg.abs() > EFFECTIVE_EPS {
            return Err(Error::NotEffective(format!("div(s) has degree {deg}, not 0 or {ddeg}")));
        }
        let effective = divisor.plus(&s.divisor());
        if let Some((form, w)) = effective.terms().iter().find(|(_, w)| *w < -EFFECTIVE_EPS) {
            return Err(Error::NotEffective(format!("weight {w} on [{form}]")));
        }
        Ok(Section { s, divisor, effective })
    }

    /// `D + div(s)`, the zero divisor of the section.
    pub fn effective_divisor(&self) -> &DivisorP1<K> {
        &self.effective
    }

    /// `log |s|_g` at a homogeneous complex pair, where `g` is the canonical
    /// Green function of `divisor` for the evaluator's map:
    /// `log |c| + sum_E e log |m(z)| - deg(D) G(z)`.
    pub fn log_norm_complex(&self, ev: &GreenEvaluator<K>, z: [Complex64; 2]) -> GreenValue {
        let index = ev.embedding_index().expect("archimedean evaluator");
        let mut acc = self.s.scalar.embed(index).norm().ln();
        for (m, e) in self.effective.terms() {
            acc += e * m.eval_complex(index, z[0], z[1]).norm().ln();
        }
        let deg = self.divisor.degree();
        acc -= deg * ev.escape_complex(z);
        GreenValue { value: acc, error: deg.abs() * ev.escape_error() }
    }

    /// `|s|_g` at a finite complex point or at infinity (`None`).
    pub fn norm_at(&self, ev: &GreenEvaluator<K>, w: Option<Complex64>) -> GreenValue {
        let one = Complex64::new(1.0, 0.0);
        let z = match w {
            None => [one, Complex64::new(0.0, 0.0)],
            Some(w) if w.norm() > 1.0 => [one, one / w],
            Some(w) => [w, one],
        };
        let l = self.log_norm_complex(ev, z);
        let v = l.value.exp();
        // |e^a - e^b| <= e^max(a,b) |a - b|
        GreenValue { value: v, error: (l.value + l.error).exp() * l.error }
    }
}

/// `|s(x)|_v exp(-g_v(x)/2)` for a section of `D`, checking that
/// `D + div(s)` is effective.
pub fn section_norm<K: Field>(
    s: &FormalProduct<K>,
    d: &DivisorP1<K>,
    ev: &GreenEvaluator<K>,
    x: Option<Complex64>,
) -> Result<GreenValue> {
    Ok(Section::new(s.clone(), d.clone())?.norm_at(ev, x))
}
