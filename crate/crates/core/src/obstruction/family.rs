//! Finite families of candidate sections of `(infinity)`.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::numberfield::{format_rational, parse_rational, Q};
use crate::projline::{BinaryForm, DivisorP1, FormalProduct};

use super::SectionCandidate;

/// Linear sections `(x - c z) / z`, two-point sections with zero divisor
/// `t (0) + (1 - t)(c)`, and monomials `(x / z)^t`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FamilySpec {
    pub linear: Vec<Q>,
    pub two_point_t: Vec<f64>,
    pub two_point_c: Vec<Q>,
    pub monomial: Vec<f64>,
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// The sweep family used by default: `c` in {0, +-1, +-2, +-1/2}, two-point
/// weights 1/4, 1/2, 3/4 against c in {1, -1, 2}, monomial exponents +-1/2, +-1.
pub fn default_family() -> FamilySpec {
    FamilySpec {
        linear: vec![q(0, 1), q(1, 1), q(-1, 1), q(2, 1), q(-2, 1), q(1, 2), q(-1, 2)],
        two_point_t: vec![0.25, 0.5, 0.75],
        two_point_c: vec![q(1, 1), q(-1, 1), q(2, 1)],
        monomial: vec![0.5, 1.0, -0.5, -1.0],
    }
}

fn one() -> Q {
    Q::from_integer(1.into())
}

impl FamilySpec {
    /// Valid candidates in family order, and the members rejected as
    /// non-sections together with the reason.
    pub fn candidates(&self) -> (Vec<SectionCandidate>, Vec<(String, String)>) {
        let d = DivisorP1::infinity();
        let z = BinaryForm::z();
        let mut raw: Vec<(String, FormalProduct<Q>)> = Vec::new();
        for c in &self.linear {
            raw.push((
                format!("x - {}z", format_rational_short(c)),
                FormalProduct { scalar: one(), factors: vec![(BinaryForm::linear_root(c.clone()), 1.0), (z.clone(), -1.0)] },
            ));
        }
        for &t in &self.two_point_t {
            for c in &self.two_point_c {
                raw.push((
                    format!("{t}(0) + {}({})", 1.0 - t, format_rational_short(c)),
                    FormalProduct {
                        scalar: one(),
                        factors: vec![
                            (BinaryForm::x(), t),
                            (BinaryForm::linear_root(c.clone()), 1.0 - t),
                            (z.clone(), -1.0),
                        ],
                    },
                ));
            }
        }
        for &t in &self.monomial {
            raw.push((
                format!("(x/z)^{t}"),
                FormalProduct { scalar: one(), factors: vec![(BinaryForm::x(), t), (z.clone(), -t)] },
            ));
        }
        let mut ok = Vec::new();
        let mut bad = Vec::new();
        for (name, s) in raw {
            match SectionCandidate::new(name.clone(), s, d.clone()) {
                Ok(c) => ok.push(c),
                Err(e) => bad.push((name, e.to_string())),
            }
        }
        (ok, bad)
    }

    /// `{"linear": [c...], "two_point": {"t": [..], "c": [..]}, "monomial": [t...]}`
    /// with rationals as strings or numbers; missing keys are empty.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Invalid("family must be a JSON object".into()))?;
        let rats = |x: Option<&Value>| -> Result<Vec<Q>> {
            match x {
                None => Ok(Vec::new()),
                Some(Value::Array(a)) => a.iter().map(json_rational).collect(),
                Some(_) => Err(Error::Invalid("expected an array of rationals".into())),
            }
        };
        let reals = |x: Option<&Value>| -> Result<Vec<f64>> {
            match x {
                None => Ok(Vec::new()),
                Some(Value::Array(a)) => {
                    a.iter().map(|e| json_rational(e).map(|q| crate::numberfield::rational_to_f64(&q))).collect()
                }
                Some(_) => Err(Error::Invalid("expected an array of reals".into())),
            }
        };
        let tp = obj.get("two_point");
        Ok(FamilySpec {
            linear: rats(obj.get("linear"))?,
            two_point_t: reals(tp.and_then(|t| t.get("t")))?,
            two_point_c: rats(tp.and_then(|t| t.get("c")))?,
            monomial: reals(obj.get("monomial"))?,
        })
    }
}

fn format_rational_short(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format_rational(c)
    }
}

/// A rational from a JSON string ("3/4", "-2", "0.5") or number.
pub fn json_rational(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Invalid(format!("expected a rational, got {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_family_size() {
        let (ok, bad) = default_family().candidates();
        assert_eq!(ok.len(), 18);
        assert_eq!(bad.len(), 2);
        assert!(bad.iter().all(|(n, _)| n.contains("^-")));
    }

    #[test]
    fn json_family() {
        let v: Value = serde_json::from_str(r#"{"linear": ["1/2", 3], "two_point": {"t": [0.5], "c": ["-1"]}}"#).unwrap();
        let f = FamilySpec::from_json(&v).unwrap();
        assert_eq!(f.linear, vec![q(1, 2), q(3, 1)]);
        assert_eq!(f.candidates().0.len(), 3);
    }
}
