//! Adelic R-divisors on Spec Q with exact entries in `Q + sum_p Q log p`.
//!
//! Logarithms of distinct primes are linearly independent over Q together
//! with 1, so equality of such numbers is decidable coefficient-wise.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numberfield::{format_rational, padic_ord, parse_rational, rational_to_f64, Place, Q};

/// An exact real number `rational + sum_p c_p log p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogReal {
    pub rational: Q,
    pub logs: BTreeMap<u64, Q>,
}

impl LogReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: Q) -> Self {
        LogReal { rational: q, logs: BTreeMap::new() }
    }

    /// `c log p`.
    pub fn log(c: Q, p: u64) -> Self {
        let mut r = Self::zero();
        r.add_log(c, p);
        r
    }

    fn add_log(&mut self, c: Q, p: u64) {
        let e = self.logs.entry(p).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.logs.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.logs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.rational += &other.rational;
        for (&p, c) in &other.logs {
            r.add_log(c.clone(), p);
        }
        r
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LogReal {
            rational: &self.rational * c,
            logs: self.logs.iter().map(|(&p, v)| (p, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Q::from_integer((-1).into()))
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational)
            + self.logs.iter().map(|(&p, c)| rational_to_f64(c) * (p as f64).ln()).sum::<f64>()
    }

    /// `Some(c)` when the number is exactly `c log p`.
    pub fn as_log_multiple(&self, p: u64) -> Option<Q> {
        if !self.rational.is_zero() {
            return None;
        }
        match self.logs.len() {
            0 => Some(Q::zero()),
            1 => self.logs.get(&p).cloned(),
            _ => None,
        }
    }

    /// From a float, read as the exact decimal it prints as.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Invalid(format!("non-finite value {x}")));
        }
        Ok(Self::rational(parse_rational(&format!("{x:e}"))?))
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rational.is_zero() {
            parts.push(format_rational(&self.rational));
        }
        for (p, c) in &self.logs {
            parts.push(format!("{}*log({p})", format_rational(c)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for LogReal {
    type Err = Error;

    /// Sums of terms `q`, `log(p)` and `q*log(p)`, with `+` and `-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("bad exact real {s:?}"));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad());
        }
        // split before a sign that is not part of an exponent
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, &c) in chars.iter().enumerate() {
            let after_exp = i > 0 && matches!(chars[i - 1], 'e' | 'E') && !cur.contains("log");
            if (c == '+' || c == '-') && i > 0 && !after_exp && chars[i - 1] != '(' {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut out = LogReal::zero();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b.to_string()),
                None => (1, t.trim_start_matches('+').to_string()),
            };
            let sign = Q::from_integer(sign.into());
            if let Some(pos) = body.find("log(") {
                let coef = body[..pos].trim_end_matches('*');
                let c = if coef.is_empty() { Q::from_integer(1.into()) } else { parse_rational(coef)? };
                let inner = body[pos + 4..].strip_suffix(')').ok_or_else(bad)?;
                let p: u64 = inner.parse().map_err(|_| bad())?;
                Place::finite(p)?;
                out.add_log(c * sign, p);
            } else {
                out.rational += parse_rational(&body)? * sign;
            }
        }
        Ok(out)
    }
}

impl Serialize for LogReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finitely supported real vector over the places of Q.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecKDivisor {
    pub entries: BTreeMap<Place, LogReal>,
}

impl SpecKDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_entry(&mut self, v: Place, x: LogReal) -> Result<()> {
        if let Place::Infinite(k) = v {
            if k != 0 {
                return Err(Error::Invalid("Q has a single archimedean place".into()));
            }
        }
        let e = self.entries.entry(v).or_default();
        *e = e.add(&x);
        if e.is_zero() {
            self.entries.remove(&v);
        }
        Ok(())
    }

    /// `(phi)^` for `phi = prod p^(t_p)`: `2 t_p log p` at p and
    /// `-2 sum t_p log p` at infinity.
    pub fn principal(t: &BTreeMap<u64, Q>) -> Result<Self> {
        let mut z = Self::zero();
        let two = Q::from_integer(2.into());
        for (&p, tp) in t {
            let v = LogReal::log(tp * &two, p);
            z.add_entry(Place::finite(p)?, v.clone())?;
            z.add_entry(Place::INF, v.neg())?;
        }
        Ok(z)
    }

    /// `(phi)^` for a nonzero rational, via `-log |phi|_v^2` at each place.
    pub fn of_rational(phi: &Q) -> Result<Self> {
        if phi.is_zero() {
            return Err(Error::OrdOfZero);
        }
        let mut t = BTreeMap::new();
        for n in [phi.numer(), phi.denom()] {
            let mag = n.abs().to_biguint().unwrap();
            if mag > 1u32.into() {
                for (p, _) in num_prime::nt_funcs::factorize(mag) {
                    let p = p.to_u64().ok_or_else(|| Error::Unsupported("prime beyond 64 bits".into()))?;
                    t.insert(p, Q::from_integer(padic_ord(phi, p)?.into()));
                }
            }
        }
        Self::principal(&t)
    }
}

/// `(1/2) sum_v zeta_v`, exactly.
pub fn speck_degree(z: &SpecKDivisor) -> LogReal {
    let half = Q::new(1.into(), 2.into());
    z.entries.values().fold(LogReal::zero(), |a, b| a.add(b)).scale(&half)
}

/// Exponent of a prime in the principalizing element.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Exponent {
    Exact(String),
    Real(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Principality {
    /// `zeta = (prod p^(t_p))^`.
    Principal { exponents: BTreeMap<String, Exponent> },
    NotPrincipal { degree: LogReal, degree_value: f64 },
}

/// Decide whether `zeta` is the divisor of an element of `Q^x (x) R`.
/// This holds iff the degree vanishes; then `t_p = zeta_p / (2 log p)` and
/// the archimedean entry is forced.
pub fn principalize_spec_q(z: &SpecKDivisor) -> Principality {
    let deg = speck_degree(z);
    if !deg.is_zero() {
        return Principality::NotPrincipal { degree_value: deg.to_f64(), degree: deg };
    }
    let half = Q::new(1.into(), 2.into());
    let mut exponents = BTreeMap::new();
    for (v, x) in &z.entries {
        let Place::Finite(p) = *v else { continue };
        let e = match x.as_log_multiple(p) {
            Some(c) => Exponent::Exact(format_rational(&(c * &half))),
            None => Exponent::Real(x.to_f64() / (2.0 * (p as f64).ln())),
        };
        exponents.insert(p.to_string(), e);
    }
    Principality::Principal { exponents }
}
