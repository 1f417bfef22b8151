//! JSON specifications of maps, divisors, sections, section families and
//! Spec Q divisors; 17-significant-digit JSON output, map hashes and atomic
//! file writes.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::canonical::{LogReal, SpecKDivisor};
use crate::error::{Error, Result};
use crate::numberfield::{format_rational, parse_rational, Field, Place, QuadElem, QuadInt, Q};
use crate::obstruction::family::json_rational;
use crate::projline::{BinaryForm, DivisorP1, FormalProduct, RationalMap};

pub const FIELD_Q: &str = "Q";
pub const FIELD_K: &str = "Q(sqrt:29)";

/// A parsed map over one of the supported fields.
#[derive(Clone, Debug)]
pub enum AnyMap {
    Q(RationalMap<Q>),
    K(RationalMap<QuadElem>),
}

impl AnyMap {
    pub fn degree(&self) -> usize {
        match self {
            AnyMap::Q(f) => f.degree(),
            AnyMap::K(f) => f.degree(),
        }
    }

    pub fn field(&self) -> &'static str {
        match self {
            AnyMap::Q(_) => FIELD_Q,
            AnyMap::K(_) => FIELD_K,
        }
    }

    /// The map over Q, or an "unsupported" error naming the operation.
    pub fn over_q(&self, what: &str) -> Result<&RationalMap<Q>> {
        match self {
            AnyMap::Q(f) => Ok(f),
            AnyMap::K(_) => Err(Error::Unsupported(format!("{what} needs a map over Q"))),
        }
    }

    /// sha256 of the canonical text `field;F=..;G=..` of the coefficients.
    pub fn hash(&self) -> String {
        let text = match self {
            AnyMap::Q(f) => canonical_text(FIELD_Q, f, |c| format_rational(c)),
            AnyMap::K(f) => canonical_text(FIELD_K, f, |c| match QuadInt::from_quad_elem(c) {
                Some(a) => format!("[{},{}]", a.a, a.b),
                None => format!("{}+{}*sqrt({})", format_rational(c.a()), format_rational(c.b()), c.disc()),
            }),
        };
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

fn canonical_text<K: Field>(field: &str, f: &RationalMap<K>, show: impl Fn(&K) -> String) -> String {
    let join = |form: &BinaryForm<K>| form.coeffs().iter().map(&show).collect::<Vec<_>>().join(",");
    format!("{field};F={};G={}", join(f.f()), join(f.g()))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))
}

fn coeff_list<K>(v: Option<&Value>, name: &str, parse: impl Fn(&Value) -> Result<K>) -> Result<Vec<K>> {
    match v {
        Some(Value::Array(a)) if !a.is_empty() => a.iter().map(parse).collect(),
        _ => Err(Error::Invalid(format!("map spec needs a nonempty coefficient array {name:?}"))),
    }
}

fn quad_coeff(v: &Value) -> Result<QuadElem> {
    match v {
        Value::Array(_) => {
            let a: QuadInt =
                serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("bad [a, b] pair {v}: {e}")))?;
            Ok(a.to_quad_elem())
        }
        _ => Ok(QuadElem::rational(json_rational(v)?)),
    }
}

/// `{"field": "Q" | "Q(sqrt:29)", "F": [c_d, ..., c_0], "G": [...]}`;
/// rationals as "num/den" strings or numbers, elements of Z[e] as `[a, b]`
/// meaning `a + b e`.
pub fn parse_map_spec(text: &str) -> Result<AnyMap> {
    let v = parse_json(text)?;
    let field = v.get("field").and_then(Value::as_str).unwrap_or(FIELD_Q);
    match field {
        FIELD_Q => {
            let f = coeff_list(v.get("F"), "F", json_rational)?;
            let g = coeff_list(v.get("G"), "G", json_rational)?;
            Ok(AnyMap::Q(RationalMap::new(BinaryForm::new(f), BinaryForm::new(g))?))
        }
        FIELD_K | "Q(sqrt 29)" | "Q(sqrt29)" => {
            let f = coeff_list(v.get("F"), "F", quad_coeff)?;
            let g = coeff_list(v.get("G"), "G", quad_coeff)?;
            Ok(AnyMap::K(RationalMap::new(BinaryForm::new(f), BinaryForm::new(g))?))
        }
        other => Err(Error::Invalid(format!("unsupported field {other:?}"))),
    }
}

fn parse_form(v: &Value) -> Result<BinaryForm<Q>> {
    let c = coeff_list(Some(v), "form", json_rational)?;
    let form = BinaryForm::new(c);
    if form.is_zero() || form.degree() == 0 {
        return Err(Error::Invalid("divisor forms must have positive degree".into()));
    }
    Ok(form)
}

fn real(v: &Value, what: &str) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Invalid(format!("bad {what}"))),
        Value::String(s) => Ok(crate::numberfield::rational_to_f64(&parse_rational(s)?)),
        _ => Err(Error::Invalid(format!("{what} must be a number"))),
    }
}

/// Add `w * (form)` to `d`, splitting the form into irreducible factors.
fn add_factored(d: &mut DivisorP1<Q>, form: &BinaryForm<Q>, w: f64) {
    let (_, pieces) = form.factor();
    for (p, m) in pieces {
        d.add_term(p, w * m as f64);
    }
}

/// `{"terms": [{"form": [a, b], "weight": w}, ...]}` with `[a, b]` meaning
/// `a x + b z`, or longer x-major coefficient lists. Reducible forms are
/// split into their irreducible factors.
pub fn divisor_from_json(v: &Value) -> Result<DivisorP1<Q>> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("divisor spec needs a \"terms\" array".into()))?;
    let mut d = DivisorP1::zero();
    for t in terms {
        let form = parse_form(t.get("form").ok_or_else(|| Error::Invalid("term without \"form\"".into()))?)?;
        let w = real(t.get("weight").ok_or_else(|| Error::Invalid("term without \"weight\"".into()))?, "weight")?;
        add_factored(&mut d, &form, w);
    }
    Ok(d)
}

pub fn parse_divisor_spec(text: &str) -> Result<DivisorP1<Q>> {
    divisor_from_json(&parse_json(text)?)
}

/// `{"divisor": {...} (default (infinity)), "scalar": "1", "factors":
/// [{"form": [...], "exponent": e}, ...]}`.
pub fn parse_section_spec(text: &str) -> Result<(FormalProduct<Q>, DivisorP1<Q>)> {
    let v = parse_json(text)?;
    let divisor = match v.get("divisor") {
        Some(d) => divisor_from_json(d)?,
        None => DivisorP1::infinity(),
    };
    let mut scalar = match v.get("scalar") {
        Some(s) => json_rational(s)?,
        None => Q::from_integer(1.into()),
    };
    if num_traits::Zero::is_zero(&scalar) {
        return Err(Error::Invalid("section scalar must be nonzero".into()));
    }
    let factors = v
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("section spec needs a \"factors\" array".into()))?;
    let mut split = DivisorP1::zero();
    for t in factors {
        let form = parse_form(t.get("form").ok_or_else(|| Error::Invalid("factor without \"form\"".into()))?)?;
        let e = real(t.get("exponent").ok_or_else(|| Error::Invalid("factor without \"exponent\"".into()))?, "exponent")?;
        // the content of a non-normalized form moves into the scalar
        let (c, _) = form.factor();
        if !num_traits::One::is_one(&c) {
            if e.fract() != 0.0 {
                return Err(Error::Invalid("forms raised to non-integer exponents must be normalized".into()));
            }
            let ce = num_traits::pow::Pow::pow(&c, e as i32);
            scalar = scalar * ce;
        }
        add_factored(&mut split, &form, e);
    }
    Ok((FormalProduct { scalar, factors: split.terms().to_vec() }, divisor))
}

/// `{"entries": [{"place": "inf" | p, "value": x}]}` with values as JSON
/// numbers (read as exact decimals) or exact strings like `"2*log(2)"`.
pub fn parse_zeta_spec(text: &str) -> Result<SpecKDivisor> {
    let v = parse_json(text)?;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("zeta spec needs an \"entries\" array".into()))?;
    let mut z = SpecKDivisor::zero();
    for e in entries {
        let place: Place = match e.get("place") {
            Some(Value::String(s)) => s.parse()?,
            Some(Value::Number(n)) => n.to_string().parse()?,
            _ => return Err(Error::Invalid("entry without a place".into())),
        };
        let value = match e.get("value") {
            Some(Value::Number(n)) => parse_rational(&n.to_string()).map(LogReal::rational)?,
            Some(Value::String(s)) => s.parse()?,
            _ => return Err(Error::Invalid("entry without a value".into())),
        };
        z.add_entry(place, value)?;
    }
    Ok(z)
}

/// JSON formatter printing every float with 17 significant digits.
pub struct Sig17 {
    inner: PrettyFormatter<'static>,
}

impl Default for Sig17 {
    fn default() -> Self {
        Sig17 { inner: PrettyFormatter::new() }
    }
}

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value == value.trunc() && value.abs() < 1e15 {
            // keep integral values readable but still floating
            write!(w, "{value:.1}")
        } else {
            write!(w, "{value:.16e}")
        }
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Pretty JSON with 17-significant-digit floats and a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17::default());
    v.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("JSON is UTF-8"))
}

/// Write via a temporary file in the target directory and rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_specs() {
        let m = parse_map_spec(r#"{"field":"Q","F":["1","0","0"],"G":["0","0","1"]}"#).unwrap();
        assert_eq!(m.degree(), 2);
        assert_eq!(m.hash(), parse_map_spec(r#"{"F":[1,0,0],"G":["0","0/5","1"]}"#).unwrap().hash());
        assert!(matches!(parse_map_spec(r#"{"F":["1","0"],"G":["2","0"]}"#), Err(Error::DegenerateMap)));
        assert!(matches!(parse_map_spec("{"), Err(Error::Invalid(_))));
        let tate = r#"{"field":"Q(sqrt:29)","F":[[1,0],[0,0],[-1,-5],[-52,-270],[0,0]],"G":[[0,0],[4,0],[1,0],[2,10],[26,135]]}"#;
        match parse_map_spec(tate).unwrap() {
            AnyMap::K(f) => {
                assert_eq!(f.degree(), 4);
                assert!(QuadInt::from_quad_elem(f.resultant()).unwrap().is_unit());
            }
            AnyMap::Q(_) => panic!("expected a map over the quadratic field"),
        }
    }

    #[test]
    fn divisor_and_section_specs() {
        let d = parse_divisor_spec(r#"{"terms":[{"form":[0,1],"weight":1},{"form":[1,0,-1],"weight":0.5}]}"#).unwrap();
        assert_eq!(d.terms().len(), 3);
        assert!((d.degree() - 2.0).abs() < 1e-15);
        let (s, d) = parse_section_spec(r#"{"factors":[{"form":[1,0],"exponent":1},{"form":[0,1],"exponent":-1}]}"#).unwrap();
        assert_eq!(s.degree(), 0.0);
        assert_eq!(d, DivisorP1::infinity());
    }

    #[test]
    fn sig17_numbers() {
        let s = to_json(&serde_json::json!({"a": std::f64::consts::LN_2, "b": 2.0, "c": f64::NAN})).unwrap();
        assert!(s.contains("6.9314718055994529e-1"), "{s}");
        assert!(s.contains("\"b\": 2.0"));
        assert!(s.contains("\"c\": null"));
    }
}
