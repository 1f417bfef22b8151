use std::fs;
use std::path::Path;

use canheight::canonical::{
    canonical_height_k, good_reduction_places, bad_rational_primes_quad, integral_lift, principalize_spec_q,
    speck_degree, Depth, HeightContext, HeightValue,
};
use canheight::dynsets::{
    backward_orbit_sample, equidistribution_discrepancy, preperiodic_search, torsion_x_points, EllipticCurveAB,
    PointCloud, Reference,
};
use canheight::formats::{self, AnyMap};
use canheight::numberfield::{parse_rational, Place, QuadElem, QuadInt, Q};
use canheight::obstruction::family::{default_family, FamilySpec};
use canheight::obstruction::{self, SectionCandidate};
use canheight::projline::{sylvester_resultant, AlgPoint, BinaryForm, ProjPoint, QuadraticPoint};
use canheight::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Cli, Command, SpeckOp};

const HEIGHT_TOL: f64 = 1e-10;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    seed: u64,
    tol: Option<f64>,
    map_hash: Option<String>,
    result: T,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<AnyMap> {
    formats::parse_map_spec(&read(path)?)
}

fn load_cloud(path: &Path) -> Result<PointCloud> {
    PointCloud::from_csv("inf", &read(path)?)
}

fn positive(tol: f64) -> Result<f64> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Error::Invalid(format!("tolerance must be positive, got {tol}")))
    }
}

/// Points over Q: a rational, "inf", "a:b", or "quad:c2,c1,c0[,+|-]".
fn parse_q_point(s: &str) -> Result<AlgPoint> {
    if let Some(rest) = s.trim().strip_prefix("quad:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(Error::Invalid(format!("expected quad:c2,c1,c0[,sign], got {s:?}")));
        }
        let int = |t: &str| t.parse::<BigInt>().map_err(|_| Error::Invalid(format!("bad integer {t:?}")));
        let selector = match parts.get(3).copied() {
            None | Some("+") | Some("+1") | Some("1") => 1,
            Some("-") | Some("-1") => -1,
            Some(other) => return Err(Error::Invalid(format!("bad root selector {other:?}"))),
        };
        return Ok(QuadraticPoint::new(int(parts[0])?, int(parts[1])?, int(parts[2])?, selector)?.into());
    }
    Ok(ProjPoint::parse(s)?.into())
}

/// Points over Q(sqrt 29): "inf", a rational, or "[a,b]" for a + b e.
fn parse_k_point(s: &str) -> Result<ProjPoint<QuadElem>> {
    let t = s.trim();
    if t.starts_with('[') {
        let a: QuadInt = serde_json::from_str(t).map_err(|e| Error::Invalid(format!("bad [a, b] point {t:?}: {e}")))?;
        return Ok(ProjPoint::affine(a.to_quad_elem()));
    }
    Ok(ProjPoint::parse(t)?.map_field(|c| QuadElem::rational(c.clone())))
}

/// "inf", or anything `Complex64` parses ("2", "-1.5+0.25i").
fn parse_complex_point(s: &str) -> Result<Option<Complex64>> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(None);
    }
    t.parse::<Complex64>().map(Some).map_err(|_| Error::Invalid(format!("bad complex point {t:?}")))
}

fn height_of(map: &AnyMap, point: &str, tol: f64, depth: Option<usize>) -> Result<HeightValue> {
    match map {
        AnyMap::Q(f) => {
            let x = parse_q_point(point)?;
            let depth = match depth {
                Some(n) => Depth::Fixed(n),
                None => Depth::Tolerance(tol),
            };
            HeightContext::new(f, depth)?.height(&x)
        }
        AnyMap::K(f) => {
            if depth.is_some() {
                return Err(Error::Unsupported("--depth with a map over Q(sqrt 29)".into()));
            }
            canonical_height_k(f, &parse_k_point(point)?, tol)
        }
    }
}

fn resultant_report(map: &AnyMap) -> Result<Value> {
    Ok(match map {
        AnyMap::Q(f) => {
            let (_, fi, gi) = integral_lift(f);
            let to_q = |v: &[BigInt]| BinaryForm::new(v.iter().map(|c| Q::from_integer(c.clone())).collect());
            let r = sylvester_resultant(&to_q(&fi), &to_q(&gi))?;
            let unit = r.abs() == Q::from_integer(1.into());
            json!({
                "resultant": formats_rational(&r),
                "unit": unit,
                "norm": formats_rational(&r),
                "bad_primes": good_reduction_places(f)?,
            })
        }
        AnyMap::K(f) => {
            let r = f.resultant();
            let norm = r.norm();
            let exact = QuadInt::from_quad_elem(r).map(|a| json!([a.a.to_string(), a.b.to_string()]));
            let unit = QuadInt::from_quad_elem(r).map_or(false, |a| a.is_unit());
            json!({
                "resultant": exact.unwrap_or_else(|| Value::String(r.to_string())),
                "unit": unit,
                "norm": formats_rational(&norm),
                "bad_primes": bad_rational_primes_quad(f)?,
            })
        }
    })
}

fn formats_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        canheight::numberfield::format_rational(q)
    }
}

struct Output<'a> {
    cli: &'a Cli,
    command: &'a str,
}

impl Output<'_> {
    /// Emit the JSON envelope: to `json_path` when given, and on stdout
    /// when no file is written or `--json` asks for it.
    fn emit<T: Serialize>(&self, tol: Option<f64>, map: Option<&AnyMap>, result: T, json_path: Option<&Path>) -> Result<()> {
        let env = Envelope { command: self.command, seed: self.cli.seed, tol, map_hash: map.map(AnyMap::hash), result };
        let text = formats::to_json(&env)?;
        if let Some(p) = json_path {
            formats::write_atomic(p, text.as_bytes())?;
        }
        if json_path.is_none() || self.cli.json {
            print!("{text}");
        }
        Ok(())
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let name = match &cli.command {
        Command::Height { .. } => "height",
        Command::LocalHeights { .. } => "local-heights",
        Command::Preperiodic { .. } => "preperiodic",
        Command::Julia { .. } => "julia",
        Command::Equidist { .. } => "equidist",
        Command::CheckObstruction { .. } => "check-obstruction",
        Command::Sweep { .. } => "sweep",
        Command::Resultant { .. } => "resultant",
        Command::Speck { op: SpeckOp::Degree { .. } } => "speck degree",
        Command::Speck { op: SpeckOp::Principalize { .. } } => "speck principalize",
        Command::Torsion { .. } => "torsion",
    };
    let out = Output { cli, command: name };
    let out_path = cli.out.as_deref();
    match &cli.command {
        Command::Height { map, point, depth } => {
            let m = load_map(&map.map)?;
            let tol = positive(cli.tol.unwrap_or(HEIGHT_TOL))?;
            let h = height_of(&m, point, tol, *depth)?;
            let result = json!({
                "point": point,
                "value": h.value,
                "error": h.error,
                "locals": h.locals,
            });
            out.emit(Some(tol), Some(&m), result, out_path)
        }
        Command::LocalHeights { map, point, depth } => {
            let m = load_map(&map.map)?;
            let tol = positive(cli.tol.unwrap_or(HEIGHT_TOL))?;
            let h = height_of(&m, point, tol, *depth)?;
            out.emit(Some(tol), Some(&m), h, out_path)
        }
        Command::Preperiodic { map, bound, eps } => {
            let m = load_map(&map.map)?;
            let f = m.over_q("preperiodic")?;
            let pts = preperiodic_search(f, *bound, *eps)?;
            let result = json!({ "bound": bound, "eps": eps, "count": pts.len(), "points": pts });
            out.emit(cli.tol, Some(&m), result, out_path)
        }
        Command::Julia { map, depth, per_node, start, ppm, res } => {
            let m = load_map(&map.map)?;
            let complex = match &m {
                AnyMap::Q(f) => f.embedded(0),
                AnyMap::K(f) => f.embedded(0),
            };
            let seed_point = parse_complex_point(start)?;
            let cloud = backward_orbit_sample(&complex, seed_point, *depth, *per_node, cli.seed)?;
            if let Some(p) = out_path {
                formats::write_atomic(p, cloud.to_csv().as_bytes())?;
            }
            if let Some(p) = ppm {
                formats::write_atomic(p, &cloud.to_ppm(*res))?;
            }
            let result = json!({
                "start": start,
                "depth": depth,
                "per_node": per_node,
                "points": cloud.len(),
                "csv": out_path.map(|p| p.display().to_string()),
                "ppm": ppm.as_ref().map(|p| p.display().to_string()),
            });
            out.emit(cli.tol, Some(&m), result, None)
        }
        Command::Equidist { cloud, reference, bins } => {
            let c = load_cloud(cloud)?;
            let reference: Reference = reference.parse()?;
            let d = equidistribution_discrepancy(&c, reference, *bins)?;
            out.emit(cli.tol, None, d, out_path)
        }
        Command::CheckObstruction { map, section, cloud } => {
            let m = load_map(&map.map)?;
            let f = m.over_q("check-obstruction")?;
            let text = read(section)?;
            let (s, divisor) = formats::parse_section_spec(&text)?;
            let label = serde_json::from_str::<Value>(&text)
                .ok()
                .and_then(|v| v.get("name").and_then(Value::as_str).map(str::to_owned))
                .unwrap_or_else(|| "section".to_owned());
            let cand = SectionCandidate::new(label, s, divisor)?;
            let tol = positive(cli.tol.unwrap_or(obstruction::DEFAULT_TOL))?;
            let report = obstruction::check_lemma_nondense(f, &cand, &load_cloud(cloud)?, Place::INF, tol)?;
            out.emit(Some(tol), Some(&m), report, out_path)
        }
        Command::Sweep { map, family, cloud } => {
            let m = load_map(&map.map)?;
            let f = m.over_q("sweep")?;
            let fam = match family {
                Some(p) => {
                    let v: Value = serde_json::from_str(&read(p)?)
                        .map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))?;
                    FamilySpec::from_json(&v)?
                }
                None => default_family(),
            };
            let tol = positive(cli.tol.unwrap_or(obstruction::DEFAULT_TOL))?;
            let summary = obstruction::counterexample_sweep(f, &fam, &load_cloud(cloud)?, Place::INF, tol)?;
            out.emit(Some(tol), Some(&m), summary, out_path)
        }
        Command::Resultant { map } => {
            let m = load_map(&map.map)?;
            let result = resultant_report(&m)?;
            out.emit(cli.tol, Some(&m), result, out_path)
        }
        Command::Speck { op } => match op {
            SpeckOp::Degree { input } => {
                let z = formats::parse_zeta_spec(&read(input)?)?;
                let deg = speck_degree(&z);
                let result = json!({ "degree": deg, "value": deg.to_f64() });
                out.emit(cli.tol, None, result, out_path)
            }
            SpeckOp::Principalize { input } => {
                let z = formats::parse_zeta_spec(&read(input)?)?;
                out.emit(cli.tol, None, principalize_spec_q(&z), out_path)
            }
        },
        Command::Torsion { a, b, n } => {
            let e = EllipticCurveAB::new(parse_rational(a)?, parse_rational(b)?)?;
            let cloud = torsion_x_points(&e, *n)?;
            if let Some(p) = out_path {
                formats::write_atomic(p, cloud.to_csv().as_bytes())?;
            }
            let result = json!({
                "a": a,
                "b": b,
                "n_max": n,
                "points": cloud.len(),
                "csv": out_path.map(|p| p.display().to_string()),
            });
            out.emit(cli.tol, None, result, None)
        }
    }
}
