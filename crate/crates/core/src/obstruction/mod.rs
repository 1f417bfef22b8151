//! Numerical certificates that canonical compactifications of ample
//! divisors lack the Dirichlet property: a section of `D` with
//! `D + div(s)` effective would need `|s|_g >= 1` on the essential support
//! of the height-zero points, so one sample with `|s|_g < 1` rejects `s`.

pub mod family;
mod slope;

pub use family::{default_family, FamilySpec};
pub use slope::{certify_slope_zero, SlopeStatus, SlopeVerdict};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{required_depth, GreenEvaluator, Section, MAX_DEPTH};
use crate::dynsets::{PointCloud, Provenance};
use crate::error::{Error, Result};
use crate::numberfield::{Place, Q};
use crate::projline::{DivisorP1, FormalProduct, RationalMap};

/// Default strictness margin for claimed violations.
pub const DEFAULT_TOL: f64 = 1e-3;

/// A named candidate section of `(infinity)`.
#[derive(Clone, Debug)]
pub struct SectionCandidate {
    pub name: String,
    pub section: Section<Q>,
}

impl SectionCandidate {
    /// Checks `D + div(s) >= 0` and `deg div(s) = 0`.
    pub fn new(name: impl Into<String>, s: FormalProduct<Q>, divisor: DivisorP1<Q>) -> Result<Self> {
        Ok(SectionCandidate { name: name.into(), section: Section::new(s, divisor)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ViolationFound,
    NoViolationAtResolution,
}

/// One evaluated sample with `margin = (1 - tol) - (value + error)`.
#[derive(Clone, Debug, Serialize)]
pub struct SampleValue {
    pub point: Option<Complex64>,
    pub provenance: Provenance,
    pub value: f64,
    pub error: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ProvenanceTally {
    pub samples: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationReport {
    pub candidate: String,
    pub place: String,
    pub tol: f64,
    pub depth: usize,
    pub verdict: Verdict,
    pub empty_sample: bool,
    pub samples: usize,
    /// Smallest `|s|_g` seen, with its error.
    pub min_value: Option<f64>,
    pub min_error: Option<f64>,
    /// Largest margin among violations (0 without violations).
    pub best_margin: f64,
    /// Violating samples only, in cloud order.
    pub violations: Vec<SampleValue>,
    /// Separate counts for certified (exact or torsion) and heuristic points.
    pub certified: ProvenanceTally,
    pub heuristic: ProvenanceTally,
}

/// Series depth that makes the evaluator error negligible against `tol`.
pub fn depth_for(f: &RationalMap<Q>, tol: f64) -> usize {
    let c = crate::canonical::per_term_bound_arch(f, 0);
    required_depth(c, f.degree(), tol * 1e-3).clamp(1, MAX_DEPTH)
}

/// Evaluate the candidate on the sample and report any point with
/// `|s|_g + error < 1 - tol`.
pub fn check_lemma_nondense(
    f: &RationalMap<Q>,
    cand: &SectionCandidate,
    sample: &PointCloud,
    v: Place,
    tol: f64,
) -> Result<ViolationReport> {
    check_at_depth(f, cand, sample, v, tol, depth_for(f, tol))
}

pub fn check_at_depth(
    f: &RationalMap<Q>,
    cand: &SectionCandidate,
    sample: &PointCloud,
    v: Place,
    tol: f64,
    depth: usize,
) -> Result<ViolationReport> {
    if !(tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    if !v.is_archimedean() {
        return Err(Error::Unsupported("violation checks run on complex samples only".into()));
    }
    let ev = GreenEvaluator::archimedean(f, 0, depth)?;
    let values: Vec<SampleValue> = sample
        .points()
        .par_iter()
        .map(|p| {
            let g = cand.section.norm_at(&ev, p.value);
            SampleValue {
                point: p.value,
                provenance: p.provenance,
                value: g.value,
                error: g.error,
                margin: (1.0 - tol) - (g.value + g.error),
            }
        })
        .collect();
    let mut certified = ProvenanceTally::default();
    let mut heuristic = ProvenanceTally::default();
    let mut violations = Vec::new();
    let mut min: Option<&SampleValue> = None;
    for s in &values {
        let tally = if s.provenance.is_certified() { &mut certified } else { &mut heuristic };
        tally.samples += 1;
        if s.margin > 0.0 {
            tally.violations += 1;
            violations.push(s.clone());
        }
        if min.map_or(true, |m| s.value < m.value) {
            min = Some(s);
        }
    }
    let best_margin = violations.iter().map(|s| s.margin).fold(0.0, f64::max);
    Ok(ViolationReport {
        candidate: cand.name.clone(),
        place: v.to_string(),
        tol,
        depth,
        verdict: if violations.is_empty() { Verdict::NoViolationAtResolution } else { Verdict::ViolationFound },
        empty_sample: sample.is_empty(),
        samples: values.len(),
        min_value: min.map(|m| m.value),
        min_error: min.map(|m| m.error),
        best_margin,
        violations,
        certified,
        heuristic,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateOutcome {
    pub candidate: String,
    pub verdict: Verdict,
    pub best_margin: f64,
    pub min_value: Option<f64>,
    pub certified_violations: usize,
    pub heuristic_violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub candidates: usize,
    pub rejected: usize,
    pub survivors: Vec<String>,
    /// Family members that are not sections (effectivity fails), with the reason.
    pub invalid: Vec<(String, String)>,
    pub outcomes: Vec<CandidateOutcome>,
}

/// Run [`check_lemma_nondense`] over a family; results keep family order.
pub fn counterexample_sweep(
    f: &RationalMap<Q>,
    family: &FamilySpec,
    sample: &PointCloud,
    v: Place,
    tol: f64,
) -> Result<SweepSummary> {
    let (cands, invalid) = family.candidates();
    let depth = depth_for(f, tol);
    let reports: Result<Vec<ViolationReport>> =
        cands.par_iter().map(|c| check_at_depth(f, c, sample, v, tol, depth)).collect();
    let reports = reports?;
    let mut survivors = Vec::new();
    let mut outcomes = Vec::new();
    for r in &reports {
        if r.verdict == Verdict::NoViolationAtResolution {
            survivors.push(r.candidate.clone());
        }
        outcomes.push(CandidateOutcome {
            candidate: r.candidate.clone(),
            verdict: r.verdict.clone(),
            best_margin: r.best_margin,
            min_value: r.min_value,
            certified_violations: r.certified.violations,
            heuristic_violations: r.heuristic.violations,
        });
    }
    Ok(SweepSummary {
        candidates: reports.len(),
        rejected: reports.len() - survivors.len(),
        survivors,
        invalid,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dynsets::{torsion_x_points, CloudPoint, EllipticCurveAB};
    use crate::projline::BinaryForm;

    fn x_over_z() -> SectionCandidate {
        let s = FormalProduct { scalar: Q::from_integer(1.into()), factors: vec![(BinaryForm::x(), 1.0), (BinaryForm::z(), -1.0)] };
        SectionCandidate::new("x", s, DivisorP1::infinity()).unwrap()
    }

    fn unit_circle(n: usize) -> PointCloud {
        PointCloud::from_points(
            "inf",
            (0..n).map(|k| CloudPoint::sample(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))).collect(),
        )
    }

    #[test]
    fn positive_control() {
        let r = check_lemma_nondense(&catalog::squaring(), &x_over_z(), &unit_circle(1000), Place::INF, DEFAULT_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::NoViolationAtResolution);
        assert!(r.min_value.unwrap() >= 1.0 - 1e-9);
        let e = check_lemma_nondense(&catalog::squaring(), &x_over_z(), &PointCloud::new("inf"), Place::INF, DEFAULT_TOL).unwrap();
        assert!(e.empty_sample && e.verdict == Verdict::NoViolationAtResolution);
    }

    #[test]
    fn lattes_rejects_default_family_and_violations_are_stable() {
        let e = EllipticCurveAB::from_i64(0, 1).unwrap();
        let f = e.lattes_map();
        let cloud = torsion_x_points(&e, 8).unwrap();
        let sweep = counterexample_sweep(&f, &default_family(), &cloud, Place::INF, DEFAULT_TOL).unwrap();
        assert!(sweep.candidates >= 10);
        assert!(sweep.survivors.is_empty(), "{:?}", sweep.survivors);
        let cand = &default_family().candidates().0[0];
        let r1 = check_at_depth(&f, cand, &cloud, Place::INF, DEFAULT_TOL, 10).unwrap();
        let r2 = check_at_depth(&f, cand, &cloud, Place::INF, DEFAULT_TOL, 20).unwrap();
        assert!(r2.best_margin >= r1.best_margin / 2.0);
        let control = counterexample_sweep(&catalog::squaring(), &default_family(), &unit_circle(500), Place::INF, DEFAULT_TOL).unwrap();
        assert!(control.survivors.iter().any(|s| s == "x - 0z"), "{:?}", control.survivors);
        let empty = counterexample_sweep(&f, &FamilySpec::default(), &cloud, Place::INF, DEFAULT_TOL).unwrap();
        assert_eq!((empty.rejected, empty.survivors.len()), (0, 0));
    }
}
