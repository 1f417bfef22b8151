use std::collections::HashMap;

use serde::Serialize;

use crate::numberfield::{Field, Q};

use super::map::RationalMap;
use super::point::{AlgPoint, ProjPoint};

/// Default cap on the bit size of exact orbit points.
pub const DEFAULT_BIT_CAP: u64 = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OrbitVerdict {
    /// `f^tail(x)` lies on a cycle of exact length `period`.
    Preperiodic { tail: usize, period: usize },
    /// No repetition seen within `steps` iterations; not a negative certificate.
    Open { steps: usize },
}

impl OrbitVerdict {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self, OrbitVerdict::Preperiodic { .. })
    }
}

/// Exact cycle detection by hashing normalized orbit points.
pub fn is_preperiodic_exact<K: Field>(
    f: &RationalMap<K>,
    x: &ProjPoint<K>,
    max_steps: usize,
) -> OrbitVerdict {
    is_preperiodic_capped(f, x, max_steps, DEFAULT_BIT_CAP)
}

/// As [`is_preperiodic_exact`], giving up ("open") once orbit points exceed
/// `bit_cap` bits.
pub fn is_preperiodic_capped<K: Field>(
    f: &RationalMap<K>,
    x: &ProjPoint<K>,
    max_steps: usize,
    bit_cap: u64,
) -> OrbitVerdict {
    let mut seen: HashMap<ProjPoint<K>, usize> = HashMap::new();
    let mut cur = x.clone();
    for step in 0..=max_steps {
        if let Some(&first) = seen.get(&cur) {
            return OrbitVerdict::Preperiodic { tail: first, period: step - first };
        }
        if step == max_steps || cur.size_bits() > bit_cap {
            return OrbitVerdict::Open { steps: step };
        }
        seen.insert(cur.clone(), step);
        cur = f.evaluate(&cur);
    }
    OrbitVerdict::Open { steps: max_steps }
}

/// Cycle detection for points of degree at most 2 over Q; quadratic points
/// are followed exactly inside their quadratic field.
pub fn is_preperiodic_alg(f: &RationalMap<Q>, x: &AlgPoint, max_steps: usize) -> OrbitVerdict {
    match x {
        AlgPoint::Rational(p) => is_preperiodic_exact(f, p, max_steps),
        AlgPoint::Quadratic(q) => match q.to_field_point() {
            Ok(p) => is_preperiodic_exact(&f.to_quadratic(), &p, max_steps),
            Err(_) => OrbitVerdict::Open { steps: 0 },
        },
    }
}
