use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A place of the base field: a complex embedding (by index) or a finite prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Place {
    Infinite(usize),
    Finite(u64),
}

impl Place {
    pub const INF: Place = Place::Infinite(0);

    pub fn finite(p: u64) -> Result<Place> {
        if !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Place::Finite(p))
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Infinite(_))
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Finite(p) => Some(*p),
            Place::Infinite(_) => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite(0) => write!(f, "inf"),
            Place::Infinite(k) => write!(f, "inf{k}"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("inf") {
            if rest.is_empty() {
                return Ok(Place::Infinite(0));
            }
            return rest
                .parse()
                .map(Place::Infinite)
                .map_err(|_| Error::Invalid(format!("bad place {s:?}")));
        }
        let p: u64 = s.parse().map_err(|_| Error::Invalid(format!("bad place {s:?}")))?;
        Place::finite(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["inf", "inf1", "2", "29"] {
            assert_eq!(s.parse::<Place>().unwrap().to_string(), s);
        }
        assert_eq!("4".parse::<Place>(), Err(Error::NotPrime(4)));
    }
}
