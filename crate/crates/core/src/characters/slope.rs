use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Monomial;
use crate::{Error, Result};

use super::character::{T1, T2, T3};

/// A one-parameter subgroup `z ↦ (z^r1, z^r2, z^r3)` of the Calabi–Yau torus,
/// either explicit or a preferred regime `|r_i| ≫ |r_k| > 0` with `r_j ≈ -r_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlopeRegime {
    Explicit([i64; 3]),
    Preferred { primary: usize, primary_sign: i8, tertiary: usize, tertiary_sign: i8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attraction {
    Attracting,
    Repelling,
    Fixed,
}

impl SlopeRegime {
    pub fn explicit(r: [i64; 3]) -> Result<Self> {
        if r.iter().sum::<i64>() != 0 {
            return Err(Error::Domain(format!("slope {:?} does not sum to zero", r)));
        }
        Ok(SlopeRegime::Explicit(r))
    }

    /// Axes are 0-based here. The regime with primary `(i, -)` is the one with
    /// primary `(j, +)` on the remaining axis `j`, so the sign is normalized to `+`.
    pub fn preferred(primary: usize, primary_sign: i8, tertiary: usize, tertiary_sign: i8) -> Result<Self> {
        if primary > 2 || tertiary > 2 || primary == tertiary {
            return Err(Error::Domain(String::from("preferred regime needs two distinct axes")));
        }
        if primary_sign.abs() != 1 || tertiary_sign.abs() != 1 {
            return Err(Error::Domain(String::from("signs must be ±1")));
        }
        if primary_sign < 0 {
            let j = 3 - primary - tertiary;
            return Ok(SlopeRegime::Preferred { primary: j, primary_sign: 1, tertiary, tertiary_sign });
        }
        Ok(SlopeRegime::Preferred { primary, primary_sign, tertiary, tertiary_sign })
    }

    /// The remaining axis of a preferred regime.
    pub fn secondary(&self) -> Option<usize> {
        match *self {
            SlopeRegime::Preferred { primary, tertiary, .. } => Some(3 - primary - tertiary),
            _ => None,
        }
    }

    /// Grade of a weight, compared lexicographically; zero means fixed.
    pub fn grade(&self, m: &Monomial) -> (i64, i64) {
        let e = [m.get(T1) as i64, m.get(T2) as i64, m.get(T3) as i64];
        match *self {
            SlopeRegime::Explicit(r) => (r[0] * e[0] + r[1] * e[1] + r[2] * e[2], 0),
            SlopeRegime::Preferred { primary, primary_sign, tertiary, tertiary_sign } => {
                let j = 3 - primary - tertiary;
                (primary_sign as i64 * (e[primary] - e[j]), tertiary_sign as i64 * (e[tertiary] - e[j]))
            }
        }
    }

    pub fn sign(&self, m: &Monomial) -> Attraction {
        match self.grade(m).cmp(&(0, 0)) {
            core::cmp::Ordering::Greater => Attraction::Attracting,
            core::cmp::Ordering::Less => Attraction::Repelling,
            core::cmp::Ordering::Equal => Attraction::Fixed,
        }
    }

    pub fn negate(&self) -> Self {
        match *self {
            SlopeRegime::Explicit(r) => SlopeRegime::Explicit([-r[0], -r[1], -r[2]]),
            SlopeRegime::Preferred { primary, primary_sign, tertiary, tertiary_sign } => {
                Self::preferred(primary, -primary_sign, tertiary, -tertiary_sign).expect("valid regime")
            }
        }
    }

    /// Relabels axes: axis `a` becomes `perm[a]`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        match *self {
            SlopeRegime::Explicit(r) => {
                let mut out = [0; 3];
                for a in 0..3 {
                    out[perm[a]] = r[a];
                }
                SlopeRegime::Explicit(out)
            }
            SlopeRegime::Preferred { primary, primary_sign, tertiary, tertiary_sign } => SlopeRegime::Preferred {
                primary: perm[primary],
                primary_sign,
                tertiary: perm[tertiary],
                tertiary_sign,
            },
        }
    }

    /// Accepts `1,1,-2`, or chains like `r1>>r2>0>>r3` and `r1>>0>r3>>r2`
    /// (`≫` may replace `>>`). A leading `-` negates a chain.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('-') {
            if rest.starts_with('r') {
                return Ok(Self::parse(rest)?.negate());
            }
        }
        if !s.contains('r') {
            let v: Vec<i64> = s
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<core::result::Result<_, _>>()
                .map_err(|_| Error::Domain(format!("bad slope {:?}", s)))?;
            if v.len() != 3 {
                return Err(Error::Domain(format!("slope needs three entries: {:?}", s)));
            }
            return Self::explicit([v[0], v[1], v[2]]);
        }
        let norm = s.replace('≫', ">>").replace(' ', "");
        let bad = || Error::Domain(format!("cannot parse regime {:?}", s));
        let axis = |t: &str| -> Result<usize> {
            match t {
                "r1" => Ok(0),
                "r2" => Ok(1),
                "r3" => Ok(2),
                _ => Err(bad()),
            }
        };
        let parts: Vec<&str> = norm.split(">>").collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let a = axis(parts[0])?;
        let c = axis(parts[2])?;
        let mid: Vec<&str> = parts[1].split('>').collect();
        if mid.len() != 2 {
            return Err(bad());
        }
        let (b, bsign) = match (mid[0], mid[1]) {
            (x, "0") => (axis(x)?, 1),
            ("0", x) => (axis(x)?, -1),
            _ => return Err(bad()),
        };
        if a == b || b == c || a == c {
            return Err(bad());
        }
        Self::preferred(a, 1, b, bsign)
    }
}

impl fmt::Display for SlopeRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SlopeRegime::Explicit(r) => write!(f, "{},{},{}", r[0], r[1], r[2]),
            SlopeRegime::Preferred { primary, tertiary, tertiary_sign, .. } => {
                // constructors keep the primary sign positive
                let j = 3 - primary - tertiary;
                if tertiary_sign > 0 {
                    write!(f, "r{}>>r{}>0>>r{}", primary + 1, tertiary + 1, j + 1)
                } else {
                    write!(f, "r{}>>0>r{}>>r{}", primary + 1, tertiary + 1, j + 1)
                }
            }
        }
    }
}
