//! Menger sponge and Sierpiński carpet sequences at finite and grossone
//! iteration indices.
//!
//! Iteration `n = 1` is the unpartitioned unit cube. Starting the process at
//! level `k`, the exponent of every sequence is `e = n + k - 2`:
//! counts `20^e` (carpet `8^e`), sides `3^(-e)`, volume `(20/27)^e` and
//! carpet area `(8/9)^e`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grossone::{GrossLinear, GrossValue};
use crate::hp::{self, Fixed};
use crate::rational::{int, pow_int, ratio, BigRational};

/// A finite iteration count `n >= 1` or the infinite index `① - m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IterationIndex {
    Finite(u64),
    GrossOffset(u64),
}

impl IterationIndex {
    pub fn as_linear(&self) -> GrossLinear {
        match *self {
            IterationIndex::Finite(n) => GrossLinear::finite(int(n as i64)),
            IterationIndex::GrossOffset(m) => GrossLinear::grossone_plus(-(m as i64)),
        }
    }

    /// The index with ① replaced by `t`: `t - m` for gross indices.
    pub fn instantiate(&self, t: u64) -> Option<u64> {
        match *self {
            IterationIndex::Finite(n) => Some(n),
            IterationIndex::GrossOffset(m) => t.checked_sub(m),
        }
    }

    /// The next index, `n + 1`.
    pub fn succ(&self) -> Option<Self> {
        match *self {
            IterationIndex::Finite(n) => Some(IterationIndex::Finite(n + 1)),
            IterationIndex::GrossOffset(0) => None,
            IterationIndex::GrossOffset(m) => Some(IterationIndex::GrossOffset(m - 1)),
        }
    }
}

impl fmt::Display for IterationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IterationIndex::Finite(n) => write!(f, "{n}"),
            IterationIndex::GrossOffset(0) => f.write_str("g"),
            IterationIndex::GrossOffset(m) => write!(f, "g-{m}"),
        }
    }
}

impl FromStr for IterationIndex {
    type Err = Error;

    /// Accepts `N`, `g`, `①`, `g-M`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || {
            Error::Data(format!(
                "invalid iteration index {s:?}; expected N, g or g-M"
            ))
        };
        let rest = s.strip_prefix('g').or_else(|| s.strip_prefix('①'));
        match rest {
            Some("") => Ok(IterationIndex::GrossOffset(0)),
            Some(r) => {
                let m = r.trim().strip_prefix('-').ok_or_else(bad)?;
                m.trim()
                    .parse()
                    .map(IterationIndex::GrossOffset)
                    .map_err(|_| bad())
            }
            None => match s.parse::<u64>() {
                Ok(n) if n >= 1 => Ok(IterationIndex::Finite(n)),
                _ => Err(bad()),
            },
        }
    }
}

impl Serialize for IterationIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Starting level `k` and iteration index `n`, with `1 <= k <= n <= ① + k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpongeQuery {
    k: u64,
    n: IterationIndex,
}

impl SpongeQuery {
    pub fn new(k: u64, n: IterationIndex) -> Result<Self> {
        if k < 1 {
            return Err(Error::domain("starting level k must be at least 1"));
        }
        match n {
            IterationIndex::Finite(n) if n < k => Err(Error::domain(format!(
                "iteration n = {n} is below the starting level k = {k}"
            ))),
            IterationIndex::Finite(0) => Err(Error::domain("iteration n must be at least 1")),
            _ => Ok(SpongeQuery { k, n }),
        }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> IterationIndex {
        self.n
    }

    /// `n + k - 2`.
    pub fn exponent(&self) -> GrossLinear {
        self.n.as_linear().add_int(self.k as i64 - 2)
    }

    /// The same query one iteration further.
    pub fn succ(&self) -> Option<Self> {
        self.n.succ().map(|n| SpongeQuery { k: self.k, n })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpongeGeometry {
    pub count: GrossValue,
    pub side: GrossValue,
    pub volume: GrossValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarpetGeometry {
    pub count: GrossValue,
    pub side: GrossValue,
    pub area: GrossValue,
}

fn power(base: BigRational, e: &GrossLinear) -> GrossValue {
    GrossValue::power_of(base, e.clone()).expect("positive integer-offset exponent")
}

/// Count `20^e`, side `3^(-e)` and volume `(20/27)^e`.
pub fn menger_geometry(q: &SpongeQuery) -> SpongeGeometry {
    let e = q.exponent();
    SpongeGeometry {
        count: power(int(20), &e),
        side: power(int(3), &-e.clone()),
        volume: power(ratio(20, 27), &e),
    }
}

pub fn carpet_geometry(q: &SpongeQuery) -> CarpetGeometry {
    let e = q.exponent();
    CarpetGeometry {
        count: power(int(8), &e),
        side: power(int(3), &-e.clone()),
        area: power(ratio(8, 9), &e),
    }
}

/// Carpet area `(8/9)^(n+k-2)`.
pub fn carpet_area(q: &SpongeQuery) -> GrossValue {
    carpet_geometry(q).area
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Fractal {
    Sponge,
    Carpet,
}

impl Fractal {
    /// Pieces kept per subdivision (the side is always divided by 3).
    pub fn retained(&self) -> i64 {
        match self {
            Fractal::Sponge => 20,
            Fractal::Carpet => 8,
        }
    }
}

/// `ln(retained) / ln 3` as a fixed-point value with `bits` fractional bits.
pub fn fractal_dimension_fixed(object: Fractal, bits: u32) -> Fixed {
    let w = bits + 16;
    let num = Fixed::ln_rational(&int(object.retained()), w).expect("positive");
    let den = Fixed::ln_rational(&int(3), w).expect("positive");
    num.div(&den).expect("ln 3 is nonzero").with_bits(bits)
}

/// Fractal dimension correctly rounded to `places` decimal places.
pub fn fractal_dimension(object: Fractal, places: u32) -> Result<String> {
    if places < 1 {
        return Err(Error::domain("precision must be at least one digit"));
    }
    hp::round_stable(places, 64, |bits| Ok(fractal_dimension_fixed(object, bits)))
}

/// The finite-iteration estimate `-ln N_n / ln L_n` with `N_n = 20^n`,
/// `L_n = 3^(-n)` (carpet: `8^n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionEstimate {
    pub n: u64,
    #[serde(serialize_with = "serialize_display")]
    pub count: BigUint,
    pub side: String,
    pub value: String,
}

fn serialize_display<S: serde::Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn dimension_estimate_at(object: Fractal, n: u64, places: u32) -> Result<DimensionEstimate> {
    if n < 1 {
        return Err(Error::domain("iteration n must be at least 1"));
    }
    let e = i64::try_from(n).map_err(|_| Error::domain("iteration too large"))?;
    let count = pow_int(&int(object.retained()), e)?;
    let side = pow_int(&ratio(1, 3), e)?;
    let value = hp::round_stable(places, 64, |bits| {
        let w = bits + 16;
        let ln_n = Fixed::ln_rational(&count, w)?;
        let ln_l = Fixed::ln_rational(&side, w)?;
        Ok(ln_n.neg().div(&ln_l)?.with_bits(bits))
    })?;
    Ok(DimensionEstimate {
        n,
        count: count.numer().magnitude().clone(),
        side: crate::rational::fmt_rational(&side),
        value,
    })
}
