use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{GrossValue, PrimeFactor};
use crate::rational::{lcm_denominators, BigRational};

/// Magnitude class of a gross-number, determined by its dominant term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NumClass {
    ExponentiallyInfinite,
    PolynomiallyInfinite,
    Finite,
    PolynomiallyInfinitesimal,
    ExponentiallyInfinitesimal,
    Zero,
}

impl std::fmt::Display for NumClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// Compares growth keys `Π p^rate` of two factor lists exactly.
///
/// The rate differences are scaled by the least common denominator `D`, so
/// the comparison reduces to two integers `Π p^(c·D)`.
pub(crate) fn growth_cmp(x: &[PrimeFactor], y: &[PrimeFactor]) -> Ordering {
    let mut diff: Vec<(u64, BigRational)> = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        match (x.get(i), y.get(j)) {
            (Some(a), Some(b)) if a.prime == b.prime => {
                diff.push((a.prime, &a.rate - &b.rate));
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a.prime < b.prime => {
                diff.push((a.prime, a.rate.clone()));
                i += 1;
            }
            (Some(a), None) => {
                diff.push((a.prime, a.rate.clone()));
                i += 1;
            }
            (_, Some(b)) => {
                diff.push((b.prime, -&b.rate));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    diff.retain(|(_, c)| !c.is_zero());
    if diff.is_empty() {
        return Ordering::Equal;
    }

    // Cheap decision when the log-magnitude is far from zero.
    let (est, scale) = diff.iter().fold((0.0f64, 0.0f64), |(s, m), (p, c)| {
        let t = c.to_f64().unwrap_or(f64::NAN) * (*p as f64).ln();
        (s + t, m + t.abs())
    });
    if est.is_finite() && est.abs() > 1e-9 * (1.0 + scale) {
        return est.partial_cmp(&0.0).unwrap();
    }

    let d = lcm_denominators(diff.iter().map(|(_, c)| c));
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (p, c) in &diff {
        let e = (c * BigRational::from_integer(d.clone())).to_integer();
        let mag = e.magnitude().to_u32().expect("growth exponent overflow");
        let pw = num_traits::pow(BigUint::from(*p), mag as usize);
        if e.is_positive() {
            num *= pw;
        } else {
            den *= pw;
        }
    }
    num.cmp(&den)
}

/// Position of a term in the magnitude order.
enum Dominant<'a> {
    Exp(&'a super::ExpTerm),
    Poly(&'a super::PolyTerm),
}

impl GrossValue {
    fn dominant(&self) -> Option<Dominant<'_>> {
        match self.exp.first() {
            Some(e) if e.is_infinite() => Some(Dominant::Exp(e)),
            _ => self
                .poly
                .first()
                .map(Dominant::Poly)
                .or_else(|| self.exp.first().map(Dominant::Exp)),
        }
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let c = match self.dominant() {
            None => return 0,
            Some(Dominant::Exp(t)) => &t.coeff,
            Some(Dominant::Poly(t)) => &t.coeff,
        };
        if c.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn classify(&self) -> NumClass {
        match self.dominant() {
            None => NumClass::Zero,
            Some(Dominant::Exp(t)) if t.is_infinite() => NumClass::ExponentiallyInfinite,
            Some(Dominant::Exp(_)) => NumClass::ExponentiallyInfinitesimal,
            Some(Dominant::Poly(t)) => match t.power.cmp(&BigRational::zero()) {
                Ordering::Greater => NumClass::PolynomiallyInfinite,
                Ordering::Equal => NumClass::Finite,
                Ordering::Less => NumClass::PolynomiallyInfinitesimal,
            },
        }
    }
}

impl Ord for GrossValue {
    /// Sign of `self - other`.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl PartialOrd for GrossValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
