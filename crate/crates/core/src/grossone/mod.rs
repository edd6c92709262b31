//! Exact gross-numbers: finite sums of polynomial terms `c·①^p` and
//! exponential terms `c·Π pᵢ^(aᵢ·①)` over arbitrary-precision rationals.
//!
//! Every [`GrossValue`] is kept in a canonical form, so structural equality
//! coincides with numeric equality:
//!
//! * rational bases of exponential terms are rewritten over their prime
//!   factorization (`(20/27)^① = 2^(2①)·3^(-3①)·5^①`);
//! * integer finite parts of exponents are folded into the coefficient, so a
//!   stored prime factor only carries the rate of ①;
//! * like terms are merged and zero coefficients dropped.
//!
//! Exponential terms dominate every polynomial term in the ordering, which is
//! a convention adopted for the fixed infinite integer ①.

mod order;
mod render;

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, as_i64, pow_int, BigRational};

pub use order::NumClass;

/// `a·① + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrossLinear {
    pub a: BigRational,
    pub b: BigRational,
}

impl GrossLinear {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        GrossLinear { a, b }
    }

    pub fn finite(b: BigRational) -> Self {
        GrossLinear {
            a: BigRational::zero(),
            b,
        }
    }

    /// `① + offset`.
    pub fn grossone_plus(offset: i64) -> Self {
        GrossLinear {
            a: BigRational::one(),
            b: rational::int(offset),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        GrossLinear {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn add_int(&self, k: i64) -> Self {
        GrossLinear {
            a: self.a.clone(),
            b: &self.b + rational::int(k),
        }
    }

    pub fn to_value(&self) -> GrossValue {
        GrossValue::from_terms(
            [
                PolyTerm {
                    coeff: self.a.clone(),
                    power: BigRational::one(),
                },
                PolyTerm {
                    coeff: self.b.clone(),
                    power: BigRational::zero(),
                },
            ],
            [],
        )
    }
}

impl Neg for GrossLinear {
    type Output = GrossLinear;
    fn neg(self) -> GrossLinear {
        GrossLinear {
            a: -self.a,
            b: -self.b,
        }
    }
}

/// `coeff·①^power`. A power of zero is a plain rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyTerm {
    pub coeff: BigRational,
    pub power: BigRational,
}

/// One prime of an exponential term: contributes `prime^(rate·①)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFactor {
    pub prime: u64,
    pub rate: BigRational,
}

impl PrimeFactor {
    pub fn exponent(&self) -> GrossLinear {
        GrossLinear::new(self.rate.clone(), BigRational::zero())
    }
}

/// `coeff·Π primeᵢ^(rateᵢ·①)` with distinct primes in ascending order and
/// every rate nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpTerm {
    pub coeff: BigRational,
    factors: Vec<PrimeFactor>,
}

impl ExpTerm {
    pub fn factors(&self) -> &[PrimeFactor] {
        &self.factors
    }

    /// Whether the growth key `Π pᵢ^(rateᵢ)` exceeds one.
    pub fn is_infinite(&self) -> bool {
        order::growth_cmp(&self.factors, &[]) == std::cmp::Ordering::Greater
    }
}

/// Unnormalized input to [`GrossValue::normalize`].
#[derive(Debug, Clone)]
pub enum RawTerm {
    Poly {
        coeff: BigRational,
        power: BigRational,
    },
    /// `coeff · Π baseᵢ^(exponentᵢ)` over rational bases.
    Exp {
        coeff: BigRational,
        bases: Vec<(BigRational, GrossLinear)>,
    },
}

/// A canonical gross-number. Immutable; all operations return new values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GrossValue {
    /// Sorted by descending power.
    poly: Vec<PolyTerm>,
    /// Sorted by descending growth key.
    exp: Vec<ExpTerm>,
}

impl GrossValue {
    pub fn zero() -> Self {
        GrossValue::default()
    }

    pub fn one() -> Self {
        GrossValue::rational(BigRational::one())
    }

    pub fn grossone() -> Self {
        GrossValue::monomial(BigRational::one(), BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        GrossValue::monomial(q, BigRational::zero())
    }

    pub fn integer(v: i64) -> Self {
        GrossValue::rational(rational::int(v))
    }

    /// `coeff·①^power`.
    pub fn monomial(coeff: BigRational, power: BigRational) -> Self {
        GrossValue::from_terms([PolyTerm { coeff, power }], [])
    }

    /// `base^exponent` for a rational base.
    pub fn power_of(base: BigRational, exponent: GrossLinear) -> Result<Self> {
        GrossValue::normalize([RawTerm::Exp {
            coeff: BigRational::one(),
            bases: vec![(base, exponent)],
        }])
    }

    pub fn poly_terms(&self) -> &[PolyTerm] {
        &self.poly
    }

    pub fn exp_terms(&self) -> &[ExpTerm] {
        &self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.exp.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.poly.len() + self.exp.len()
    }

    /// The value as a rational, if it has no gross terms.
    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.poly.as_slice(), self.exp.is_empty()) {
            ([], true) => Some(BigRational::zero()),
            ([t], true) if t.power.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// The `①^0` coefficient.
    pub fn finite_part(&self) -> BigRational {
        self.poly
            .iter()
            .find(|t| t.power.is_zero())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Whether any term is infinitesimal (negative power or decaying exponential).
    pub fn has_infinitesimal_part(&self) -> bool {
        self.poly.iter().any(|t| t.power.is_negative()) || self.exp.iter().any(|t| !t.is_infinite())
    }

    /// The value as `a·① + b`, if it has that shape.
    pub fn as_gross_linear(&self) -> Option<GrossLinear> {
        if !self.exp.is_empty() {
            return None;
        }
        let mut lin = GrossLinear::finite(BigRational::zero());
        for t in &self.poly {
            if t.power.is_one() {
                lin.a = t.coeff.clone();
            } else if t.power.is_zero() {
                lin.b = t.coeff.clone();
            } else {
                return None;
            }
        }
        Some(lin)
    }

    /// Canonical form of an arbitrary term list.
    pub fn normalize(raw: impl IntoIterator<Item = RawTerm>) -> Result<Self> {
        let mut poly = Vec::new();
        let mut exp = Vec::new();
        for term in raw {
            match term {
                RawTerm::Poly { coeff, power } => poly.push(PolyTerm { coeff, power }),
                RawTerm::Exp { coeff, bases } => match exp_from_bases(coeff, bases)? {
                    Canon::Constant(c) => poly.push(PolyTerm {
                        coeff: c,
                        power: BigRational::zero(),
                    }),
                    Canon::Exp(t) => exp.push(t),
                },
            }
        }
        Ok(GrossValue::from_terms(poly, exp))
    }

    /// Raw terms reproducing this value under [`GrossValue::normalize`].
    pub fn to_raw(&self) -> Vec<RawTerm> {
        let poly = self.poly.iter().map(|t| RawTerm::Poly {
            coeff: t.coeff.clone(),
            power: t.power.clone(),
        });
        let exp = self.exp.iter().map(|t| RawTerm::Exp {
            coeff: t.coeff.clone(),
            bases: t
                .factors
                .iter()
                .map(|f| (rational::int(f.prime as i64), f.exponent()))
                .collect(),
        });
        poly.chain(exp).collect()
    }

    /// Merges like terms of already-canonical monomials.
    fn from_terms(
        poly: impl IntoIterator<Item = PolyTerm>,
        exp: impl IntoIterator<Item = ExpTerm>,
    ) -> Self {
        let mut pmap: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for t in poly {
            *pmap.entry(t.power).or_insert_with(BigRational::zero) += t.coeff;
        }
        let mut emap: BTreeMap<Vec<PrimeFactor>, BigRational> = BTreeMap::new();
        for t in exp {
            *emap.entry(t.factors).or_insert_with(BigRational::zero) += t.coeff;
        }
        let poly = pmap
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(power, coeff)| PolyTerm { coeff, power })
            .collect();
        let mut exp: Vec<ExpTerm> = emap
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(factors, coeff)| ExpTerm { coeff, factors })
            .collect();
        exp.sort_by(|x, y| order::growth_cmp(&y.factors, &x.factors));
        GrossValue { poly, exp }
    }

    pub fn neg(&self) -> Self {
        GrossValue {
            poly: self
                .poly
                .iter()
                .map(|t| PolyTerm {
                    coeff: -&t.coeff,
                    power: t.power.clone(),
                })
                .collect(),
            exp: self
                .exp
                .iter()
                .map(|t| ExpTerm {
                    coeff: -&t.coeff,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        GrossValue::from_terms(
            self.poly.iter().chain(&other.poly).cloned(),
            self.exp.iter().chain(&other.exp).cloned(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product. Fails for products that would mix a nonzero power of ①
    /// with an exponential term.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut poly = Vec::new();
        let mut exp = Vec::new();
        for x in &self.poly {
            for y in &other.poly {
                poly.push(PolyTerm {
                    coeff: &x.coeff * &y.coeff,
                    power: &x.power + &y.power,
                });
            }
        }
        for (p, e) in self
            .poly
            .iter()
            .flat_map(|p| other.exp.iter().map(move |e| (p, e)))
            .chain(
                other
                    .poly
                    .iter()
                    .flat_map(|p| self.exp.iter().map(move |e| (p, e))),
            )
        {
            if !p.power.is_zero() {
                return Err(Error::unsupported(
                    "product of a power of grossone with an exponential term",
                ));
            }
            exp.push(ExpTerm {
                coeff: &p.coeff * &e.coeff,
                factors: e.factors.clone(),
            });
        }
        for x in &self.exp {
            for y in &other.exp {
                let coeff = &x.coeff * &y.coeff;
                match merge_factors(&x.factors, &y.factors) {
                    f if f.is_empty() => poly.push(PolyTerm {
                        coeff,
                        power: BigRational::zero(),
                    }),
                    factors => exp.push(ExpTerm { coeff, factors }),
                }
            }
        }
        Ok(GrossValue::from_terms(poly, exp))
    }

    /// Reciprocal of a single-term value.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        if self.term_count() != 1 {
            return Err(Error::unsupported(format!(
                "reciprocal of multi-term value {self}"
            )));
        }
        Ok(match (self.poly.first(), self.exp.first()) {
            (Some(t), _) => GrossValue::monomial(t.coeff.recip(), -&t.power),
            (None, Some(t)) => GrossValue {
                poly: vec![],
                exp: vec![ExpTerm {
                    coeff: t.coeff.recip(),
                    factors: t
                        .factors
                        .iter()
                        .map(|f| PrimeFactor {
                            prime: f.prime,
                            rate: -&f.rate,
                        })
                        .collect(),
                }],
            },
            (None, None) => unreachable!(),
        })
    }

    /// Quotient by a single-term divisor.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.mul(&divisor.recip()?)
    }

    /// Raises to a finite rational exponent. Multi-term bases accept only
    /// nonnegative integer exponents.
    pub fn pow(&self, exp: &BigRational) -> Result<Self> {
        if let Some(e) = as_i64(exp) {
            if e >= 0 {
                let mut acc = GrossValue::one();
                for _ in 0..e {
                    acc = acc.mul(self)?;
                }
                return Ok(acc);
            }
            if self.term_count() > 1 {
                return self.recip()?.pow(&-exp);
            }
        }
        if self.is_zero() {
            return if exp.is_positive() {
                Ok(GrossValue::zero())
            } else {
                Err(Error::domain("zero raised to a non-positive power"))
            };
        }
        if self.term_count() != 1 {
            return Err(Error::unsupported(format!(
                "multi-term value raised to non-integer power {}",
                rational::fmt_rational(exp)
            )));
        }
        let root = |c: &BigRational| {
            rational::pow_rational(c, exp)?.ok_or_else(|| {
                Error::unsupported(format!(
                    "{}^({}) is irrational",
                    rational::fmt_rational(c),
                    rational::fmt_rational(exp)
                ))
            })
        };
        if let Some(t) = self.poly.first() {
            return Ok(GrossValue::monomial(root(&t.coeff)?, &t.power * exp));
        }
        let t = &self.exp[0];
        let factors: Vec<PrimeFactor> = t
            .factors
            .iter()
            .map(|f| PrimeFactor {
                prime: f.prime,
                rate: &f.rate * exp,
            })
            .collect();
        Ok(GrossValue {
            poly: vec![],
            exp: vec![ExpTerm {
                coeff: root(&t.coeff)?,
                factors,
            }],
        })
    }

    /// Exact rational value with ① replaced by the positive integer `n`.
    pub fn substitute(&self, n: u64) -> Result<BigRational> {
        let nq = rational::int(n as i64);
        let mut acc = BigRational::zero();
        for t in &self.poly {
            let e = as_i64(&t.power).ok_or_else(|| {
                Error::GrossNonIntegerExponent(format!(
                    "{n}^({}) is not a rational value",
                    rational::fmt_rational(&t.power)
                ))
            })?;
            acc += &t.coeff * pow_int(&nq, e)?;
        }
        for t in &self.exp {
            let mut v = t.coeff.clone();
            for f in &t.factors {
                let e = &f.rate * &nq;
                let e = as_i64(&e).ok_or_else(|| {
                    Error::GrossNonIntegerExponent(format!(
                        "{}^({}) after substituting {n}",
                        f.prime,
                        rational::fmt_rational(&e)
                    ))
                })?;
                v *= pow_int(&rational::int(f.prime as i64), e)?;
            }
            acc += v;
        }
        Ok(acc)
    }
}

enum Canon {
    Constant(BigRational),
    Exp(ExpTerm),
}

fn exp_from_bases(mut coeff: BigRational, bases: Vec<(BigRational, GrossLinear)>) -> Result<Canon> {
    let mut primes: BTreeMap<u64, GrossLinear> = BTreeMap::new();
    for (base, exponent) in bases {
        if base.is_one() {
            continue;
        }
        if !base.is_positive() {
            if !exponent.is_finite() {
                return Err(Error::unsupported(format!(
                    "non-positive base {} raised to a gross exponent",
                    rational::fmt_rational(&base)
                )));
            }
            let e = as_i64(&exponent.b).ok_or_else(|| {
                Error::unsupported(format!(
                    "non-positive base {} raised to a non-integer power",
                    rational::fmt_rational(&base)
                ))
            })?;
            coeff *= pow_int(&base, e)?;
            continue;
        }
        for (p, mult) in rational::factorize_rational(&base)? {
            let scaled = exponent.scale(&rational::int(mult));
            let slot = primes
                .entry(p)
                .or_insert_with(|| GrossLinear::finite(BigRational::zero()));
            slot.a += scaled.a;
            slot.b += scaled.b;
        }
    }
    let mut factors = Vec::new();
    for (p, lin) in primes {
        let b = as_i64(&lin.b).ok_or_else(|| {
            Error::unsupported(format!(
                "{p}^({}) is an irrational surd",
                rational::fmt_rational(&lin.b)
            ))
        })?;
        coeff *= pow_int(&rational::int(p as i64), b)?;
        if !lin.a.is_zero() {
            factors.push(PrimeFactor {
                prime: p,
                rate: lin.a,
            });
        }
    }
    Ok(if factors.is_empty() {
        Canon::Constant(coeff)
    } else {
        Canon::Exp(ExpTerm { coeff, factors })
    })
}

fn merge_factors(x: &[PrimeFactor], y: &[PrimeFactor]) -> Vec<PrimeFactor> {
    let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
    for f in x.iter().chain(y) {
        *map.entry(f.prime).or_insert_with(BigRational::zero) += &f.rate;
    }
    map.into_iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(prime, rate)| PrimeFactor { prime, rate })
        .collect()
}

impl Add for &GrossValue {
    type Output = GrossValue;
    fn add(self, rhs: &GrossValue) -> GrossValue {
        GrossValue::add(self, rhs)
    }
}

impl Sub for &GrossValue {
    type Output = GrossValue;
    fn sub(self, rhs: &GrossValue) -> GrossValue {
        GrossValue::sub(self, rhs)
    }
}

impl Neg for &GrossValue {
    type Output = GrossValue;
    fn neg(self) -> GrossValue {
        GrossValue::neg(self)
    }
}

impl From<BigRational> for GrossValue {
    fn from(q: BigRational) -> Self {
        GrossValue::rational(q)
    }
}

impl From<i64> for GrossValue {
    fn from(v: i64) -> Self {
        GrossValue::integer(v)
    }
}

impl From<BigInt> for GrossValue {
    fn from(v: BigInt) -> Self {
        GrossValue::rational(BigRational::from_integer(v))
    }
}

impl Serialize for GrossValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
