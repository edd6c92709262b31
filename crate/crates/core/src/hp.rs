//! Binary fixed-point reals over `BigInt`, with natural logarithm of
//! rationals and the exponential function to arbitrary precision.
//!
//! A [`Fixed`] is `mantissa / 2^bits`. Every operation returns a result with
//! the same number of fractional bits as its operands; transcendental
//! functions evaluate internally with extra guard bits and are accurate to a
//! few units in the last place.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::BigRational;

const GUARD: u32 = 64;

/// Fractional bits needed for `digits` decimal digits plus a small margin.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

fn shift(v: &BigInt, by: i64) -> BigInt {
    if by >= 0 {
        v << by as usize
    } else {
        // Round to nearest.
        let by = (-by) as usize;
        let half = BigInt::one() << (by - 1);
        (v + half) >> by
    }
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Fixed {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn from_int(v: i64, bits: u32) -> Self {
        Fixed {
            mant: BigInt::from(v) << bits as usize,
            bits,
        }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let scaled = q.numer() << bits as usize;
        let num: BigInt = &scaled * 2 + q.denom();
        let (d, _) = num.div_mod_floor(&(q.denom() * 2));
        Fixed { mant: d, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Same value with a different number of fractional bits.
    pub fn with_bits(&self, bits: u32) -> Self {
        Fixed {
            mant: shift(&self.mant, i64::from(bits) - i64::from(self.bits)),
            bits,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Fixed {
            mant: &self.mant + &o.mant,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Fixed {
            mant: &self.mant - &o.mant,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        Fixed {
            mant: -&self.mant,
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Fixed {
            mant: shift(&(&self.mant * &o.mant), -i64::from(self.bits)),
            bits: self.bits,
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        debug_assert_eq!(self.bits, o.bits);
        if o.mant.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        let num = (&self.mant << (self.bits as usize + 1)) + &o.mant;
        let (q, _) = num.div_mod_floor(&(&o.mant * 2));
        Ok(Fixed {
            mant: q,
            bits: self.bits,
        })
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Fixed {
            mant: &self.mant * k,
            bits: self.bits,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Fixed {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        // mant / 2^bits  vs  n / d   <=>   mant·d  vs  n·2^bits
        (&self.mant * q.denom()).cmp(&(q.numer() << self.bits as usize))
    }

    pub fn to_f64(&self) -> f64 {
        let top = self.mant.bits() as i64;
        let drop = (top - 60).max(0);
        let m = shift(&self.mant, -drop).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((drop - i64::from(self.bits)) as i32)
    }

    /// Exact rational value of the stored approximation.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits as usize)
    }

    /// Decimal string with `places` digits after the point, rounded half away
    /// from zero.
    pub fn to_decimal(&self, places: u32) -> String {
        decimal_of(&self.mant, self.bits, places)
    }

    /// `ln q` for a positive rational, accurate to a few ulps at `bits`.
    pub fn ln_rational(q: &BigRational, bits: u32) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::domain("logarithm of a non-positive number"));
        }
        let (n, d) = (q.numer(), q.denom());
        // q = 2^k · r with r in (1/2, 2).
        let k = n.bits() as i64 - d.bits() as i64;
        let (rn, rd) = if k >= 0 {
            (n.clone(), d << k as usize)
        } else {
            (n << (-k) as usize, d.clone())
        };
        let extra = 64 - (k.unsigned_abs().leading_zeros());
        let w = bits + GUARD + extra;
        let ln_r = atanh_rational(&BigRational::new(&rn - &rd, &rn + &rd), w).mul_int(2);
        let ln2 = ln2(w);
        let v = ln_r.add(&ln2.mul_int(k));
        Ok(v.with_bits(bits))
    }

    pub fn exp(&self) -> Self {
        let bits = self.bits;
        let approx = self.to_f64();
        if approx < -(f64::from(bits) + 2.0) * std::f64::consts::LN_2 {
            return Fixed::zero(bits);
        }
        let k = (approx / std::f64::consts::LN_2).round() as i64;
        let extra = 64 - k.unsigned_abs().leading_zeros();
        let squarings = 20u32;
        let w = bits + GUARD + extra + squarings;
        let x = self.with_bits(w);
        let r = x.sub(&ln2(w).mul_int(k));
        // exp(r) = exp(r / 2^s)^(2^s)
        let small = Fixed {
            mant: shift(&r.mant, -i64::from(squarings)),
            bits: w,
        };
        let one = Fixed::from_int(1, w);
        let mut sum = one.clone();
        let mut term = one;
        let mut i = 1i64;
        loop {
            term = term.mul(&small);
            term.mant /= i;
            if term.mant.is_zero() {
                break;
            }
            sum = sum.add(&term);
            i += 1;
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        Fixed {
            mant: shift(&sum.mant, k),
            bits: w,
        }
        .with_bits(bits)
    }
}

fn decimal_of(mant: &BigInt, bits: u32, places: u32) -> String {
    let scaled = mant.abs() * num_traits::pow(BigInt::from(10), places as usize);
    let q = shift(&scaled, -i64::from(bits));
    let digits = q.to_string();
    let places = places as usize;
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (ip, fp) = padded.split_at(padded.len() - places);
    let sign = if mant.sign() == Sign::Minus && q.sign() != Sign::NoSign {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// `atanh z` for rational |z| <= 1/3 via the odd power series.
fn atanh_rational(z: &BigRational, w: u32) -> Fixed {
    let zf = Fixed::from_rational(z, w);
    let z2 = zf.mul(&zf);
    let mut power = zf.clone();
    let mut sum = zf;
    let mut k = 3i64;
    loop {
        power = power.mul(&z2);
        let term = &power.mant / k;
        if term.is_zero() {
            break;
        }
        sum.mant += term;
        k += 2;
    }
    sum
}

fn ln2(w: u32) -> Fixed {
    atanh_rational(&BigRational::new(1.into(), 3.into()), w + 8)
        .mul_int(2)
        .with_bits(w)
}

/// Rounds `compute(bits)` to `places` decimals, raising the working
/// precision until a margin of `ulps` around the approximation rounds to the
/// same string.
pub fn round_stable(
    places: u32,
    ulps: u32,
    compute: impl Fn(u32) -> Result<Fixed>,
) -> Result<String> {
    let mut bits = bits_for_digits(places) + 32;
    loop {
        let v = compute(bits)?;
        let eps = BigInt::from(ulps);
        let lo = decimal_of(&(&v.mant - &eps), v.bits, places);
        let hi = decimal_of(&(&v.mant + &eps), v.bits, places);
        if lo == hi {
            return Ok(lo);
        }
        bits *= 2;
        if bits > 1 << 20 {
            return Err(Error::domain("decimal rounding did not stabilize"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    // Reference digits from an independent 60-digit evaluation.
    const LN2: &str = "0.693147180559945309417232121458176568075500134360255254120680";
    const LN3: &str = "1.098612288668109691395245236922525704647490557822749451734694";
    const E: &str = "2.718281828459045235360287471352662497757247093699959574966968";

    #[test]
    fn logarithms() {
        let b = bits_for_digits(60);
        assert_eq!(
            Fixed::ln_rational(&int(2), b).unwrap().to_decimal(55),
            LN2[..57]
        );
        assert_eq!(
            Fixed::ln_rational(&int(3), b).unwrap().to_decimal(55),
            LN3[..57]
        );
        assert_eq!(
            Fixed::ln_rational(&int(1), b).unwrap().to_decimal(10),
            "0.0000000000"
        );
        let inv = Fixed::ln_rational(&ratio(1, 3), b).unwrap();
        assert_eq!(inv.to_decimal(55), format!("-{}", &LN3[..57]));
    }

    #[test]
    fn ln_of_large_power_is_linear() {
        let b = bits_for_digits(40);
        let big = crate::rational::pow_int(&int(20), 100).unwrap();
        let l100 = Fixed::ln_rational(&big, b).unwrap();
        let l1 = Fixed::ln_rational(&int(20), b).unwrap().mul_int(100);
        assert!(l100.sub(&l1).abs().to_f64() < 1e-35);
    }

    #[test]
    fn exponential() {
        let b = bits_for_digits(60);
        assert_eq!(Fixed::from_int(1, b).exp().to_decimal(53), E[..55]);
        assert_eq!(
            Fixed::zero(b).exp().to_decimal(20),
            "1.00000000000000000000"
        );
        let l = Fixed::ln_rational(&ratio(400, 729), b).unwrap();
        assert_eq!(
            l.exp().to_decimal(50),
            Fixed::from_rational(&ratio(400, 729), b).to_decimal(50)
        );
        assert!(Fixed::from_int(-10_000, 64).exp().is_zero());
    }

    #[test]
    fn decimal_rendering() {
        let v = Fixed::from_rational(&ratio(-1, 8), 16);
        assert_eq!(v.to_decimal(3), "-0.125");
        assert_eq!(v.to_decimal(2), "-0.13");
        assert_eq!(
            Fixed::from_rational(&ratio(-1, 1000), 40).to_decimal(1),
            "0.0"
        );
        assert_eq!(Fixed::from_rational(&ratio(5, 2), 8).to_decimal(0), "3");
    }

    #[test]
    fn stable_rounding() {
        let s = round_stable(9, 64, |b| Fixed::ln_rational(&int(3), b)).unwrap();
        assert_eq!(s, "1.098612289");
    }
}
