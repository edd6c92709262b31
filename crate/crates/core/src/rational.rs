//! Helpers over [`BigRational`]: construction, integer powers, exact roots
//! and prime factorization of rational bases.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational;

use crate::error::{Error, Result};

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for an integer exponent of either sign.
pub fn pow_int(base: &BigRational, exp: i64) -> Result<BigRational> {
    if exp == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() {
        if exp < 0 {
            return Err(Error::domain("zero raised to a negative power"));
        }
        return Ok(BigRational::zero());
    }
    let mag = u32::try_from(exp.unsigned_abs())
        .map_err(|_| Error::unsupported(format!("exponent {exp} too large")))?;
    let numer = num_traits::pow(base.numer().clone(), mag as usize);
    let denom = num_traits::pow(base.denom().clone(), mag as usize);
    Ok(if exp > 0 {
        BigRational::new(numer, denom)
    } else {
        BigRational::new(denom, numer)
    })
}

/// Exponent as `i64` if it is an integer that fits.
pub fn as_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Exact `q^(p/r)` when it is rational, `None` otherwise.
pub fn pow_rational(q: &BigRational, exp: &BigRational) -> Result<Option<BigRational>> {
    if let Some(e) = as_i64(exp) {
        return pow_int(q, e).map(Some);
    }
    let root = match exp.denom().to_u32() {
        Some(r) => r,
        None => return Ok(None),
    };
    if q.is_negative() {
        return Ok(None);
    }
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let (rn, rd) = (n.nth_root(root), d.nth_root(root));
    if num_traits::pow(rn.clone(), root as usize) != *n
        || num_traits::pow(rd.clone(), root as usize) != *d
    {
        return Ok(None);
    }
    let root_val = BigRational::new(BigInt::from(rn), BigInt::from(rd));
    let e = exp
        .numer()
        .to_i64()
        .ok_or_else(|| Error::unsupported("exponent too large"))?;
    pow_int(&root_val, e).map(Some)
}

pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Text form `p/q`, or `p` for integers.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` or a plain decimal literal like `0.45` / `-1.5e-3` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Data(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = digits.split_once('.').unwrap_or((digits, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let scale = exp10 - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Serializes as the string `p/q`, for use with `#[serde(serialize_with)]`.
pub fn serialize<S: serde::Serializer>(
    q: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&fmt_rational(q))
}

pub fn to_f64(q: &BigRational) -> f64 {
    // `ToPrimitive` on BigRational loses range for large numerators; go via
    // scaled integer division instead when needed.
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Prime factorization of a positive integer as `(prime, multiplicity)`
/// pairs in ascending prime order.
///
/// Trial division handles primes below 2^20; a leftover cofactor is accepted
/// when it fits in `u64` and passes a deterministic Miller-Rabin test.
pub fn factorize(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    if n.is_zero() {
        return Err(Error::domain("cannot factorize zero"));
    }
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut mult = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((p, mult));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        match rest.to_u64() {
            Some(r) if is_prime_u64(r) => out.push((r, 1)),
            _ => {
                return Err(Error::unsupported(format!(
                    "cannot factor base component {n}: cofactor {rest} too large"
                )))
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Signed prime exponents of a positive rational: `q = Π p^e`.
pub fn factorize_rational(q: &BigRational) -> Result<Vec<(u64, i64)>> {
    if q.numer().sign() != Sign::Plus {
        return Err(Error::domain("factorization of a non-positive rational"));
    }
    let mut out: Vec<(u64, i64)> = factorize(q.numer().magnitude())?
        .into_iter()
        .map(|(p, e)| (p, i64::from(e)))
        .collect();
    out.extend(
        factorize(q.denom().magnitude())?
            .into_iter()
            .map(|(p, e)| (p, -i64::from(e))),
    );
    out.sort_unstable();
    Ok(out)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
