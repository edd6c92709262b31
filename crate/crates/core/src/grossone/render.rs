//! Canonical text form, using `g` for ①. The output is valid input for
//! [`crate::parse`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExpTerm, GrossValue, PolyTerm};
use crate::rational::{as_i64, fmt_rational, lcm_denominators, pow_int, BigRational};

fn valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    if n.is_zero() {
        return 0;
    }
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `a·g + b` without spaces, e.g. `g-1`, `g/2+1/2`, `-3*g`.
pub(crate) fn fmt_linear(a: &BigRational, b: &BigRational) -> String {
    let mut s = String::new();
    if !a.is_zero() {
        let mag = a.abs();
        if a.is_negative() {
            s.push('-');
        }
        if mag.is_one() {
            s.push('g');
        } else if mag.is_integer() {
            s.push_str(&format!("{}*g", mag.numer()));
        } else if mag.numer().is_one() {
            s.push_str(&format!("g/{}", mag.denom()));
        } else {
            s.push_str(&format!("{}*g", fmt_rational(&mag)));
        }
    }
    if !b.is_zero() || s.is_empty() {
        if !s.is_empty() && !b.is_negative() {
            s.push('+');
        }
        s.push_str(&fmt_rational(b));
    }
    s
}

fn fmt_coeff_prefix(mag: &BigRational) -> String {
    if mag.is_one() {
        String::new()
    } else {
        format!("{}*", fmt_rational(mag))
    }
}

fn fmt_poly(t: &PolyTerm) -> String {
    let mag = t.coeff.abs();
    if t.power.is_zero() {
        return fmt_rational(&mag);
    }
    let g = if t.power.is_one() {
        "g".to_string()
    } else if t.power.is_integer() && t.power.is_positive() {
        format!("g^{}", t.power.numer())
    } else {
        format!("g^({})", fmt_rational(&t.power))
    };
    format!("{}{g}", fmt_coeff_prefix(&mag))
}

fn fmt_exp(t: &ExpTerm) -> String {
    let d = lcm_denominators(t.factors.iter().map(|f| &f.rate));
    let dq = BigRational::from_integer(d.clone());
    let mut base = BigRational::one();
    for f in &t.factors {
        let e = as_i64(&(&f.rate * &dq)).expect("scaled rate is integral");
        base *= pow_int(&BigRational::from_integer(f.prime.into()), e).expect("prime power");
    }
    let base_txt = if base.is_integer() {
        base.numer().to_string()
    } else {
        format!("({})", fmt_rational(&base))
    };

    // Try to absorb the coefficient as an offset `t` of the exponent, so that
    // `coeff · base^(g/D)` prints as `base^((g+t)/D)`.
    let mag = t.coeff.abs();
    let first = &t.factors[0];
    let v = valuation(mag.numer(), first.prime) - valuation(mag.denom(), first.prime);
    let offset = BigRational::from_integer(v.into()) / &first.rate;
    let absorbed = t.factors.iter().try_fold(BigRational::one(), |acc, f| {
        as_i64(&(&f.rate * &offset)).and_then(|e| {
            pow_int(&BigRational::from_integer(f.prime.into()), e)
                .ok()
                .map(|p| acc * p)
        })
    });
    let (prefix, shift) = match absorbed {
        Some(c) if c == mag => (String::new(), offset),
        _ => (fmt_coeff_prefix(&mag), BigRational::zero()),
    };
    let a = dq.recip();
    let b = &shift * &a;
    let exponent = if a.is_one() && b.is_zero() {
        "g".to_string()
    } else {
        format!("({})", fmt_linear(&a, &b))
    };
    format!("{prefix}{base_txt}^{exponent}")
}

impl fmt::Display for GrossValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (inf, small): (Vec<&ExpTerm>, Vec<&ExpTerm>) =
            self.exp.iter().partition(|t| t.is_infinite());
        let terms = inf
            .into_iter()
            .map(|t| (t.coeff.is_negative(), fmt_exp(t)))
            .chain(
                self.poly
                    .iter()
                    .map(|t| (t.coeff.is_negative(), fmt_poly(t))),
            )
            .chain(
                small
                    .into_iter()
                    .map(|t| (t.coeff.is_negative(), fmt_exp(t))),
            );
        for (i, (neg, txt)) in terms.enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{txt}")?,
                (0, false) => f.write_str(&txt)?,
                (_, true) => write!(f, " - {txt}")?,
                (_, false) => write!(f, " + {txt}")?,
            }
        }
        Ok(())
    }
}
