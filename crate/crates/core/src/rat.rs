//! Rational numbers and their canonical string form.
//!
//! Values serialize as `"p/q"` with `q > 0` and `gcd(p, q) = 1`; the
//! denominator is omitted when it is one. Parsing accepts exactly that form
//! and nothing else, so every accepted string round-trips byte for byte.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_int_token(full: &str, s: &str, signed: bool) -> Result<BigInt> {
    let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            token: full.to_string(),
            reason: "expected an integer or p/q".into(),
        });
    }
    s.parse::<BigInt>().map_err(|e| Error::Parse {
        token: full.to_string(),
        reason: e.to_string(),
    })
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int_token(s, s, true)?)),
        Some((n, d)) => {
            let num = parse_int_token(s, n, true)?;
            let den = parse_int_token(s, d, false)?;
            if den.is_zero() {
                return Err(Error::Parse {
                    token: s.to_string(),
                    reason: "zero denominator".into(),
                });
            }
            if !num.gcd(&den).is_one() {
                return Err(Error::Parse {
                    token: s.to_string(),
                    reason: "numerator and denominator are not coprime".into(),
                });
            }
            if den.is_one() {
                return Err(Error::Parse {
                    token: s.to_string(),
                    reason: "denominator 1 must be omitted".into(),
                });
            }
            Ok(Rat::new_raw(num, den))
        }
    }
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a non-negative rational, if it is a rational square.
pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(Rat::new(n, d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Integer vector proportional to `values` with coprime entries and the
/// first nonzero entry positive. `None` for the zero vector.
pub fn primitive_integer_vector(values: &[Rat]) -> Option<Vec<BigInt>> {
    let den = common_denominator(values);
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    normalize_integer_vector(&mut ints).then_some(ints)
}

/// Divides by the gcd and fixes the sign of the first nonzero entry.
/// Returns false for the zero vector.
pub fn normalize_integer_vector(v: &mut [BigInt]) -> bool {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return false;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
    true
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rat) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

pub fn to_f64(q: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
