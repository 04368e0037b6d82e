use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// A point `(u0 : u1)` of the real projective line with rational
/// coordinates.
///
/// The pair is stored primitive (coprime integers) with its first nonzero
/// entry positive, so equal points have equal representations. The finite
/// point `x` is `(x : 1)` and infinity is `(1 : 0)`.
///
/// `Ord` is the positive cyclic order cut open at infinity: infinity comes
/// first, then the finite points in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    u0: BigInt,
    u1: BigInt,
}

impl ProjPoint {
    pub fn new(u0: BigInt, u1: BigInt) -> Result<Self> {
        let mut v = [u0, u1];
        if !rat::normalize_integer_vector(&mut v) {
            return Err(Error::ZeroPoint);
        }
        let [u0, u1] = v;
        Ok(ProjPoint { u0, u1 })
    }

    pub fn from_ints(u0: i64, u1: i64) -> Result<Self> {
        Self::new(BigInt::from(u0), BigInt::from(u1))
    }

    pub fn infinity() -> Self {
        ProjPoint {
            u0: BigInt::one(),
            u1: BigInt::zero(),
        }
    }

    pub fn finite(x: &Rat) -> Self {
        Self::new(x.numer().clone(), x.denom().clone()).expect("denominator is nonzero")
    }

    pub fn int(n: i64) -> Self {
        Self::finite(&rat::int(n))
    }

    pub fn coords(&self) -> (&BigInt, &BigInt) {
        (&self.u0, &self.u1)
    }

    pub fn is_infinity(&self) -> bool {
        self.u1.is_zero()
    }

    /// Affine coordinate `u0 / u1`, `None` at infinity.
    pub fn value(&self) -> Option<Rat> {
        (!self.u1.is_zero()).then(|| Rat::new(self.u0.clone(), self.u1.clone()))
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.value(), other.value()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(&b),
        }
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => f.write_str("inf"),
            Some(x) => f.write_str(&rat::format_rat(&x)),
        }
    }
}

/// Parses `"inf"` or a canonical rational string.
pub fn parse_point(s: &str) -> Result<ProjPoint> {
    if s == "inf" {
        Ok(ProjPoint::infinity())
    } else {
        Ok(ProjPoint::finite(&rat::parse_rat(s)?))
    }
}
