use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// An invertible real Moebius map `z -> (a z + b) / (c z + d)` with rational
/// coefficients, taken modulo scalars.
///
/// The stored representative has coprime integer entries and a positive first
/// nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Moebius {
    m: [BigInt; 4],
}

impl Moebius {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        let ints = rat::primitive_integer_vector(&[a, b, c, d]).ok_or(Error::SingularMatrix)?;
        Self::from_big([ints[0].clone(), ints[1].clone(), ints[2].clone(), ints[3].clone()])
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::from_big([a, b, c, d].map(BigInt::from))
    }

    fn from_big(mut m: [BigInt; 4]) -> Result<Self> {
        if (&m[0] * &m[3] - &m[1] * &m[2]).is_zero() {
            return Err(Error::SingularMatrix);
        }
        rat::normalize_integer_vector(&mut m);
        Ok(Moebius { m })
    }

    pub fn identity() -> Self {
        Moebius {
            m: [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()],
        }
    }

    /// `z -> z + t`
    pub fn translation(t: &Rat) -> Self {
        Self::new(rat::int(1), t.clone(), rat::int(0), rat::int(1)).expect("det is 1")
    }

    pub fn coefficients(&self) -> &[BigInt; 4] {
        &self.m
    }

    pub fn det(&self) -> BigInt {
        &self.m[0] * &self.m[3] - &self.m[1] * &self.m[2]
    }

    /// `+1` when the map preserves the cyclic orientation of the real
    /// projective line, `-1` when it reverses it.
    pub fn orientation(&self) -> i8 {
        if self.det().is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let (u0, u1) = p.coords();
        let [a, b, c, d] = &self.m;
        ProjPoint::new(a * u0 + b * u1, c * u0 + d * u1).expect("invertible map")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Self::from_big([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
            .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> Moebius {
        let [a, b, c, d] = &self.m;
        Self::from_big([d.clone(), -b, -c, a.clone()]).expect("adjugate of invertible map")
    }

    /// The unique map sending `p[i]` to `q[i]` for `i = 0, 1, 2`.
    pub fn from_triples(p: [&ProjPoint; 3], q: [&ProjPoint; 3]) -> Result<Moebius> {
        let to_std_p = to_standard(p)?;
        let to_std_q = to_standard(q)?;
        Ok(to_std_q.inverse().compose(&to_std_p))
    }
}

/// Map sending the triple to `(0, 1, inf)`.
fn to_standard(p: [&ProjPoint; 3]) -> Result<Moebius> {
    if p[0] == p[1] || p[1] == p[2] || p[0] == p[2] {
        return Err(Error::InvalidTriple);
    }
    let (x0, y0) = p[0].coords();
    let (x1, y1) = p[1].coords();
    let (x2, y2) = p[2].coords();
    // row one kills p0, row two kills p2; scale so p1 goes to (1 : 1)
    let r1 = [y0.clone(), -x0];
    let r2 = [y2.clone(), -x2];
    let s1 = &r1[0] * x1 + &r1[1] * y1;
    let s2 = &r2[0] * x1 + &r2[1] * y1;
    Moebius::from_big([&r1[0] * &s2, &r1[1] * &s2, &r2[0] * &s1, &r2[1] * &s1])
}

/// Cross-ratio normalized so that `(p1, p2, p3, p4) -> m(p4)` where `m`
/// sends `p1, p2, p3` to `0, 1, inf`.
pub fn cross_ratio(
    p1: &ProjPoint,
    p2: &ProjPoint,
    p3: &ProjPoint,
    p4: &ProjPoint,
) -> Result<ProjPoint> {
    Ok(to_standard([p1, p2, p3])?.apply(p4))
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[{a} {b}; {c} {d}]")
    }
}
