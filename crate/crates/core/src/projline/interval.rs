use std::fmt;

use super::moebius::Moebius;
use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// Closed arc of the real projective line, traversed in the positive
/// direction (increasing through the finite reals, then through infinity)
/// from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    start: ProjPoint,
    end: ProjPoint,
}

impl Interval {
    pub fn new(start: ProjPoint, end: ProjPoint) -> Result<Self> {
        if start == end {
            return Err(Error::InvalidInterval(format!(
                "start and end coincide at {start}"
            )));
        }
        Ok(Interval { start, end })
    }

    /// Finite interval `[a, b]` with `a < b`.
    pub fn finite(a: &Rat, b: &Rat) -> Result<Self> {
        if a >= b {
            return Err(Error::InvalidInterval(format!(
                "finite interval needs start < end, got [{}, {}]",
                rat::format_rat(a),
                rat::format_rat(b)
            )));
        }
        Self::new(ProjPoint::finite(a), ProjPoint::finite(b))
    }

    pub fn start(&self) -> &ProjPoint {
        &self.start
    }

    pub fn end(&self) -> &ProjPoint {
        &self.end
    }

    /// True when the arc passes through infinity going from start to end.
    fn wraps(&self) -> bool {
        self.start > self.end
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        if self.wraps() {
            *p >= self.start || *p <= self.end
        } else {
            *p >= self.start && *p <= self.end
        }
    }

    pub fn contains_infinity(&self) -> bool {
        self.contains(&ProjPoint::infinity())
    }

    /// A deterministic rational point strictly inside the arc.
    ///
    /// Affine midpoint when the arc avoids infinity; otherwise the midpoint
    /// in the chart `w = 1/(z - q)` where `q` is `0` when possible and the
    /// midpoint of the complementary arc when the arc holds both `0` and
    /// infinity.
    pub fn interior_sample(&self) -> ProjPoint {
        if !self.contains_infinity() {
            let s = self.start.value().expect("finite");
            let e = self.end.value().expect("finite");
            return ProjPoint::finite(&((s + e) / rat::int(2)));
        }
        // any point of the complementary open arc works as the pole
        let pole = if !self.contains(&ProjPoint::int(0)) {
            rat::int(0)
        } else {
            match (self.start.value(), self.end.value()) {
                (None, Some(e)) => e + rat::int(1),
                (Some(s), None) => s - rat::int(1),
                (Some(s), Some(e)) => (s + e) / rat::int(2),
                (None, None) => unreachable!("start != end"),
            }
        };
        let chart = |p: &ProjPoint| match p.value() {
            None => rat::int(0),
            Some(z) => rat::int(1) / (z - &pole),
        };
        let mid = (chart(&self.start) + chart(&self.end)) / rat::int(2);
        if mid == rat::int(0) {
            ProjPoint::infinity()
        } else {
            ProjPoint::finite(&(pole + rat::int(1) / mid))
        }
    }

    /// Image arc under `m`; endpoints swap when `m` reverses orientation.
    pub fn image(&self, m: &Moebius) -> Interval {
        let s = m.apply(&self.start);
        let e = m.apply(&self.end);
        if m.orientation() > 0 {
            Interval { start: s, end: e }
        } else {
            Interval { start: e, end: s }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// A finite family of pairwise disjoint closed arcs with distinct boundary
/// points, in canonical cyclic order: arcs are sorted by the first of their
/// boundary points met when walking positively from infinity (infinity
/// itself counts as first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalConfig {
    intervals: Vec<Interval>,
}

impl IntervalConfig {
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        let mut bounds: Vec<&ProjPoint> = intervals
            .iter()
            .flat_map(|i| [&i.start, &i.end])
            .collect();
        bounds.sort();
        if bounds.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig("boundary points are not distinct".into()));
        }
        for (i, arc) in intervals.iter().enumerate() {
            for (j, other) in intervals.iter().enumerate() {
                if i != j && (arc.contains(&other.start) || arc.contains(&other.end)) {
                    return Err(Error::InvalidConfig(format!(
                        "intervals {arc} and {other} overlap"
                    )));
                }
            }
        }
        intervals.sort_by(|a, b| {
            let ka = std::cmp::min(&a.start, &a.end);
            let kb = std::cmp::min(&b.start, &b.end);
            ka.cmp(kb)
        });
        Ok(IntervalConfig { intervals })
    }

    pub fn empty() -> Self {
        IntervalConfig {
            intervals: Vec::new(),
        }
    }

    /// Finite intervals from `(start, end)` pairs of rationals.
    pub fn from_finite(pairs: &[(Rat, Rat)]) -> Result<Self> {
        let arcs = pairs
            .iter()
            .map(|(a, b)| Interval::finite(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(arcs)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `s1, e1, s2, e2, ...`: the boundary points in positive cyclic order.
    pub fn boundary_cycle(&self) -> Vec<ProjPoint> {
        self.intervals
            .iter()
            .flat_map(|i| [i.start.clone(), i.end.clone()])
            .collect()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.intervals.iter().any(|i| i.contains(p))
    }

    pub fn contains_infinity(&self) -> bool {
        self.contains(&ProjPoint::infinity())
    }

    /// Index of the arc containing `p`.
    pub fn component_of(&self, p: &ProjPoint) -> Option<usize> {
        self.intervals.iter().position(|i| i.contains(p))
    }

    pub fn image(&self, m: &Moebius) -> IntervalConfig {
        IntervalConfig::new(self.intervals.iter().map(|i| i.image(m)).collect())
            .expect("a Moebius map preserves disjointness")
    }
}

impl fmt::Display for IntervalConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn arc(a: i64, b: i64) -> Interval {
        Interval::new(ProjPoint::int(a), ProjPoint::int(b)).unwrap()
    }

    #[test]
    fn membership_follows_orientation() {
        let a = arc(0, 1);
        assert!(a.contains(&ProjPoint::finite(&rat(1, 2))));
        assert!(a.contains(&ProjPoint::int(0)));
        assert!(!a.contains(&ProjPoint::int(2)));
        assert!(!a.contains_infinity());
        let w = arc(1, 0);
        assert!(w.contains_infinity());
        assert!(w.contains(&ProjPoint::int(-40)));
        assert!(!w.contains(&ProjPoint::finite(&rat(1, 2))));
    }

    #[test]
    fn image_under_maps() {
        let a = arc(0, 1);
        assert_eq!(a.image(&Moebius::identity()), a);
        let flip = Moebius::from_ints(-1, 1, 0, 1).unwrap();
        let img = a.image(&flip);
        assert_eq!(img, a);
        assert!(img.contains(&flip.apply(&ProjPoint::finite(&rat(1, 2)))));
        assert_eq!(a.image(&Moebius::translation(&int(5))), arc(5, 6));
    }

    #[test]
    fn samples_are_interior() {
        let cases = [
            arc(0, 1),
            arc(1, 0),
            arc(-1, -2),
            arc(3, -3),
            Interval::new(ProjPoint::infinity(), ProjPoint::int(5)).unwrap(),
            Interval::new(ProjPoint::int(5), ProjPoint::infinity()).unwrap(),
        ];
        for c in cases {
            let s = c.interior_sample();
            assert!(c.contains(&s), "{c} sample {s}");
            assert_ne!(&s, c.start());
            assert_ne!(&s, c.end());
        }
    }

    #[test]
    fn config_validation_and_order() {
        let c = IntervalConfig::new(vec![arc(2, 3), arc(0, 1)]).unwrap();
        assert_eq!(c.intervals()[0], arc(0, 1));
        assert!(IntervalConfig::new(vec![arc(0, 2), arc(1, 3)]).is_err());
        assert!(IntervalConfig::new(vec![arc(0, 5), arc(1, 2)]).is_err());
        assert!(IntervalConfig::new(vec![arc(0, 1), arc(1, 2)]).is_err());
        // wrapping arc comes first: its end -3 is the first boundary after inf
        let w = IntervalConfig::new(vec![arc(0, 1), arc(5, -3)]).unwrap();
        assert_eq!(w.intervals()[0], arc(5, -3));
        assert_eq!(w.boundary_cycle()[0], ProjPoint::int(5));
        assert!(w.contains_infinity());
    }
}
