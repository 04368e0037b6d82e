//! Random instance generators for property checks and the self-test.
//! Everything is driven by a caller-supplied RNG, so a seeded generator
//! makes every instance reproducible.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::conic_model::{ConicModel, SurfPoint};
use crate::planner::{PathQuery, Pt, Rect, Region};
use crate::projline::{Interval, IntervalConfig, Moebius};
use crate::rat::{self, Rat};
use crate::twist::psi;

/// `n/d` with `|n| ≤ span·d` and `1 ≤ d ≤ max_den`.
pub fn rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Rat {
    let d = rng.gen_range(1..=max_den);
    rat::rat(rng.gen_range(-span * d..=span * d), d)
}

/// Rational strictly between `lo` and `hi`, on a grid of step `(hi-lo)/steps`.
pub fn rational_between<R: Rng>(rng: &mut R, lo: &Rat, hi: &Rat, steps: i64) -> Rat {
    let k = rng.gen_range(1..steps);
    lo + (hi - lo) * rat::rat(k, steps)
}

/// `count` distinct sorted rationals.
pub fn distinct_rationals<R: Rng>(rng: &mut R, count: usize, span: i64, max_den: i64) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(count);
    while out.len() < count {
        let q = rational(rng, span, max_den);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A finite configuration with `r` arcs.
pub fn finite_config<R: Rng>(rng: &mut R, r: usize) -> IntervalConfig {
    let b = distinct_rationals(rng, 2 * r, 20, 4);
    let pairs: Vec<(Rat, Rat)> = b.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    IntervalConfig::from_finite(&pairs).expect("sorted distinct boundaries")
}

/// Invertible map with small integer coefficients.
pub fn moebius<R: Rng>(rng: &mut R) -> Moebius {
    loop {
        let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-6..=6)).collect();
        if let Ok(m) = Moebius::from_ints(c[0], c[1], c[2], c[3]) {
            return m;
        }
    }
}

/// A configuration with `r` arcs, moved by a random map half of the time
/// so that infinity may lie on or inside an arc.
pub fn config<R: Rng>(rng: &mut R, r: usize) -> IntervalConfig {
    let c = finite_config(rng, r);
    if rng.gen_bool(0.5) {
        c.image(&moebius(rng))
    } else {
        c
    }
}

pub fn model<R: Rng>(rng: &mut R, r: usize) -> ConicModel {
    ConicModel::new(distinct_rationals(rng, 2 * r, 10, 3)).expect("distinct roots")
}

/// A rational point on the fibre over a random interior `x`, turned by a
/// random rational rotation; `None` when the fibre search fails.
pub fn surface_point<R: Rng>(rng: &mut R, m: &ConicModel) -> Option<SurfPoint> {
    let i = rng.gen_range(0..m.r());
    let (a, b) = (&m.roots()[2 * i], &m.roots()[2 * i + 1]);
    let steps = rng.gen_range(6..=40);
    let x = rational_between(rng, a, b, steps);
    let p = m.fiber_point(&x, 400)?;
    Some(turn(rng, &p))
}

/// The point turned by `ψ(λ)` for a random small rational `λ`.
pub fn turn<R: Rng>(rng: &mut R, p: &SurfPoint) -> SurfPoint {
    let rot = psi(&rational(rng, 3, 5));
    let (y, z) = rot.apply(&p.y, &p.z);
    SurfPoint::new(p.x.clone(), y, z)
}

/// Input for twist synthesis: transported pairs on distinct fibres and
/// pinned fibres carrying rational points.
#[derive(Clone, Debug)]
pub struct TwistInstance {
    pub model: ConicModel,
    pub pairs: Vec<(SurfPoint, SurfPoint)>,
    pub pins: Vec<Rat>,
}

/// A model with `r` arcs, `n` pairs and `m` pins; `None` if rational fibre
/// points are not found quickly.
pub fn twist_instance<R: Rng>(rng: &mut R, r: usize, n: usize, m: usize) -> Option<TwistInstance> {
    let model = model(rng, r);
    let mut used: Vec<Rat> = Vec::new();
    let mut pairs = Vec::new();
    let mut pins = Vec::new();
    for attempt in 0..20 * (n + m) {
        if pairs.len() == n && pins.len() == m {
            break;
        }
        let Some(p) = surface_point(rng, &model) else {
            continue;
        };
        if used.contains(&p.x) {
            continue;
        }
        used.push(p.x.clone());
        if pairs.len() < n && (pins.len() == m || attempt % 2 == 0) {
            let q = turn(rng, &p);
            pairs.push((p, q));
        } else {
            pins.push(p.x);
        }
    }
    (pairs.len() == n && pins.len() == m).then_some(TwistInstance { model, pairs, pins })
}

/// A closed arc, finite or through infinity, with distinct endpoints.
pub fn interval<R: Rng>(rng: &mut R) -> Interval {
    let c = config(rng, 1);
    c.intervals()[0].clone()
}

/// Random rectangle union on the integer grid `[0, 8]²`, endpoints at
/// half-integer points of the region, and a few forbidden lines on the
/// half-integer grid avoiding the endpoint coordinates.
pub fn path_query<R: Rng>(rng: &mut R) -> PathQuery {
    loop {
        let n = rng.gen_range(1..=4);
        let rects: Vec<Rect> = (0..n)
            .map(|_| {
                let x0 = rng.gen_range(0..8);
                let y0 = rng.gen_range(0..8);
                let x1 = rng.gen_range(x0..=8);
                let y1 = rng.gen_range(y0..=8);
                Rect::from_ints((x0, x1), (y0, y1)).expect("ordered")
            })
            .collect();
        let region = Region::new(rects);
        let grid: Vec<Pt> = (0..=16)
            .flat_map(|i| (0..=16).map(move |j| Pt::new(rat::rat(i, 2), rat::rat(j, 2))))
            .filter(|p| region.contains(p))
            .collect();
        let (Some(start), Some(end)) = (grid.choose(rng), grid.choose(rng)) else {
            continue;
        };
        let (start, end) = (start.clone(), end.clone());
        let mut forbidden = |avoid: [&Rat; 2]| -> Vec<Rat> {
            let k = rng.gen_range(0..=3);
            let mut out: Vec<Rat> = Vec::new();
            for _ in 0..k {
                let v = rat::rat(rng.gen_range(0..=16), 2);
                if !avoid.contains(&&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
            out
        };
        let forbidden_x = forbidden([&start.x, &end.x]);
        let forbidden_y = forbidden([&start.y, &end.y]);
        return PathQuery {
            region,
            start,
            end,
            forbidden_x,
            forbidden_y,
        };
    }
}
