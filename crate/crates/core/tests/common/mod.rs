//! Independent oracles. None of these call the library's decision code;
//! they share only the value types.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use realconic::planner::{PathQuery, Pt};
use realconic::projline::{IntervalConfig, ProjPoint};
use realconic::Rat;

/// A point of the projective line as a rational pair.
pub type Hom = (Rat, Rat);

pub fn hom(p: &ProjPoint) -> Hom {
    let (a, b) = p.coords();
    (Rat::from(a.clone()), Rat::from(b.clone()))
}

/// Ordering key: finite values ascending, infinity last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Key {
    Fin(Rat),
    Inf,
}

pub fn key(p: &Hom) -> Key {
    if p.1.is_zero() {
        Key::Inf
    } else {
        Key::Fin(&p.0 / &p.1)
    }
}

/// Strictly inside the positively oriented arc from `s` to `e`.
pub fn strictly_inside(s: &Key, e: &Key, z: &Key) -> bool {
    if s < e {
        s < z && z < e
    } else {
        z > s || z < e
    }
}

/// A point strictly inside the arc from `s` to `e`.
pub fn inside_point(s: &Key, e: &Key) -> Hom {
    let one = Rat::one();
    match (s, e) {
        (Key::Fin(a), Key::Fin(b)) if a < b => ((a + b) / Rat::from_integer(2.into()), one),
        (Key::Fin(a), _) => (a + &one, one),
        (Key::Inf, Key::Fin(b)) => (b - &one, one),
        (Key::Inf, Key::Inf) => unreachable!("degenerate arc"),
    }
}

/// Null vector of a 3×4 rational system of rank 3 (row reduction).
fn null_vector(mut rows: Vec<[Rat; 4]>) -> Option<[Rat; 4]> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..4 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for k in 0..4 {
            rows[r][k] = &rows[r][k] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..4 {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != 3 {
        return None;
    }
    let free = (0..4).find(|c| !pivots.contains(c))?;
    let mut v: [Rat; 4] = Default::default();
    v[free] = Rat::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -&rows[row][free];
    }
    Some(v)
}

/// `[a, b; c, d]` with `M pᵢ ∝ qᵢ`, from the linear conditions
/// `(a p₀ + b p₁) q₁ - (c p₀ + d p₁) q₀ = 0`.
pub fn map_from_triples(p: &[Hom; 3], q: &[Hom; 3]) -> Option<[Rat; 4]> {
    let rows: Vec<[Rat; 4]> = (0..3)
        .map(|i| {
            let (p0, p1) = &p[i];
            let (q0, q1) = &q[i];
            [p0 * q1, p1 * q1, -(p0 * q0), -(p1 * q0)]
        })
        .collect();
    let m = null_vector(rows)?;
    let det = &m[0] * &m[3] - &m[1] * &m[2];
    (!det.is_zero()).then_some(m)
}

pub fn apply(m: &[Rat; 4], p: &Hom) -> Hom {
    (&m[0] * &p.0 + &m[1] * &p.1, &m[2] * &p.0 + &m[3] * &p.1)
}

fn arcs(c: &IntervalConfig) -> Vec<(Key, Key)> {
    c.intervals()
        .iter()
        .map(|i| (key(&hom(i.start())), key(&hom(i.end()))))
        .collect()
}

/// Does `m` send every arc of `from` onto some arc of `to` (bijectively)?
pub fn maps_config(m: &[Rat; 4], from: &IntervalConfig, to: &IntervalConfig) -> bool {
    let src = arcs(from);
    let dst = arcs(to);
    let mut used = vec![false; dst.len()];
    for (s, e) in &src {
        let to_hom = |k: &Key| match k {
            Key::Fin(v) => (v.clone(), Rat::one()),
            Key::Inf => (Rat::one(), Rat::zero()),
        };
        let is = key(&apply(m, &to_hom(s)));
        let ie = key(&apply(m, &to_hom(e)));
        let iz = key(&apply(m, &inside_point(s, e)));
        let Some(j) = dst.iter().position(|(ds, de)| {
            let ends = (&is == ds && &ie == de) || (&is == de && &ie == ds);
            ends && strictly_inside(ds, de, &iz)
        }) else {
            return false;
        };
        if used[j] {
            return false;
        }
        used[j] = true;
    }
    true
}

/// Brute force over all images of three anchor points: boundary points for
/// `r ≥ 2`, start / inside / end for a single arc.
pub fn equivalent(from: &IntervalConfig, to: &IntervalConfig) -> bool {
    if from.len() != to.len() {
        return false;
    }
    if from.len() <= 1 {
        return true;
    }
    let fb: Vec<Hom> = from
        .intervals()
        .iter()
        .flat_map(|i| [hom(i.start()), hom(i.end())])
        .collect();
    let tb: Vec<Hom> = to
        .intervals()
        .iter()
        .flat_map(|i| [hom(i.start()), hom(i.end())])
        .collect();
    let n = tb.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let p = [fb[0].clone(), fb[1].clone(), fb[2].clone()];
                let q = [tb[i].clone(), tb[j].clone(), tb[k].clone()];
                if let Some(m) = map_from_triples(&p, &q) {
                    if maps_config(&m, from, to) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// All lattice vectors `[d, m₁..m_m]` with `D² = -1`, `D·K = -1` and
/// `|d| ≤ bound`, by pruned enumeration.
pub fn brute_exceptional(m: usize, bound: i64) -> BTreeSet<Vec<i64>> {
    fn rec(
        m: usize,
        prefix: &mut Vec<i64>,
        sq_left: i64,
        sum_target: i64,
        out: &mut BTreeSet<Vec<i64>>,
        d: i64,
    ) {
        if prefix.len() == m {
            if sq_left == 0 && prefix.iter().sum::<i64>() == sum_target {
                let mut v = vec![d];
                v.extend(prefix.iter());
                out.insert(v);
            }
            return;
        }
        let r = (sq_left as f64).sqrt() as i64 + 1;
        for x in -r..=r {
            if x * x <= sq_left {
                prefix.push(x);
                rec(m, prefix, sq_left - x * x, sum_target, out, d);
                prefix.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for d in -bound..=bound {
        // d² - Σ mᵢ² = -1 and -3d - Σ mᵢ = -1
        rec(m, &mut Vec::new(), d * d + 1, 1 - 3 * d, &mut out, d);
    }
    out
}

/// Reachability on the grid of step `h` covering the bounding box: moves
/// between neighbouring grid points whose connecting segment lies in the
/// region and does not run along a forbidden line.
pub fn flood_fill(q: &PathQuery, h: &Rat) -> bool {
    let coords = |f: &dyn Fn(&Pt) -> Rat, lo: &dyn Fn(&realconic::planner::Rect) -> Rat, hi: &dyn Fn(&realconic::planner::Rect) -> Rat| {
        let min = q.region.rects.iter().map(lo).chain([f(&q.start), f(&q.end)]).min().unwrap();
        let max = q.region.rects.iter().map(hi).chain([f(&q.start), f(&q.end)]).max().unwrap();
        let mut v = Vec::new();
        let mut x = min;
        while x <= max {
            v.push(x.clone());
            x += h;
        }
        v
    };
    let xs = coords(&|p: &Pt| p.x.clone(), &|r| r.x0.clone(), &|r| r.x1.clone());
    let ys = coords(&|p: &Pt| p.y.clone(), &|r| r.y0.clone(), &|r| r.y1.clone());
    let idx = |v: &[Rat], t: &Rat| v.iter().position(|x| x == t).expect("on grid");
    let start = (idx(&xs, &q.start.x), idx(&ys, &q.start.y));
    let goal = (idx(&xs, &q.end.x), idx(&ys, &q.end.y));
    let two = Rat::from_integer(2.into());
    let mut seen = vec![vec![false; ys.len()]; xs.len()];
    let mut queue = VecDeque::from([start]);
    seen[start.0][start.1] = true;
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == goal {
            return true;
        }
        let mut next = Vec::new();
        if !q.forbidden_y.contains(&ys[j]) {
            for ni in [i.wrapping_sub(1), i + 1] {
                if ni < xs.len() {
                    let mid = Pt::new((&xs[i] + &xs[ni]) / &two, ys[j].clone());
                    if q.region.contains(&mid) && q.region.contains(&Pt::new(xs[ni].clone(), ys[j].clone())) {
                        next.push((ni, j));
                    }
                }
            }
        }
        if !q.forbidden_x.contains(&xs[i]) {
            for nj in [j.wrapping_sub(1), j + 1] {
                if nj < ys.len() {
                    let mid = Pt::new(xs[i].clone(), (&ys[j] + &ys[nj]) / &two);
                    if q.region.contains(&mid) && q.region.contains(&Pt::new(xs[i].clone(), ys[nj].clone())) {
                        next.push((i, nj));
                    }
                }
            }
        }
        for (a, b) in next {
            if !seen[a][b] {
                seen[a][b] = true;
                queue.push_back((a, b));
            }
        }
    }
    false
}

/// Half the gcd of all pairwise coordinate gaps (rectangle edges, forbidden
/// lines, endpoints), so every such value lies on the grid.
pub fn flood_step(q: &PathQuery) -> Rat {
    let mut vals: Vec<Rat> = Vec::new();
    for r in &q.region.rects {
        vals.extend([r.x0.clone(), r.x1.clone(), r.y0.clone(), r.y1.clone()]);
    }
    vals.extend(q.forbidden_x.iter().cloned());
    vals.extend(q.forbidden_y.iter().cloned());
    vals.extend([q.start.x.clone(), q.start.y.clone(), q.end.x.clone(), q.end.y.clone()]);
    let base = vals[0].clone();
    let mut g = Rat::zero();
    for v in &vals {
        g = rat_gcd(&g, &(v - &base).abs());
    }
    if g.is_zero() {
        g = Rat::one();
    }
    g / Rat::from_integer(2.into())
}

fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let den = a.denom().lcm(b.denom());
    let an = a.numer() * (&den / a.denom());
    let bn = b.numer() * (&den / b.denom());
    Rat::new(an.gcd(&bn), den)
}
