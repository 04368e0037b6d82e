//! Rectilinear path planning inside a union of closed rational rectangles,
//! with forbidden vertical lines `x = c` (no vertical segment may run along
//! them) and forbidden horizontal lines `y = c`.
//!
//! Every rectangle edge, forbidden line and endpoint coordinate is a cut.
//! Membership in the region is constant on each piece of the resulting
//! arrangement, so it suffices to search the grid made of the cut values
//! and the midpoints between consecutive cuts; a 0-1 BFS over
//! (grid point, heading) returns a path with the fewest segments.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Self {
        Pt { x, y }
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat::format_rat(&self.x), rat::format_rat(&self.y))
    }
}

/// `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
}

impl Rect {
    pub fn new(x: (Rat, Rat), y: (Rat, Rat)) -> Result<Self> {
        if x.0 > x.1 || y.0 > y.1 {
            return Err(Error::InvalidRect(format!(
                "[{}, {}] × [{}, {}] has min > max",
                rat::format_rat(&x.0),
                rat::format_rat(&x.1),
                rat::format_rat(&y.0),
                rat::format_rat(&y.1)
            )));
        }
        Ok(Rect {
            x0: x.0,
            x1: x.1,
            y0: y.0,
            y1: y.1,
        })
    }

    pub fn from_ints(x: (i64, i64), y: (i64, i64)) -> Result<Self> {
        Self::new((rat::int(x.0), rat::int(x.1)), (rat::int(y.0), rat::int(y.1)))
    }

    pub fn contains(&self, p: &Pt) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub rects: Vec<Rect>,
}

impl Region {
    pub fn new(rects: Vec<Rect>) -> Self {
        Region { rects }
    }

    pub fn contains(&self, p: &Pt) -> bool {
        self.rects.iter().any(|r| r.contains(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub from: Pt,
    pub to: Pt,
}

impl Segment {
    pub fn is_horizontal(&self) -> bool {
        self.from.y == self.to.y && self.from.x != self.to.x
    }

    pub fn is_vertical(&self) -> bool {
        self.from.x == self.to.x && self.from.y != self.to.y
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SegPath {
    pub segments: Vec<Segment>,
}

/// Inputs shared by the planner and the validator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathQuery {
    pub region: Region,
    pub start: Pt,
    pub end: Pt,
    pub forbidden_x: Vec<Rat>,
    pub forbidden_y: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Heading {
    None,
    H,
    V,
}

/// Cut values plus midpoints of consecutive cuts, ascending.
fn axis_nodes(cuts: BTreeSet<Rat>) -> Vec<Rat> {
    let cuts: Vec<Rat> = cuts.into_iter().collect();
    let mut out = Vec::with_capacity(2 * cuts.len());
    for (i, c) in cuts.iter().enumerate() {
        if i > 0 {
            out.push((&cuts[i - 1] + c) / rat::int(2));
        }
        out.push(c.clone());
    }
    out
}

fn check_endpoint(q: &PathQuery, p: &Pt) -> Result<()> {
    if !q.region.contains(p) {
        return Err(Error::OutsideRegion);
    }
    if q.forbidden_x.contains(&p.x) || q.forbidden_y.contains(&p.y) {
        return Err(Error::OnForbiddenLine);
    }
    Ok(())
}

pub fn find_rect_path(q: &PathQuery) -> Result<Option<SegPath>> {
    check_endpoint(q, &q.start)?;
    check_endpoint(q, &q.end)?;
    if q.start == q.end {
        return Ok(Some(SegPath::default()));
    }
    let mut xcuts: BTreeSet<Rat> = q.forbidden_x.iter().cloned().collect();
    let mut ycuts: BTreeSet<Rat> = q.forbidden_y.iter().cloned().collect();
    for r in &q.region.rects {
        xcuts.extend([r.x0.clone(), r.x1.clone()]);
        ycuts.extend([r.y0.clone(), r.y1.clone()]);
    }
    xcuts.extend([q.start.x.clone(), q.end.x.clone()]);
    ycuts.extend([q.start.y.clone(), q.end.y.clone()]);
    let xs = axis_nodes(xcuts);
    let ys = axis_nodes(ycuts);
    let fx: BTreeSet<&Rat> = q.forbidden_x.iter().collect();
    let fy: BTreeSet<&Rat> = q.forbidden_y.iter().collect();

    let at = |i: usize, j: usize| Pt::new(xs[i].clone(), ys[j].clone());
    let inside = |i: usize, j: usize| q.region.contains(&at(i, j));
    let half = Rat::one() / rat::int(2);
    // an edge between adjacent grid nodes has no cut strictly inside, so its
    // midpoint decides membership
    let h_edge = |i: usize, j: usize| {
        !fy.contains(&ys[j])
            && q.region
                .contains(&Pt::new((&xs[i] + &xs[i + 1]) * &half, ys[j].clone()))
    };
    let v_edge = |i: usize, j: usize| {
        !fx.contains(&xs[i])
            && q.region
                .contains(&Pt::new(xs[i].clone(), (&ys[j] + &ys[j + 1]) * &half))
    };

    let si = xs.binary_search(&q.start.x).expect("start x is a cut");
    let sj = ys.binary_search(&q.start.y).expect("start y is a cut");
    let ei = xs.binary_search(&q.end.x).expect("end x is a cut");
    let ej = ys.binary_search(&q.end.y).expect("end y is a cut");

    type State = (usize, usize, Heading);
    let mut dist: HashMap<State, usize> = HashMap::new();
    let mut parent: HashMap<State, State> = HashMap::new();
    let mut deque: VecDeque<State> = VecDeque::new();
    let start: State = (si, sj, Heading::None);
    dist.insert(start, 0);
    deque.push_back(start);
    let mut goal = None;
    while let Some(s) = deque.pop_front() {
        let (i, j, h) = s;
        let d = dist[&s];
        if (i, j) == (ei, ej) {
            goal = Some(s);
            break;
        }
        let mut moves: Vec<(usize, usize, Heading)> = Vec::with_capacity(4);
        if i + 1 < xs.len() && h_edge(i, j) {
            moves.push((i + 1, j, Heading::H));
        }
        if i > 0 && h_edge(i - 1, j) {
            moves.push((i - 1, j, Heading::H));
        }
        if j + 1 < ys.len() && v_edge(i, j) {
            moves.push((i, j + 1, Heading::V));
        }
        if j > 0 && v_edge(i, j - 1) {
            moves.push((i, j - 1, Heading::V));
        }
        for next in moves {
            debug_assert!(inside(next.0, next.1));
            let cost = usize::from(next.2 != h);
            let nd = d + cost;
            if dist.get(&next).is_none_or(|&old| nd < old) {
                dist.insert(next, nd);
                parent.insert(next, s);
                if cost == 0 {
                    deque.push_front(next);
                } else {
                    deque.push_back(next);
                }
            }
        }
    }
    let Some(goal) = goal else {
        return Ok(None);
    };
    let mut nodes = vec![goal];
    while let Some(p) = parent.get(nodes.last().expect("nonempty")) {
        nodes.push(*p);
    }
    nodes.reverse();

    let mut segments: Vec<Segment> = Vec::new();
    let mut heading = Heading::None;
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.2 == heading {
            segments.last_mut().expect("heading set").to = at(b.0, b.1);
        } else {
            segments.push(Segment {
                from: at(a.0, a.1),
                to: at(b.0, b.1),
            });
            heading = b.2;
        }
    }
    let path = SegPath { segments };
    validate_path(q, &path).map_err(|e| Error::Precondition(format!("planner produced {e}")))?;
    Ok(Some(path))
}

/// `Ok` when `path` runs from start to end through the region by
/// alternating horizontal and vertical segments avoiding forbidden lines;
/// otherwise a description of the first defect.
pub fn validate_path(q: &PathQuery, path: &SegPath) -> std::result::Result<(), String> {
    let segs = &path.segments;
    if segs.is_empty() {
        return if q.start == q.end {
            Ok(())
        } else {
            Err("empty path between distinct points".into())
        };
    }
    if segs[0].from != q.start {
        return Err(format!("path starts at {}, not {}", segs[0].from, q.start));
    }
    if segs[segs.len() - 1].to != q.end {
        return Err(format!("path ends at {}, not {}", segs[segs.len() - 1].to, q.end));
    }
    for (k, s) in segs.iter().enumerate() {
        if k > 0 {
            let prev = &segs[k - 1];
            if prev.to != s.from {
                return Err(format!("segment {k} does not continue from {}", prev.to));
            }
            if prev.is_horizontal() == s.is_horizontal() {
                return Err(format!("segments {} and {k} are collinear", k - 1));
            }
        }
        let (breaks, at): (Vec<Rat>, Box<dyn Fn(&Rat) -> Pt>) = if s.is_horizontal() {
            if q.forbidden_y.contains(&s.from.y) {
                return Err(format!("segment {k} runs along a forbidden line y = {}", rat::format_rat(&s.from.y)));
            }
            let y = s.from.y.clone();
            (
                span_breaks(&s.from.x, &s.to.x, q.region.rects.iter().flat_map(|r| [&r.x0, &r.x1])),
                Box::new(move |x: &Rat| Pt::new(x.clone(), y.clone())),
            )
        } else if s.is_vertical() {
            if q.forbidden_x.contains(&s.from.x) {
                return Err(format!("segment {k} runs along a forbidden line x = {}", rat::format_rat(&s.from.x)));
            }
            let x = s.from.x.clone();
            (
                span_breaks(&s.from.y, &s.to.y, q.region.rects.iter().flat_map(|r| [&r.y0, &r.y1])),
                Box::new(move |y: &Rat| Pt::new(x.clone(), y.clone())),
            )
        } else {
            return Err(format!("segment {k} ({s}) is not axis-parallel with positive length"));
        };
        let mut probes = breaks.clone();
        probes.extend(breaks.windows(2).map(|w| (&w[0] + &w[1]) / rat::int(2)));
        if let Some(bad) = probes.iter().map(&at).find(|p| !q.region.contains(p)) {
            return Err(format!("segment {k} leaves the region at {bad}"));
        }
    }
    Ok(())
}

/// Endpoints of `[a, b]` (either order) and the edge values strictly
/// between, ascending.
fn span_breaks<'a>(a: &Rat, b: &Rat, edges: impl Iterator<Item = &'a Rat>) -> Vec<Rat> {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut set: BTreeSet<Rat> = edges.filter(|e| lo < *e && *e < hi).cloned().collect();
    set.insert(lo.clone());
    set.insert(hi.clone());
    set.into_iter().collect()
}

impl SegPath {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Total Manhattan length.
    pub fn length(&self) -> Rat {
        self.segments.iter().fold(Rat::zero(), |acc, s| {
            let dx = &s.to.x - &s.from.x;
            let dy = &s.to.y - &s.from.y;
            acc + num_traits::Signed::abs(&dx) + num_traits::Signed::abs(&dy)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn pt(x: Rat, y: Rat) -> Pt {
        Pt::new(x, y)
    }

    fn query(rects: Vec<Rect>, start: Pt, end: Pt) -> PathQuery {
        PathQuery {
            region: Region::new(rects),
            start,
            end,
            forbidden_x: vec![],
            forbidden_y: vec![],
        }
    }

    #[test]
    fn trivial_path() {
        let q = query(
            vec![Rect::from_ints((0, 1), (0, 1)).unwrap()],
            pt(rat(1, 2), rat(1, 2)),
            pt(rat(1, 2), rat(1, 2)),
        );
        assert_eq!(find_rect_path(&q).unwrap(), Some(SegPath::default()));
    }

    #[test]
    fn l_shaped_region() {
        let q = query(
            vec![
                Rect::from_ints((0, 2), (0, 1)).unwrap(),
                Rect::from_ints((1, 2), (0, 3)).unwrap(),
            ],
            pt(rat(1, 2), rat(1, 2)),
            pt(rat(3, 2), rat(5, 2)),
        );
        let path = find_rect_path(&q).unwrap().unwrap();
        assert_eq!(
            path.segments,
            vec![
                Segment { from: pt(rat(1, 2), rat(1, 2)), to: pt(rat(3, 2), rat(1, 2)) },
                Segment { from: pt(rat(3, 2), rat(1, 2)), to: pt(rat(3, 2), rat(5, 2)) },
            ]
        );
    }

    #[test]
    fn disconnected_and_errors() {
        let rects = vec![
            Rect::from_ints((0, 1), (0, 1)).unwrap(),
            Rect::from_ints((2, 3), (0, 1)).unwrap(),
        ];
        let q = query(rects.clone(), pt(rat(1, 2), rat(1, 2)), pt(rat(5, 2), rat(1, 2)));
        assert_eq!(find_rect_path(&q).unwrap(), None);
        let q = query(rects.clone(), pt(rat(1, 2), rat(1, 2)), pt(rat(3, 2), rat(1, 2)));
        assert_eq!(find_rect_path(&q), Err(Error::OutsideRegion));
        let mut q = query(rects, pt(rat(1, 2), rat(1, 2)), pt(rat(1, 4), rat(1, 4)));
        q.forbidden_x = vec![rat(1, 2)];
        assert_eq!(find_rect_path(&q), Err(Error::OnForbiddenLine));
        assert!(Rect::from_ints((1, 0), (0, 1)).is_err());
    }

    #[test]
    fn forbidden_lines_force_detours() {
        // a U-shaped region forces down, across, up
        let q = query(
            vec![
                Rect::from_ints((0, 1), (0, 3)).unwrap(),
                Rect::from_ints((0, 3), (0, 1)).unwrap(),
                Rect::from_ints((2, 3), (0, 3)).unwrap(),
            ],
            pt(rat(1, 2), rat(5, 2)),
            pt(rat(5, 2), rat(5, 2)),
        );
        let path = find_rect_path(&q).unwrap().unwrap();
        assert_eq!(path.len(), 3);
        let mut blocked = q.clone();
        blocked.forbidden_y = vec![rat(1, 2), rat(1, 4), rat(3, 4), int(0), int(1)];
        // rows between the cuts are still free
        assert!(find_rect_path(&blocked).unwrap().is_some());
        // a forbidden vertical line only blocks travel along it
        let mut q = query(
            vec![Rect::from_ints((0, 4), (0, 1)).unwrap()],
            pt(rat(1, 2), rat(1, 2)),
            pt(rat(7, 2), rat(1, 2)),
        );
        q.forbidden_x = vec![int(2)];
        assert_eq!(find_rect_path(&q).unwrap().unwrap().len(), 1);
        // a thin corridor whose only row is forbidden
        let mut q = query(
            vec![
                Rect::from_ints((0, 1), (0, 1)).unwrap(),
                Rect::from_ints((1, 3), (1, 1)).unwrap(),
                Rect::from_ints((3, 4), (0, 1)).unwrap(),
            ],
            pt(rat(1, 2), rat(1, 2)),
            pt(rat(7, 2), rat(1, 2)),
        );
        assert!(find_rect_path(&q).unwrap().is_some());
        q.forbidden_y = vec![int(1)];
        assert_eq!(find_rect_path(&q).unwrap(), None);
    }

    #[test]
    fn validator_rejects_defects() {
        let q = query(
            vec![
                Rect::from_ints((0, 2), (0, 1)).unwrap(),
                Rect::from_ints((1, 2), (0, 3)).unwrap(),
            ],
            pt(rat(1, 2), rat(1, 2)),
            pt(rat(3, 2), rat(5, 2)),
        );
        let through_gap = SegPath {
            segments: vec![
                Segment { from: q.start.clone(), to: pt(rat(1, 2), rat(5, 2)) },
                Segment { from: pt(rat(1, 2), rat(5, 2)), to: q.end.clone() },
            ],
        };
        assert!(validate_path(&q, &through_gap).unwrap_err().contains("leaves the region"));
        let diagonal = SegPath {
            segments: vec![Segment { from: q.start.clone(), to: q.end.clone() }],
        };
        assert!(validate_path(&q, &diagonal).is_err());
        let mut forbidden = q.clone();
        forbidden.forbidden_y = vec![rat(1, 2)];
        let path = find_rect_path(&q).unwrap().unwrap();
        assert!(validate_path(&forbidden, &path).unwrap_err().contains("forbidden"));
    }
}
