//! The degree-2 del Pezzo biconic model
//! `X = {x² m₁(a,b) + y² m₂(a,b) + z² m₃(a,b) = 0} ⊂ ℙ² × ℙ¹`,
//! its conic bundle `π₁ : X -> ℙ¹`, and the Geiser involution (deck
//! transformation of `X -> ℙ²`), which yields the second conic bundle
//! `π₂ = π₁ ∘ geiser`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::projline::{Interval, IntervalConfig, ProjPoint};
use crate::rat::{self, Rat};

/// `α a² + β ab + γ b²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinQuadForm {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

impl BinQuadForm {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
            return Err(Error::InvalidForms("form is identically zero".into()));
        }
        Ok(BinQuadForm { alpha, beta, gamma })
    }

    pub fn from_ints(alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        Self::new(rat::int(alpha), rat::int(beta), rat::int(gamma))
    }

    /// `-(a - s b)(a - e b)`: vanishes at `s` and `e`, non-negative exactly
    /// on `[s, e]`.
    pub fn nonnegative_on(s: &Rat, e: &Rat) -> Self {
        BinQuadForm {
            alpha: -Rat::one(),
            beta: s + e,
            gamma: -(s * e),
        }
    }

    /// `-(a² + n b²)`.
    pub fn negative_definite(n: i64) -> Self {
        BinQuadForm {
            alpha: -Rat::one(),
            beta: Rat::zero(),
            gamma: rat::int(-n),
        }
    }

    pub fn eval(&self, a: &Rat, b: &Rat) -> Rat {
        &self.alpha * a * a + &self.beta * a * b + &self.gamma * b * b
    }

    pub fn eval_at(&self, t: &ProjPoint) -> Rat {
        let (a, b) = t.coords();
        self.eval(&Rat::from(a.clone()), &Rat::from(b.clone()))
    }

    pub fn discriminant(&self) -> Rat {
        &self.beta * &self.beta - rat::int(4) * &self.alpha * &self.gamma
    }

    pub fn scale(&self, k: &Rat) -> Self {
        BinQuadForm {
            alpha: &self.alpha * k,
            beta: &self.beta * k,
            gamma: &self.gamma * k,
        }
    }

    /// Real roots in `ℙ¹`, each listed once.
    pub fn real_roots(&self) -> Result<Vec<ProjPoint>> {
        let disc = self.discriminant();
        if disc.is_negative() {
            return Ok(Vec::new());
        }
        if self.alpha.is_zero() {
            // b (β a + γ b)
            let mut roots = vec![ProjPoint::infinity()];
            if !self.beta.is_zero() {
                roots.push(ProjPoint::finite(&(-&self.gamma / &self.beta)));
            }
            return Ok(roots);
        }
        let sq = rat::rat_sqrt(&disc).ok_or(Error::IrrationalBoundary)?;
        let two_a = rat::int(2) * &self.alpha;
        let r1 = (-&self.beta - &sq) / &two_a;
        let r2 = (-&self.beta + &sq) / &two_a;
        let mut roots = vec![ProjPoint::finite(&r1)];
        if r1 != r2 {
            roots.push(ProjPoint::finite(&r2));
        }
        Ok(roots)
    }
}

impl fmt::Display for BinQuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})a² + ({})ab + ({})b²",
            rat::format_rat(&self.alpha),
            rat::format_rat(&self.beta),
            rat::format_rat(&self.gamma)
        )
    }
}

/// Resultant of two binary quadratics; zero iff they share a root in `ℙ¹(ℂ)`.
pub fn resultant(p: &BinQuadForm, q: &BinQuadForm) -> Rat {
    let ac = &p.alpha * &q.gamma - &q.alpha * &p.gamma;
    let ab = &p.alpha * &q.beta - &q.alpha * &p.beta;
    let bc = &p.beta * &q.gamma - &q.beta * &p.gamma;
    &ac * &ac - ab * bc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiconicModel {
    forms: [BinQuadForm; 3],
}

impl BiconicModel {
    /// Checks that `m₁ m₂ m₃` has six distinct complex roots.
    pub fn new(m1: BinQuadForm, m2: BinQuadForm, m3: BinQuadForm) -> Result<Self> {
        let forms = [m1, m2, m3];
        for (i, f) in forms.iter().enumerate() {
            if f.discriminant().is_zero() {
                return Err(Error::InvalidForms(format!("m{} has a double root", i + 1)));
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if resultant(&forms[i], &forms[j]).is_zero() {
                return Err(Error::InvalidForms(format!(
                    "m{} and m{} share a root",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(BiconicModel { forms })
    }

    pub fn forms(&self) -> &[BinQuadForm; 3] {
        &self.forms
    }

    /// Number of forms with real roots.
    pub fn k(&self) -> usize {
        self.forms
            .iter()
            .filter(|f| f.discriminant().is_positive())
            .count()
    }

    /// Fibre coefficients `(m₁(t), m₂(t), m₃(t))`.
    pub fn fiber_coefficients(&self, t: &ProjPoint) -> [Rat; 3] {
        [
            self.forms[0].eval_at(t),
            self.forms[1].eval_at(t),
            self.forms[2].eval_at(t),
        ]
    }

    /// `(A, B, C)` with `x² m₁ + y² m₂ + z² m₃ = A a² + B ab + C b²`.
    pub fn fiber_quadratic(&self, xyz: &[BigInt; 3]) -> BinQuadForm {
        let sq: Vec<Rat> = xyz.iter().map(|v| Rat::from(v * v)).collect();
        let mut q = BinQuadForm {
            alpha: Rat::zero(),
            beta: Rat::zero(),
            gamma: Rat::zero(),
        };
        for (s, f) in sq.iter().zip(&self.forms) {
            q.alpha += s * &f.alpha;
            q.beta += s * &f.beta;
            q.gamma += s * &f.gamma;
        }
        q
    }

    pub fn on_surface(&self, p: &BiPoint) -> bool {
        self.fiber_quadratic(&p.xyz).eval_at(&p.t).is_zero()
    }

    pub fn scale(&self, k: &Rat) -> BiconicModel {
        BiconicModel {
            forms: [
                self.forms[0].scale(k),
                self.forms[1].scale(k),
                self.forms[2].scale(k),
            ],
        }
    }
}

impl fmt::Display for BiconicModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x²[{}] + y²[{}] + z²[{}] = 0",
            self.forms[0], self.forms[1], self.forms[2]
        )
    }
}

/// A point `((x:y:z), (a:b))` of `ℙ² × ℙ¹`; `xyz` is a primitive integer
/// vector with first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoint {
    xyz: [BigInt; 3],
    pub t: ProjPoint,
}

impl BiPoint {
    pub fn new(xyz: [Rat; 3], t: ProjPoint) -> Result<Self> {
        let v = rat::primitive_integer_vector(&xyz).ok_or(Error::ZeroPoint)?;
        let [x, y, z]: [BigInt; 3] = v.try_into().expect("three coordinates");
        Ok(BiPoint { xyz: [x, y, z], t })
    }

    pub fn from_ints(xyz: [i64; 3], t: (i64, i64)) -> Result<Self> {
        Self::new(xyz.map(rat::int), ProjPoint::from_ints(t.0, t.1)?)
    }

    pub fn xyz(&self) -> &[BigInt; 3] {
        &self.xyz
    }
}

impl fmt::Display for BiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.t.coords();
        write!(
            f,
            "(({}:{}:{}), ({}:{}))",
            self.xyz[0], self.xyz[1], self.xyz[2], a, b
        )
    }
}

/// Deterministic supply of the negative-definite forms used for the
/// missing intervals.
fn definite_supply() -> impl Iterator<Item = BinQuadForm> {
    (1i64..).map(BinQuadForm::negative_definite)
}

/// A biconic model whose interval image is `c`.
///
/// Interval `[s, e]` gives `m_j = -(a - s b)(a - e b)`; the remaining forms
/// are negative definite. A positive-definite choice would make the fibres
/// outside the intervals real for `k < 3`.
pub fn biconic_from_config(c: &IntervalConfig) -> Result<BiconicModel> {
    if c.len() > 3 {
        return Err(Error::TooManyIntervals(c.len()));
    }
    if c.contains_infinity() {
        return Err(Error::MoveInfinityFirst);
    }
    let mut forms: Vec<BinQuadForm> = c
        .intervals()
        .iter()
        .map(|i| {
            let s = i.start().value().expect("finite");
            let e = i.end().value().expect("finite");
            BinQuadForm::nonnegative_on(&s, &e)
        })
        .collect();
    let mut supply = definite_supply();
    while forms.len() < 3 {
        let candidate = supply.next().expect("infinite supply");
        let fresh = !candidate.discriminant().is_zero()
            && forms.iter().all(|f| !resultant(f, &candidate).is_zero());
        if fresh {
            forms.push(candidate);
        }
    }
    let [m1, m2, m3]: [BinQuadForm; 3] = forms.try_into().expect("three forms");
    let model = BiconicModel::new(m1, m2, m3)?;
    let image = biconic_interval_image(&model)?;
    if image != *c {
        return Err(Error::DegenerateImage(format!(
            "constructed image {image} differs from requested {c}"
        )));
    }
    Ok(model)
}

/// Parameters whose fibre has a real point: those where the three
/// coefficients do not share a strict sign. Computed exactly on the
/// partition of `ℙ¹(ℝ)` cut out by the roots of the forms.
pub fn biconic_interval_image(m: &BiconicModel) -> Result<IntervalConfig> {
    let mut roots = Vec::new();
    for f in m.forms() {
        roots.extend(f.real_roots()?);
    }
    roots.sort();
    roots.dedup();
    let real_fiber = |t: &ProjPoint| {
        let s: Vec<i8> = m.fiber_coefficients(t).iter().map(rat::sign).collect();
        !(s.iter().all(|&v| v > 0) || s.iter().all(|&v| v < 0))
    };
    let n = roots.len();
    if n == 0 {
        return if real_fiber(&ProjPoint::infinity()) {
            Err(Error::DegenerateImage("every fibre is real".into()))
        } else {
            Ok(IntervalConfig::empty())
        };
    }
    // gap i runs from roots[i] to roots[i + 1] (cyclically)
    let gap_in: Vec<bool> = (0..n)
        .map(|i| {
            let sample = if n == 1 {
                match roots[0].value() {
                    Some(v) => ProjPoint::finite(&(v + Rat::one())),
                    None => ProjPoint::int(0),
                }
            } else {
                Interval::new(roots[i].clone(), roots[(i + 1) % n].clone())
                    .expect("distinct roots")
                    .interior_sample()
            };
            real_fiber(&sample)
        })
        .collect();
    if gap_in.iter().all(|&g| g) {
        return Err(Error::DegenerateImage("every fibre is real".into()));
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        let before = gap_in[(i + n - 1) % n];
        let after = gap_in[i];
        if !before && !after {
            return Err(Error::DegenerateImage(format!(
                "isolated real fibre over {}",
                roots[i]
            )));
        }
        if !before && after {
            let mut j = (i + 1) % n;
            while gap_in[j] {
                j = (j + 1) % n;
            }
            arcs.push(Interval::new(roots[i].clone(), roots[j].clone())?);
        }
    }
    IntervalConfig::new(arcs)
}

/// The other root of the fibre quadratic through `t0` (Vieta).
fn second_root(q: &BinQuadForm, t0: &ProjPoint) -> Result<ProjPoint> {
    let (a0, b0) = t0.coords();
    let (a0, b0) = (Rat::from(a0.clone()), Rat::from(b0.clone()));
    if q.alpha.is_zero() && q.beta.is_zero() && q.gamma.is_zero() {
        return Err(Error::DegenerateFiber);
    }
    if b0.is_zero() {
        // t0 = (1:0) forces A = 0, so F = b (B a + C b)
        return proj(-&q.gamma, q.beta.clone());
    }
    proj(-(&q.beta * &b0 + &q.alpha * &a0), &q.alpha * &b0)
}

fn proj(a: Rat, b: Rat) -> Result<ProjPoint> {
    let v = rat::primitive_integer_vector(&[a, b]).ok_or(Error::DegenerateFiber)?;
    ProjPoint::new(v[0].clone(), v[1].clone())
}

/// Deck transformation of `X -> ℙ²`: keeps `(x:y:z)` and swaps the two
/// roots of the fibre quadratic in `(a:b)`.
pub fn geiser(m: &BiconicModel, p: &BiPoint) -> Result<BiPoint> {
    if !m.on_surface(p) {
        return Err(Error::NotOnSurface);
    }
    let q = m.fiber_quadratic(&p.xyz);
    Ok(BiPoint {
        xyz: p.xyz.clone(),
        t: second_root(&q, &p.t)?,
    })
}

/// `π₂ = π₁ ∘ geiser`.
pub fn second_fibration(m: &BiconicModel, p: &BiPoint) -> Result<ProjPoint> {
    Ok(geiser(m, p)?.t)
}

/// Fixed points of `geiser`: the fibre quadratic has a double root.
pub fn is_ramification(m: &BiconicModel, p: &BiPoint) -> bool {
    m.fiber_quadratic(&p.xyz).discriminant().is_zero()
}

/// Points over the branch locus with `|x|, |y|, |z| ≤ bound`.
pub fn ramification_points(m: &BiconicModel, bound: i64) -> Vec<BiPoint> {
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in -bound..=bound {
            for z in -bound..=bound {
                let v = [x, y, z];
                if v.iter().fold(0i64, |g, c| g.gcd(c)) != 1 || (x == 0 && first_negative(&v)) {
                    continue;
                }
                let xyz = v.map(BigInt::from);
                let q = m.fiber_quadratic(&xyz);
                if !q.discriminant().is_zero() {
                    continue;
                }
                let t = if q.alpha.is_zero() {
                    ProjPoint::infinity()
                } else {
                    ProjPoint::finite(&(-&q.beta / (rat::int(2) * &q.alpha)))
                };
                let p = BiPoint { xyz, t };
                if m.on_surface(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn first_negative(v: &[i64]) -> bool {
    v.iter().find(|c| **c != 0).is_some_and(|c| *c < 0)
}

/// A rational point of the diagonal conic `Σ cᵢ vᵢ² = 0`, by search over
/// `(y, z)` solving for `x`; at most `budget` candidates are tried.
pub fn diagonal_conic_point(c: &[Rat; 3], budget: u64) -> Option<[Rat; 3]> {
    for i in 0..3 {
        if c[i].is_zero() {
            let mut v = [Rat::zero(), Rat::zero(), Rat::zero()];
            v[i] = Rat::one();
            return Some(v);
        }
    }
    let mut tried = 0u64;
    for total in 1i64.. {
        for y in 0..=total {
            let z = total - y;
            if y.gcd(&z) != 1 {
                continue;
            }
            if tried >= budget {
                return None;
            }
            tried += 1;
            let (y, z) = (rat::int(y), rat::int(z));
            let rhs = -(&c[1] * &y * &y + &c[2] * &z * &z) / &c[0];
            if let Some(x) = rat::rat_sqrt(&rhs) {
                return Some([x, y, z]);
            }
        }
    }
    None
}

/// Second intersection of the conic with the line through `p0` in
/// direction `d`: `F(d) p0 - 2 B(p0, d) d`.
pub fn conic_second_point(c: &[Rat; 3], p0: &[Rat; 3], d: &[Rat; 3]) -> Option<[Rat; 3]> {
    let fd: Rat = (0..3).map(|i| &c[i] * &d[i] * &d[i]).sum();
    let b: Rat = (0..3).map(|i| &c[i] * &p0[i] * &d[i]).sum();
    let two_b = b * rat::int(2);
    let q = [
        &fd * &p0[0] - &two_b * &d[0],
        &fd * &p0[1] - &two_b * &d[1],
        &fd * &p0[2] - &two_b * &d[2],
    ];
    q.iter().any(|v| !v.is_zero()).then_some(q)
}

/// Distinct rational points on the fibre over `t`, found by search and
/// then parametrization through the first point. Fewer than `count` points
/// come back only when the search budget runs out.
pub fn fiber_points(
    m: &BiconicModel,
    t: &ProjPoint,
    count: usize,
    budget: u64,
) -> Result<Vec<BiPoint>> {
    let c = m.fiber_coefficients(t);
    let p0 = diagonal_conic_point(&c, budget).ok_or(Error::WitnessSearchFailed(budget))?;
    let first = BiPoint::new(p0.clone(), t.clone())?;
    let mut out = vec![first];
    let mut tried = 0u64;
    'search: for h in 1i64.. {
        for i in -h..=h {
            for j in -h..=h {
                if out.len() >= count {
                    break 'search;
                }
                if tried >= budget {
                    break 'search;
                }
                if i.abs().max(j.abs()) != h {
                    continue;
                }
                tried += 1;
                let d = [Rat::one(), rat::int(i), rat::int(j)];
                if let Some(q) = conic_second_point(&c, &p0, &d) {
                    let p = BiPoint::new(q, t.clone())?;
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Two points in one fibre of `π₁` with different `π₂`: the two
/// conic bundle structures are distinct. Fibres are tried in a fixed order;
/// each gets at most `min(budget, 300)` search steps.
pub fn distinct_foliations_witness(m: &BiconicModel, budget: u64) -> Result<(BiPoint, BiPoint)> {
    let image = biconic_interval_image(m)?;
    if image.is_empty() {
        return Err(Error::Precondition(
            "the model has no real fibres (k = 0)".into(),
        ));
    }
    // fibres at fractions j/n of each arc, coarse to fine
    let mut candidates = Vec::new();
    for arc in image.intervals() {
        candidates.push(arc.interior_sample());
        if let (Some(s), Some(e)) = (arc.start().value(), arc.end().value()) {
            if s < e {
                for n in 3i64..=16 {
                    for j in (1..n).filter(|j| j.gcd(&n) == 1) {
                        candidates.push(ProjPoint::finite(&(&s + (&e - &s) * rat::rat(j, n))));
                    }
                }
            }
        }
    }
    candidates.dedup();
    for t in candidates {
        let Ok(points) = fiber_points(m, &t, 6, budget.min(300)) else {
            continue;
        };
        let first = &points[0];
        let t2 = second_fibration(m, first)?;
        if let Some(other) = points[1..]
            .iter()
            .find(|p| second_fibration(m, p).is_ok_and(|u| u != t2))
        {
            return Ok((first.clone(), other.clone()));
        }
    }
    Err(Error::WitnessSearchFailed(budget))
}
