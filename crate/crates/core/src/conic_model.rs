//! Canonical exceptional conic bundle models `y² + z² = Q(x)` with
//! `Q(x) = -∏(x - a_i)`, their real points, marked (blown-up) variants and
//! the decision procedures that run on them.
//!
//! The projection `(x, y, z) -> x` is the conic bundle. Its real image is the
//! union of the closed intervals `[a_1, a_2], [a_3, a_4], ..`; the real part
//! has one sphere component over each interval. Blowing up `k` real points
//! of a sphere turns it into the non-orientable surface `N_k`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::projline::{
    config_equiv, config_witnesses, realizable_permutations, ConfigMatch, IntervalConfig, Perm,
};
use crate::rat::{self, Rat};

/// A real point `(x, y, z)` of the affine model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfPoint {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl SurfPoint {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        SurfPoint { x, y, z }
    }
}

impl fmt::Display for SurfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            rat::format_rat(&self.x),
            rat::format_rat(&self.y),
            rat::format_rat(&self.z)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConicModel {
    roots: Vec<Rat>,
    q: RatPoly,
}

impl ConicModel {
    /// Model with singular fibres over `roots`; the roots are sorted here and
    /// must be distinct and of positive even count.
    pub fn new(mut roots: Vec<Rat>) -> Result<Self> {
        roots.sort();
        if roots.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidModel("roots are not distinct".into()));
        }
        if roots.is_empty() || !roots.len().is_multiple_of(2) {
            return Err(Error::InvalidModel(format!(
                "need a positive even number of roots, got {}",
                roots.len()
            )));
        }
        let q = -&RatPoly::from_roots(&roots);
        Ok(ConicModel { roots, q })
    }

    pub fn from_ints(roots: &[i64]) -> Result<Self> {
        Self::new(roots.iter().map(|&r| rat::int(r)).collect())
    }

    /// The model whose interval image is `c`. Every boundary must be finite
    /// and infinity must lie outside `c`.
    pub fn from_config(c: &IntervalConfig) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidModel("at least one interval is required".into()));
        }
        if c.contains_infinity() {
            return Err(Error::MoveInfinityFirst);
        }
        let roots = c
            .boundary_cycle()
            .iter()
            .map(|p| p.value().ok_or(Error::MoveInfinityFirst))
            .collect::<Result<Vec<_>>>()?;
        Self::new(roots)
    }

    pub fn roots(&self) -> &[Rat] {
        &self.roots
    }

    /// Number of intervals, equivalently of real connected components.
    pub fn r(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn q_poly(&self) -> &RatPoly {
        &self.q
    }

    pub fn q_at(&self, x: &Rat) -> Rat {
        self.q.eval(x)
    }

    pub fn interval_image(&self) -> IntervalConfig {
        let pairs: Vec<(Rat, Rat)> = self
            .roots
            .chunks(2)
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect();
        IntervalConfig::from_finite(&pairs).expect("sorted distinct roots")
    }

    pub fn on_surface(&self, p: &SurfPoint) -> bool {
        &p.y * &p.y + &p.z * &p.z == self.q_at(&p.x)
    }

    /// Index (0-based) of the real component holding `p`. Boundary fibres
    /// belong to their interval.
    pub fn component_index(&self, p: &SurfPoint) -> Result<usize> {
        if !self.on_surface(p) {
            return Err(Error::NotOnSurface);
        }
        self.roots
            .chunks(2)
            .position(|c| c[0] <= p.x && p.x <= c[1])
            .ok_or(Error::NotOnSurface)
    }

    /// Fibre-preserving isomorphism onto `y² + z² = Q'(x)` where `Q'` is a
    /// positive multiple of `Q`.
    pub fn scaling_iso(&self, target: &RatPoly) -> Result<ScalingIso> {
        let (Some(lq), Some(lt)) = (self.q.leading(), target.leading()) else {
            return Err(Error::NotProportional);
        };
        let lambda = lt / lq;
        if !lambda.is_positive() || self.q.scale(&lambda) != *target {
            return Err(Error::NotProportional);
        }
        let sqrt = rat::rat_sqrt(&lambda);
        Ok(ScalingIso { lambda, sqrt })
    }

    /// A rational point on the fibre over `x`, if the fibre circle has one
    /// small enough to be found within `budget` trial values.
    pub fn fiber_point(&self, x: &Rat, budget: u64) -> Option<SurfPoint> {
        let rho = self.q_at(x);
        let (y, z) = circle_point(&rho, budget)?;
        Some(SurfPoint::new(x.clone(), y, z))
    }
}

impl fmt::Display for ConicModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 + z^2 = {}", self.q)
    }
}

/// `(y, z)` with `y² + z² = rho`, by trial over `y = u/d` where `rho = n/d`.
pub fn circle_point(rho: &Rat, budget: u64) -> Option<(Rat, Rat)> {
    if rho.is_negative() {
        return None;
    }
    let n = rho.numer() * rho.denom();
    let d = rho.denom().clone();
    let top: BigInt = n.sqrt();
    let mut u = BigInt::zero();
    let mut tries = 0u64;
    while u <= top && tries < budget {
        if let Some(v) = rat::int_sqrt(&(&n - &u * &u)) {
            return Some((Rat::new(u, d.clone()), Rat::new(v, d)));
        }
        u += 1;
        tries += 1;
    }
    let (u, v) = two_squares(&n)?;
    Some((Rat::new(u, d.clone()), Rat::new(v, d)))
}

/// `n = u² + v²` via the factorization over the Gaussian integers. Primes
/// below `2¹⁶` are split off by trial division; a remaining cofactor is
/// treated as a prime `≡ 1 (mod 4)` and the result is checked, so a
/// composite cofactor just yields `None`.
fn two_squares(n: &BigInt) -> Option<(BigInt, BigInt)> {
    let mul = |(a, b): (BigInt, BigInt), (c, d): (BigInt, BigInt)| {
        (&a * &c - &b * &d, &a * &d + &b * &c)
    };
    let mut acc = (BigInt::one(), BigInt::zero());
    let mut rest = n.clone();
    if rest.is_zero() {
        return Some((BigInt::zero(), BigInt::zero()));
    }
    let mut p = BigInt::from(2);
    while &p * &p <= rest && p < BigInt::from(1 << 16) {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            let f = prime_two_squares(&p);
            if p == BigInt::from(2) {
                for _ in 0..e {
                    acc = mul(acc, (BigInt::one(), BigInt::one()));
                }
            } else if let Some(f) = f {
                for _ in 0..e {
                    acc = mul(acc, f.clone());
                }
            } else if e.is_multiple_of(2) {
                let s = p.pow(e / 2);
                acc = (&acc.0 * &s, &acc.1 * &s);
            } else {
                return None;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !rest.is_one() {
        acc = mul(acc, prime_two_squares(&rest)?);
    }
    let (u, v) = (acc.0.abs(), acc.1.abs());
    (&u * &u + &v * &v == *n).then_some((u, v))
}

/// Cornacchia for a (presumed) prime `p ≡ 1 (mod 4)`.
fn prime_two_squares(p: &BigInt) -> Option<(BigInt, BigInt)> {
    if p == &BigInt::from(2) {
        return Some((BigInt::one(), BigInt::one()));
    }
    if (p % 4u32) != BigInt::one() {
        return None;
    }
    let exp: BigInt = (p - 1u32) / 4u32;
    let minus_one = p - 1u32;
    let t = (2u32..60)
        .map(|c| BigInt::from(c).modpow(&exp, p))
        .find(|t| (t * t) % p == minus_one)?;
    let (mut a, mut b) = (p.clone(), t);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let v = rat::int_sqrt(&(p - &b * &b))?;
    Some((b, v))
}

/// `(x, y, z) -> (x, √λ y, √λ z)` from `y² + z² = Q` to `y² + z² = λQ`.
///
/// The point map is only exact when `λ` is a rational square; otherwise the
/// isomorphism is kept symbolic and [`ScalingIso::apply`] refuses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingIso {
    pub lambda: Rat,
    pub sqrt: Option<Rat>,
}

impl ScalingIso {
    pub fn is_symbolic(&self) -> bool {
        self.sqrt.is_none()
    }

    pub fn apply(&self, p: &SurfPoint) -> Result<SurfPoint> {
        let s = self
            .sqrt
            .as_ref()
            .ok_or_else(|| Error::NotRationalSquare(rat::format_rat(&self.lambda)))?;
        Ok(SurfPoint::new(p.x.clone(), &p.y * s, &p.z * s))
    }
}

/// Topological type of a real component: a sphere, or a sphere blown up in
/// `k` real points (`N_k`, non-orientable of genus `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentType {
    Sphere,
    NonOrientable(usize),
}

impl ComponentType {
    pub fn from_marks(k: usize) -> Self {
        if k == 0 {
            ComponentType::Sphere
        } else {
            ComponentType::NonOrientable(k)
        }
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentType::Sphere => f.write_str("S2"),
            ComponentType::NonOrientable(k) => write!(f, "N{k}"),
        }
    }
}

/// A model together with distinct real proper points to be blown up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedModel {
    model: ConicModel,
    marks: Vec<SurfPoint>,
}

impl MarkedModel {
    pub fn new(model: ConicModel, marks: Vec<SurfPoint>) -> Result<Self> {
        for (i, p) in marks.iter().enumerate() {
            if !model.on_surface(p) {
                return Err(Error::NotOnSurface);
            }
            if marks[..i].contains(p) {
                return Err(Error::Precondition(format!("mark {p} is repeated")));
            }
        }
        Ok(MarkedModel { model, marks })
    }

    pub fn unmarked(model: ConicModel) -> Self {
        MarkedModel {
            model,
            marks: Vec::new(),
        }
    }

    pub fn model(&self) -> &ConicModel {
        &self.model
    }

    pub fn marks(&self) -> &[SurfPoint] {
        &self.marks
    }

    pub fn mark_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.model.r()];
        for p in &self.marks {
            let i = self.model.component_index(p).expect("validated on construction");
            counts[i] += 1;
        }
        counts
    }

    pub fn homeo_types(&self) -> Vec<ComponentType> {
        self.mark_counts()
            .into_iter()
            .map(ComponentType::from_marks)
            .collect()
    }
}

/// Birational equivalence of two models: a Moebius map sending one interval
/// image onto the other, if any.
pub fn decide_birational(a: &ConicModel, b: &ConicModel) -> Option<ConfigMatch> {
    config_equiv(&a.interval_image(), &b.interval_image(), None)
}

/// Certificate that the real parts of the two blow-ups are isomorphic: an
/// arc permutation `ν` matching mark counts component by component, with a
/// Moebius map realizing `ν` on the interval images.
pub fn decide_marked_iso(a: &MarkedModel, b: &MarkedModel) -> Option<ConfigMatch> {
    let ca = a.mark_counts();
    let cb = b.mark_counts();
    config_witnesses(&a.model.interval_image(), &b.model.interval_image())
        .into_iter()
        .find(|w| (0..ca.len()).all(|i| ca[i] == cb[w.perm.apply(i)]))
}

pub const RULE_AT_MOST_TWO: &str = "thm1.2(2a)";
pub const RULE_NO_HOMEOMORPHIC_PAIR: &str = "thm1.2(2b)";
pub const RULE_ONE_PAIR: &str = "thm1.2(2c)";
pub const RULE_ONE_PAIR_FAILS: &str = "thm1.2(2c)-unrealizable";
pub const RULE_ALL_HOMEOMORPHIC: &str = "thm1.2(2d)";
pub const RULE_ALL_HOMEOMORPHIC_FAILS: &str = "thm1.2(2d)-unrealizable";
pub const RULE_MORE_THAN_THREE: &str = "thm1.2-more-than-3";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeryTransitiveVerdict {
    /// Very transitivity of the automorphism group on the whole real part.
    pub very_transitive: bool,
    /// Identifier of the case of the decision table that fired.
    pub rule: &'static str,
    /// Very transitivity on each connected component (true iff `r ≤ 3`).
    pub componentwise: bool,
    pub component_types: Vec<ComponentType>,
    /// Moebius witnesses of the arc permutations the verdict relies on.
    pub witnesses: Vec<ConfigMatch>,
    pub failing_condition: Option<String>,
    /// Set on negative verdicts: the action is not even 2-transitive.
    pub not_even_2_transitive: bool,
}

pub fn decide_very_transitive(m: &MarkedModel) -> VeryTransitiveVerdict {
    let r = m.model.r();
    let types = m.homeo_types();
    let config = m.model.interval_image();
    let mut verdict = VeryTransitiveVerdict {
        very_transitive: true,
        rule: RULE_AT_MOST_TWO,
        componentwise: r <= 3,
        component_types: types.clone(),
        witnesses: Vec::new(),
        failing_condition: None,
        not_even_2_transitive: false,
    };
    if r > 3 {
        verdict.very_transitive = false;
        verdict.rule = RULE_MORE_THAN_THREE;
        verdict.failing_condition = Some(format!("{r} connected components"));
        verdict.not_even_2_transitive = true;
        return verdict;
    }
    let realizable = realizable_permutations(&config);
    if r <= 2 {
        verdict.witnesses = realizable;
        return verdict;
    }
    let pairs: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .filter(|&(i, j)| types[i] == types[j])
        .collect();
    match pairs.len() {
        0 => {
            verdict.rule = RULE_NO_HOMEOMORPHIC_PAIR;
            verdict.witnesses = realizable
                .into_iter()
                .filter(|w| w.perm.is_identity())
                .collect();
        }
        1 => {
            let (i, j) = pairs[0];
            let swap = Perm::transposition(3, i, j);
            match realizable.into_iter().find(|w| w.perm == swap) {
                Some(w) => {
                    verdict.rule = RULE_ONE_PAIR;
                    verdict.witnesses = vec![w];
                }
                None => {
                    verdict.very_transitive = false;
                    verdict.rule = RULE_ONE_PAIR_FAILS;
                    verdict.failing_condition = Some(format!(
                        "no Moebius map exchanges intervals {} and {} while fixing the third",
                        i + 1,
                        j + 1
                    ));
                    verdict.not_even_2_transitive = true;
                }
            }
        }
        _ => {
            if realizable.len() == 6 {
                verdict.rule = RULE_ALL_HOMEOMORPHIC;
                verdict.witnesses = realizable;
            } else {
                verdict.very_transitive = false;
                verdict.rule = RULE_ALL_HOMEOMORPHIC_FAILS;
                verdict.failing_condition = Some(format!(
                    "only {} of the 6 permutations of the intervals are realizable",
                    realizable.len()
                ));
                verdict.not_even_2_transitive = true;
            }
        }
    }
    verdict
}
