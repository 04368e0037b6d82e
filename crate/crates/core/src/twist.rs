//! Twisting maps: fibre-preserving automorphisms
//! `(x, y, z) -> (x, Φ(x)·(y, z))` of `y² + z² = Q(x)` where `Φ` is a
//! rotation-valued rational function of `x`.
//!
//! `Φ(x) = R₀ · ψ(λ(x))` with a rational base rotation `R₀`, a polynomial
//! `λ`, and the half-angle chart `ψ(λ) = ((1-λ²)/(1+λ²), 2λ/(1+λ²))`, which
//! covers every rotation except `-1`. Prescribing `Φ` at finitely many
//! fibres is then polynomial interpolation of `λ`.

use std::fmt;

use num_traits::{One, Zero};

use crate::conic_model::{ConicModel, SurfPoint};
use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::{self, Rat};

/// A rotation `(c, s)` of the plane, acting by
/// `(y, z) -> (c y - s z, s y + c z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rotation {
    pub c: Rat,
    pub s: Rat,
}

impl Rotation {
    pub fn new(c: Rat, s: Rat) -> Result<Self> {
        let r = Rotation { c, s };
        if !r.is_unit() {
            return Err(Error::Precondition("c² + s² must equal 1".into()));
        }
        Ok(r)
    }

    /// No unit-norm check; used to carry untrusted data into verification.
    pub fn new_unchecked(c: Rat, s: Rat) -> Self {
        Rotation { c, s }
    }

    pub fn identity() -> Self {
        Rotation {
            c: Rat::one(),
            s: Rat::zero(),
        }
    }

    pub fn half_turn() -> Self {
        Rotation {
            c: -Rat::one(),
            s: Rat::zero(),
        }
    }

    pub fn is_unit(&self) -> bool {
        &self.c * &self.c + &self.s * &self.s == Rat::one()
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_one() && self.s.is_zero()
    }

    pub fn compose(&self, other: &Rotation) -> Rotation {
        Rotation {
            c: &self.c * &other.c - &self.s * &other.s,
            s: &self.s * &other.c + &self.c * &other.s,
        }
    }

    pub fn inverse(&self) -> Rotation {
        Rotation {
            c: self.c.clone(),
            s: -&self.s,
        }
    }

    pub fn apply(&self, y: &Rat, z: &Rat) -> (Rat, Rat) {
        (&self.c * y - &self.s * z, &self.s * y + &self.c * z)
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat::format_rat(&self.c), rat::format_rat(&self.s))
    }
}

/// `ψ(λ)`, the rotation with tangent half-angle `λ`.
pub fn psi(lambda: &Rat) -> Rotation {
    let l2 = lambda * lambda;
    let d = Rat::one() + &l2;
    Rotation {
        c: (Rat::one() - &l2) / &d,
        s: (lambda * rat::int(2)) / d,
    }
}

/// The rotation of the fibre circle over `x` sending `from` to `to`.
pub fn rotation_between(
    m: &ConicModel,
    x: &Rat,
    from: (&Rat, &Rat),
    to: (&Rat, &Rat),
) -> Result<Rotation> {
    let rho = m.q_at(x);
    if rho <= Rat::zero() {
        return Err(Error::EmptyOrSingularFiber(rat::format_rat(x)));
    }
    let (y, z) = from;
    let (v, w) = to;
    if y * y + z * z != rho || v * v + w * w != rho {
        return Err(Error::NotOnFiber);
    }
    Ok(Rotation {
        c: (y * v + z * w) / &rho,
        s: (y * w - z * v) / &rho,
    })
}

/// Chart coordinate `λ` with `base · ψ(λ) = phi`.
pub fn chart_param(base: &Rotation, phi: &Rotation) -> Result<Rat> {
    let rel = base.inverse().compose(phi);
    let denom = Rat::one() + &rel.c;
    if denom.is_zero() {
        return Err(Error::ChartPole);
    }
    Ok(rel.s / denom)
}

/// The fixed supply of base rotations: the identity, then
/// `ψ(n/(n+1))` for `n = 1, 2, ..`, i.e. `(3/5, 4/5), (5/13, 12/13), ..`.
pub fn base_rotation_supply() -> impl Iterator<Item = Rotation> {
    std::iter::once(Rotation::identity())
        .chain((1i64..).map(|n| psi(&rat::rat(n, n + 1))))
}

/// First rotation of the supply whose chart pole `R₀·(-1)` avoids the
/// identity and every required rotation.
pub fn choose_base_rotation(required: &[Rotation]) -> Rotation {
    base_rotation_supply()
        .find(|r| {
            let pole = r.compose(&Rotation::half_turn());
            !pole.is_identity() && !required.contains(&pole)
        })
        .expect("the supply is infinite and the required set finite")
}

/// Hermite datum: `λ(x) = value` and, when given, `λ'(x) = derivative`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub x: Rat,
    pub value: Rat,
    pub derivative: Option<Rat>,
}

impl Node {
    pub fn value(x: Rat, value: Rat) -> Self {
        Node {
            x,
            value,
            derivative: None,
        }
    }

    pub fn with_slope(x: Rat, value: Rat, slope: Rat) -> Self {
        Node {
            x,
            value,
            derivative: Some(slope),
        }
    }
}

/// The unique polynomial of degree below the number of conditions that
/// matches every value and every prescribed derivative.
pub fn interpolate(nodes: &[Node]) -> Result<RatPoly> {
    for (i, n) in nodes.iter().enumerate() {
        if nodes[..i].iter().any(|o| o.x == n.x) {
            return Err(Error::DuplicateNode(rat::format_rat(&n.x)));
        }
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let size = nodes.len() + nodes.iter().filter(|n| n.derivative.is_some()).count();
    for n in nodes {
        let powers: Vec<Rat> = std::iter::successors(Some(Rat::one()), |p| Some(p * &n.x))
            .take(size)
            .collect();
        rows.push(powers.clone());
        rhs.push(n.value.clone());
        if let Some(d) = &n.derivative {
            let mut row = vec![Rat::zero(); size];
            for k in 1..size {
                row[k] = &powers[k - 1] * rat::int(k as i64);
            }
            rows.push(row);
            rhs.push(d.clone());
        }
    }
    Ok(RatPoly::new(solve(rows, rhs)))
}

/// Gauss-Jordan elimination on a nonsingular square system.
fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Vec<Rat> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("confluent Vandermonde systems with distinct nodes are nonsingular");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rat::one() / &a[col][col];
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..n {
                    let t = &f * &a[col][k];
                    a[r][k] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    b
}

/// `x -> R₀ · ψ(λ(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMap {
    pub base: Rotation,
    pub lambda: RatPoly,
}

impl TwistMap {
    pub fn identity() -> Self {
        TwistMap {
            base: Rotation::identity(),
            lambda: RatPoly::zero(),
        }
    }

    pub fn fiber_rotation(&self, x: &Rat) -> Rotation {
        self.base.compose(&psi(&self.lambda.eval(x)))
    }

    /// Pointwise inverse: rotations commute and `ψ(λ)⁻¹ = ψ(-λ)`.
    pub fn inverse(&self) -> TwistMap {
        TwistMap {
            base: self.base.inverse(),
            lambda: -&self.lambda,
        }
    }

    /// Numerators of `c(x)` and `s(x)` over the common denominator
    /// `1 + λ(x)²`.
    fn numerators(&self) -> (RatPoly, RatPoly, RatPoly) {
        let one = RatPoly::constant(Rat::one());
        let l2 = &self.lambda * &self.lambda;
        let a = &one - &l2;
        let b = self.lambda.scale(&rat::int(2));
        let nc = &a.scale(&self.base.c) - &b.scale(&self.base.s);
        let ns = &a.scale(&self.base.s) + &b.scale(&self.base.c);
        (nc, ns, &one + &l2)
    }

    /// Rate `dθ/dx` at which the fibre rotation turns at `x`; at a fibre
    /// where the map is the identity this is the coefficient `κ` of the
    /// linearized action `[y] -> [y] - κ [x]` in the normalized frame, equal
    /// to `2 λ'(x) / (1 + λ(x)²)`.
    pub fn tangent_coefficient(&self, x: &Rat) -> Rat {
        let (nc, ns, d) = self.numerators();
        let num = &(&nc * &ns.derivative()) - &(&ns * &nc.derivative());
        let den = &d * &d;
        num.eval(x) / den.eval(x)
    }

    /// Floating evaluation of `(c(x), s(x))`, for numerical spot checks.
    pub fn fiber_rotation_f64(&self, x: f64) -> (f64, f64) {
        let l = self.lambda.eval_f64(x);
        let d = 1.0 + l * l;
        let (a, b) = ((1.0 - l * l) / d, 2.0 * l / d);
        let (c0, s0) = (rat::to_f64(&self.base.c), rat::to_f64(&self.base.s));
        (c0 * a - s0 * b, s0 * a + c0 * b)
    }

    /// `(1 - λ²)² + (2λ)² - (1 + λ²)²`, identically zero for every `λ`.
    pub fn orthogonality_defect(&self) -> RatPoly {
        let one = RatPoly::constant(Rat::one());
        let l2 = &self.lambda * &self.lambda;
        let a = &one - &l2;
        let b = self.lambda.scale(&rat::int(2));
        let c = &one + &l2;
        &(&(&a * &a) + &(&b * &b)) - &(&c * &c)
    }
}

pub fn apply_twist(m: &ConicModel, t: &TwistMap, p: &SurfPoint) -> Result<SurfPoint> {
    if !m.on_surface(p) {
        return Err(Error::NotOnSurface);
    }
    let (y, z) = t.fiber_rotation(&p.x).apply(&p.y, &p.z);
    Ok(SurfPoint::new(p.x.clone(), y, z))
}

/// Requested tangent data at a fixed fibre: the map is the identity on the
/// fibre over `x` and its rotation rate there is `2 μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    pub x: Rat,
    pub mu: Rat,
}

/// A twisting map sending each `p` to its `q`, fixing the fibres over the
/// pins pointwise, with the requested tangent behaviour at jet fibres.
pub fn synthesize_twist(
    m: &ConicModel,
    pairs: &[(SurfPoint, SurfPoint)],
    pins: &[Rat],
    jets: &[Jet],
) -> Result<TwistMap> {
    let mut rotations: Vec<(Rat, Rotation)> = Vec::new();
    for (i, (p, q)) in pairs.iter().enumerate() {
        if !m.on_surface(p) || !m.on_surface(q) {
            return Err(Error::NotOnSurface);
        }
        if p.x != q.x {
            return Err(Error::FiberMismatch(i));
        }
        if m.q_at(&p.x) <= Rat::zero() {
            return Err(Error::SingularFiberTarget(rat::format_rat(&p.x)));
        }
        if rotations.iter().any(|(x, _)| *x == p.x) {
            return Err(Error::DuplicateFiber(rat::format_rat(&p.x)));
        }
        let rot = rotation_between(m, &p.x, (&p.y, &p.z), (&q.y, &q.z))?;
        rotations.push((p.x.clone(), rot));
    }
    let collides = |x: &Rat| rotations.iter().any(|(px, _)| px == x);
    for b in pins {
        if m.q_at(b) < Rat::zero() {
            return Err(Error::PinOutsideImage(rat::format_rat(b)));
        }
        if collides(b) {
            return Err(Error::PinCollision(rat::format_rat(b)));
        }
    }
    for (i, j) in jets.iter().enumerate() {
        if collides(&j.x) {
            return Err(Error::PinCollision(rat::format_rat(&j.x)));
        }
        if m.q_at(&j.x) <= Rat::zero() {
            return Err(Error::SingularFiberTarget(rat::format_rat(&j.x)));
        }
        if jets[..i].iter().any(|o| o.x == j.x) {
            return Err(Error::DuplicateNode(rat::format_rat(&j.x)));
        }
    }

    let mut required: Vec<Rotation> = rotations.iter().map(|(_, r)| r.clone()).collect();
    required.push(Rotation::identity());
    let base = choose_base_rotation(&required);
    let fixed_value = chart_param(&base, &Rotation::identity())?;

    let mut nodes = Vec::new();
    for (x, rot) in &rotations {
        nodes.push(Node::value(x.clone(), chart_param(&base, rot)?));
    }
    for j in jets {
        // 2λ'/(1 + λ²) = 2μ at the node
        let slope = &j.mu * (Rat::one() + &fixed_value * &fixed_value);
        nodes.push(Node::with_slope(j.x.clone(), fixed_value.clone(), slope));
    }
    for b in pins {
        if !nodes.iter().any(|n| n.x == *b) {
            nodes.push(Node::value(b.clone(), fixed_value.clone()));
        }
    }
    let lambda = interpolate(&nodes)?;
    Ok(TwistMap { base, lambda })
}

/// Outcome of [`verify_twist`]; `failures` is empty exactly when every
/// check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub base_is_rotation: bool,
    pub orthogonality_identity: bool,
    pub samples: usize,
    pub membership_failures: Vec<SurfPoint>,
    pub inverse_failures: Vec<SurfPoint>,
    pub failures: Vec<String>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Deterministic sample of rational surface points: the singular points of
/// the boundary fibres, then points on fibres at evenly spaced rational
/// positions inside each interval, each turned by a few fixed rotations.
pub fn sample_surface_points(m: &ConicModel, per_interval: usize) -> Vec<SurfPoint> {
    let mut out = Vec::new();
    let turns: Vec<Rotation> = base_rotation_supply().take(3).collect();
    for c in m.roots().chunks(2) {
        let (a, b) = (&c[0], &c[1]);
        out.push(SurfPoint::new(a.clone(), Rat::zero(), Rat::zero()));
        out.push(SurfPoint::new(b.clone(), Rat::zero(), Rat::zero()));
        let mut found = 0;
        'outer: for k in 2..=12i64 {
            for j in 1..k {
                let x = a + (b - a) * rat::rat(j, k);
                if let Some(p) = m.fiber_point(&x, 2_000) {
                    for rot in &turns {
                        let (y, z) = rot.apply(&p.y, &p.z);
                        out.push(SurfPoint::new(x.clone(), y, z));
                    }
                    found += 1;
                    if found >= per_interval {
                        break 'outer;
                    }
                }
            }
        }
    }
    out.dedup();
    out
}

/// Exactness certificate for a twisting map on a model.
pub fn verify_twist(m: &ConicModel, t: &TwistMap) -> TwistReport {
    let mut failures = Vec::new();
    let base_is_rotation = t.base.is_unit();
    let orthogonality_identity = t.orthogonality_defect().is_zero();
    if !base_is_rotation {
        failures.push("orthogonality: base rotation has c² + s² ≠ 1".to_string());
    }
    if !orthogonality_identity {
        failures.push("orthogonality: (1-λ²)² + (2λ)² ≠ (1+λ²)²".to_string());
    }
    let samples = sample_surface_points(m, 4);
    let inverse = t.inverse();
    let mut membership_failures = Vec::new();
    let mut inverse_failures = Vec::new();
    for p in &samples {
        let image = apply_twist(m, t, p).expect("samples lie on the surface");
        if !m.on_surface(&image) {
            membership_failures.push(p.clone());
            continue;
        }
        let (y, z) = inverse.fiber_rotation(&image.x).apply(&image.y, &image.z);
        if SurfPoint::new(image.x.clone(), y, z) != *p {
            inverse_failures.push(p.clone());
        }
    }
    if !membership_failures.is_empty() {
        failures.push(format!(
            "membership: {} sample points leave the surface",
            membership_failures.len()
        ));
    }
    if !inverse_failures.is_empty() {
        failures.push(format!(
            "invertibility: inverse twist fails on {} sample points",
            inverse_failures.len()
        ));
    }
    TwistReport {
        base_is_rotation,
        orthogonality_identity,
        samples: samples.len(),
        membership_failures,
        inverse_failures,
        failures,
    }
}
