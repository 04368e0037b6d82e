//! Picard lattices of blow-ups of the plane in `m` points: basis `e₀`
//! (line) and `e₁..e_m` (exceptional curves), form `diag(1, -1, .., -1)`,
//! canonical class `K = -3e₀ + Σ eᵢ`.

use std::fmt;

use crate::error::{Error, Result};

/// Coordinates `[d, m₁, .., m_m]` of `d e₀ + Σ mᵢ eᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicVector(pub Vec<i64>);

impl PicVector {
    pub fn new(coords: Vec<i64>) -> Self {
        PicVector(coords)
    }

    pub fn zero(m: usize) -> Self {
        PicVector(vec![0; m + 1])
    }

    pub fn e(m: usize, i: usize) -> Self {
        let mut v = Self::zero(m);
        v.0[i] = 1;
        v
    }

    /// `d e₀ - Σ_{i ∈ idx} eᵢ`.
    pub fn line_minus(m: usize, d: i64, idx: &[usize]) -> Self {
        let mut v = Self::zero(m);
        v.0[0] = d;
        for &i in idx {
            v.0[i] -= 1;
        }
        v
    }

    /// Number of blown-up points.
    pub fn m(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, o: &PicVector) -> Result<PicVector> {
        same_basis(self, o)?;
        Ok(PicVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, k: i64) -> PicVector {
        PicVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> PicVector {
        self.scale(-1)
    }

    pub fn sub(&self, o: &PicVector) -> Result<PicVector> {
        self.add(&o.neg())
    }
}

impl fmt::Display for PicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn same_basis(u: &PicVector, v: &PicVector) -> Result<()> {
    if u.0.len() != v.0.len() {
        return Err(Error::BasisMismatch(u.0.len(), v.0.len()));
    }
    Ok(())
}

/// `u·v = d d' - Σ mᵢ mᵢ'`.
pub fn intersect(u: &PicVector, v: &PicVector) -> Result<i64> {
    same_basis(u, v)?;
    Ok(u.0[0] * v.0[0] - u.0[1..].iter().zip(&v.0[1..]).map(|(a, b)| a * b).sum::<i64>())
}

pub fn canonical(m: usize) -> PicVector {
    let mut v = PicVector(vec![1; m + 1]);
    v.0[0] = -3;
    v
}

/// All `D` with `D² = -1` and `D·K = -1`, family by family: points, lines
/// through two points, conics through five, cubics through seven with a
/// double point.
pub fn exceptional_classes(m: usize) -> Result<Vec<PicVector>> {
    if !(1..=7).contains(&m) {
        return Err(Error::Unsupported(format!("exceptional classes for m = {m}")));
    }
    let mut out: Vec<PicVector> = (1..=m).map(|i| PicVector::e(m, i)).collect();
    for i in 1..=m {
        for j in i + 1..=m {
            out.push(PicVector::line_minus(m, 1, &[i, j]));
        }
    }
    for skip in subsets_missing(m, 5) {
        let idx: Vec<usize> = (1..=m).filter(|i| !skip.contains(i)).collect();
        out.push(PicVector::line_minus(m, 2, &idx));
    }
    if m == 7 {
        for double in 1..=7 {
            let mut v = PicVector::line_minus(m, 3, &(1..=7).collect::<Vec<_>>());
            v.0[double] = -2;
            out.push(v);
        }
    }
    Ok(out)
}

/// Index sets of size `m - keep` left out when choosing `keep` of `1..=m`.
fn subsets_missing(m: usize, keep: usize) -> Vec<Vec<usize>> {
    if m < keep {
        return Vec::new();
    }
    match m - keep {
        0 => vec![vec![]],
        1 => (1..=m).map(|i| vec![i]).collect(),
        2 => (1..=m)
            .flat_map(|i| (i + 1..=m).map(move |j| vec![i, j]))
            .collect(),
        _ => unreachable!("m ≤ 7"),
    }
}

/// `f₂ = -cK - f₁` with `c = 4/K²`: the other conic-bundle class with
/// `f₁ + f₂ = -cK`.
pub fn conic_fiber_partner(m: usize, f1: &PicVector) -> Result<PicVector> {
    if f1.m() != m {
        return Err(Error::BasisMismatch(f1.0.len(), m + 1));
    }
    let k = canonical(m);
    if intersect(f1, f1)? != 0 || intersect(f1, &k)? != -2 {
        return Err(Error::NotAFiberClass);
    }
    let k2 = intersect(&k, &k)?;
    if k2 <= 0 || 4 % k2 != 0 {
        return Err(Error::Unsupported(format!(
            "c = 4/K² = 4/{k2} is not an integer for m = {m}"
        )));
    }
    let f2 = k.scale(-(4 / k2)).sub(f1)?;
    debug_assert_eq!(intersect(&f2, &f2)?, 0);
    debug_assert_eq!(intersect(&f2, &k)?, -2);
    Ok(f2)
}

/// `D ↦ (D·K)K - D` on the blow-up in 7 points.
pub fn geiser_reflection(d: &PicVector) -> Result<PicVector> {
    if d.m() != 7 {
        return Err(Error::BasisMismatch(d.0.len(), 8));
    }
    let k = canonical(7);
    k.scale(intersect(d, &k)?).sub(d)
}

/// Number of singular fibres `2r = 8 - K²` of a conic bundle on the
/// blow-up in `m` points, where `K² = 9 - m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFibreCount {
    pub m: usize,
    pub k_squared: i64,
    pub count: i64,
}

impl fmt::Display for SingularFibreCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K² = 9 - {} = {}; 8 - K² = {}",
            self.m, self.k_squared, self.count
        )
    }
}

pub fn singular_fibre_count(m: usize) -> Result<SingularFibreCount> {
    if !(1..=8).contains(&m) {
        return Err(Error::Unsupported(format!("singular fibre count for m = {m}")));
    }
    let k_squared = 9 - m as i64;
    Ok(SingularFibreCount {
        m,
        k_squared,
        count: (8 - k_squared).max(0),
    })
}

/// Names of the 16 classes for `m = 5`: `Eᵢ = eᵢ`, `Lᵢⱼ = e₀ - eᵢ - eⱼ`,
/// `Γ = 2e₀ - Σ eᵢ` (written `G`).
pub fn deg4_class(name: &str) -> Result<PicVector> {
    let digits: Vec<usize> = name
        .chars()
        .skip(1)
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Unsupported(format!("class name {name}")))?;
    let in_range = digits.iter().all(|d| (1..=5).contains(d));
    match (name.chars().next(), digits.as_slice()) {
        (Some('E'), [i]) if in_range => Ok(PicVector::e(5, *i)),
        (Some('L'), [i, j]) if in_range && i < j => Ok(PicVector::line_minus(5, 1, &[*i, *j])),
        (Some('G'), []) => Ok(PicVector::line_minus(5, 2, &[1, 2, 3, 4, 5])),
        _ => Err(Error::Unsupported(format!("class name {name}"))),
    }
}

pub fn deg4_class_name(v: &PicVector) -> Option<String> {
    let mut names = vec!["G".to_string()];
    for i in 1..=5 {
        names.push(format!("E{i}"));
        for j in i + 1..=5 {
            names.push(format!("L{i}{j}"));
        }
    }
    names
        .into_iter()
        .find(|n| deg4_class(n).is_ok_and(|c| c == *v))
}

/// A permutation of an indexed list of classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPerm {
    classes: Vec<PicVector>,
    images: Vec<usize>,
}

impl ClassPerm {
    pub fn new(classes: Vec<PicVector>, images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; classes.len()];
        if images.len() != classes.len() {
            return Err(Error::Precondition("image list length".into()));
        }
        for &i in &images {
            if i >= classes.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Precondition("not a bijection".into()));
            }
        }
        Ok(ClassPerm { classes, images })
    }

    /// Product of disjoint transpositions on `classes`, given as pairs.
    pub fn from_swaps(classes: Vec<PicVector>, swaps: &[(PicVector, PicVector)]) -> Result<Self> {
        let mut images: Vec<usize> = (0..classes.len()).collect();
        let index = |v: &PicVector| {
            classes
                .iter()
                .position(|c| c == v)
                .ok_or_else(|| Error::Precondition(format!("{v} is not in the class list")))
        };
        for (a, b) in swaps {
            let (i, j) = (index(a)?, index(b)?);
            images.swap(i, j);
        }
        Self::new(classes, images)
    }

    pub fn classes(&self) -> &[PicVector] {
        &self.classes
    }

    pub fn image_index(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply(&self, v: &PicVector) -> Option<&PicVector> {
        let i = self.classes.iter().position(|c| c == v)?;
        Some(&self.classes[self.images[i]])
    }

    pub fn is_involution(&self) -> bool {
        (0..self.images.len()).all(|i| self.images[self.images[i]] == i)
    }

    pub fn fixed_points(&self) -> Vec<&PicVector> {
        (0..self.images.len())
            .filter(|&i| self.images[i] == i)
            .map(|i| &self.classes[i])
            .collect()
    }
}

/// Pairs of class names read off the cycle notation
/// `(E₂ L₁₂)(E₃ L₁₃)(E₄ L₁₄)(E₅ L₁₅)(E₁ Γ)(L₂₃ L₄₅)(L₂₄ L₃₅)(L₂₅ L₃₄)`.
pub const DEG4_SIGMA: [(&str, &str); 8] = [
    ("E2", "L12"),
    ("E3", "L13"),
    ("E4", "L14"),
    ("E5", "L15"),
    ("E1", "G"),
    ("L23", "L45"),
    ("L24", "L35"),
    ("L25", "L34"),
];

/// `(L₂₃ E₄)(L₂₄ E₃)(L₃₄ E₂)(L₁₂ L₂₅)(L₁₃ L₃₅)(L₁₄ L₄₅)(Γ L₁₅)(E₁ E₅)`.
pub const DEG4_ALPHA: [(&str, &str); 8] = [
    ("L23", "E4"),
    ("L24", "E3"),
    ("L34", "E2"),
    ("L12", "L25"),
    ("L13", "L35"),
    ("L14", "L45"),
    ("G", "L15"),
    ("E1", "E5"),
];

fn deg4_perm(swaps: &[(&str, &str)]) -> ClassPerm {
    let classes = exceptional_classes(5).expect("m = 5");
    let pairs: Vec<(PicVector, PicVector)> = swaps
        .iter()
        .map(|(a, b)| (deg4_class(a).expect("name"), deg4_class(b).expect("name")))
        .collect();
    ClassPerm::from_swaps(classes, &pairs).expect("names cover the 16 classes")
}

pub fn deg4_sigma() -> ClassPerm {
    deg4_perm(&DEG4_SIGMA)
}

pub fn deg4_alpha() -> ClassPerm {
    deg4_perm(&DEG4_ALPHA)
}

/// First pair `(u, v)` with `p(u)·p(v) ≠ u·v`, if any.
pub fn form_violation(p: &ClassPerm) -> Option<(PicVector, PicVector)> {
    let c = &p.classes;
    for i in 0..c.len() {
        for j in i..c.len() {
            let before = intersect(&c[i], &c[j]).ok()?;
            let after = intersect(&c[p.images[i]], &c[p.images[j]]).ok()?;
            if before != after {
                return Some((c[i].clone(), c[j].clone()));
            }
        }
    }
    None
}

pub fn perm_preserves_form(p: &ClassPerm) -> bool {
    form_violation(p).is_none()
}

pub fn perms_commute(p: &ClassPerm, q: &ClassPerm) -> bool {
    p.classes == q.classes
        && (0..p.images.len()).all(|i| p.images[q.images[i]] == q.images[p.images[i]])
}
