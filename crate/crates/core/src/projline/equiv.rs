//! Decisions about Moebius equivalence of interval configurations and of
//! finite point sets.
//!
//! A real Moebius map sends the boundary points of one configuration onto
//! those of another while preserving or reversing their cyclic order, so it
//! is one of at most `2 * 2r` cyclic correspondences of boundary sequences
//! and is pinned down by where it sends three boundary points. Every
//! candidate is verified exactly before it is reported.

use std::collections::HashSet;

use super::interval::IntervalConfig;
use super::moebius::Moebius;
use super::perm::Perm;
use super::point::ProjPoint;
use crate::error::{Error, Result};

/// A Moebius map `moebius` with `moebius(I_i) = I'_{perm(i)}` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigMatch {
    pub moebius: Moebius,
    pub perm: Perm,
}

/// Checks that `m` sends each arc of `from` exactly onto the arc of `to`
/// selected by `perm`, and that the interior sample of each arc lands inside
/// its target.
pub fn verify_config_witness(
    from: &IntervalConfig,
    to: &IntervalConfig,
    m: &Moebius,
    perm: &Perm,
) -> bool {
    if from.len() != to.len() || perm.len() != from.len() {
        return false;
    }
    from.intervals().iter().enumerate().all(|(i, arc)| {
        let target = &to.intervals()[perm.apply(i)];
        arc.image(m) == *target && target.contains(&m.apply(&arc.interior_sample()))
    })
}

/// The permutation induced by `m` if it maps `from` onto `to`.
fn induced_perm(from: &IntervalConfig, to: &IntervalConfig, m: &Moebius) -> Option<Perm> {
    let images = from
        .intervals()
        .iter()
        .map(|arc| {
            let img = arc.image(m);
            to.intervals().iter().position(|t| *t == img)
        })
        .collect::<Option<Vec<_>>>()?;
    let perm = Perm::new(images)?;
    verify_config_witness(from, to, m, &perm).then_some(perm)
}

/// Candidate maps in search order: orientation-preserving correspondences
/// first, each group ordered by the target index of the first boundary point.
fn candidates(from: &IntervalConfig, to: &IntervalConfig) -> Vec<Moebius> {
    let mut out = Vec::new();
    if from.len() == 1 {
        let (a, b) = (&from.intervals()[0], &to.intervals()[0]);
        let (sa, sb) = (a.interior_sample(), b.interior_sample());
        for target in [[b.start(), &sb, b.end()], [b.end(), &sb, b.start()]] {
            if let Ok(m) = Moebius::from_triples([a.start(), &sa, a.end()], target) {
                out.push(m);
            }
        }
        return out;
    }
    let src = from.boundary_cycle();
    let dst = to.boundary_cycle();
    let n = dst.len();
    for step in [1, n - 1] {
        for k in 0..n {
            let q = [&dst[k], &dst[(k + step) % n], &dst[(k + 2 * step) % n]];
            if let Ok(m) = Moebius::from_triples([&src[0], &src[1], &src[2]], q) {
                out.push(m);
            }
        }
    }
    out
}

/// Every Moebius map sending `from` onto `to`, in search order, each with
/// the permutation of arcs it induces.
pub fn config_witnesses(from: &IntervalConfig, to: &IntervalConfig) -> Vec<ConfigMatch> {
    if from.len() != to.len() {
        return Vec::new();
    }
    if from.is_empty() {
        return vec![ConfigMatch {
            moebius: Moebius::identity(),
            perm: Perm::identity(0),
        }];
    }
    let mut seen = HashSet::new();
    candidates(from, to)
        .into_iter()
        .filter(|m| seen.insert(m.clone()))
        .filter_map(|m| induced_perm(from, to, &m).map(|perm| ConfigMatch { moebius: m, perm }))
        .collect()
}

/// First witness of `from ≅ to`, restricted to the arc permutation `nu`
/// when one is given.
pub fn config_equiv(
    from: &IntervalConfig,
    to: &IntervalConfig,
    nu: Option<&Perm>,
) -> Option<ConfigMatch> {
    config_witnesses(from, to)
        .into_iter()
        .find(|w| nu.is_none_or(|nu| w.perm == *nu))
}

/// The permutations of arcs realized by Moebius maps preserving the
/// configuration, each with its first witness, in lexicographic order.
pub fn realizable_permutations(c: &IntervalConfig) -> Vec<ConfigMatch> {
    let mut out: Vec<ConfigMatch> = Vec::new();
    for w in config_witnesses(c, c) {
        if !out.iter().any(|o| o.perm == w.perm) {
            out.push(w);
        }
    }
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    out
}

/// The finite group of Moebius maps preserving a set of at least three
/// points.
pub fn stabilizer(points: &[ProjPoint]) -> Result<Vec<Moebius>> {
    let mut sigma: Vec<ProjPoint> = points.to_vec();
    sigma.sort();
    sigma.dedup();
    if sigma.len() < 3 {
        return Err(Error::InfiniteStabilizer);
    }
    let set: HashSet<&ProjPoint> = sigma.iter().collect();
    let base = [&sigma[0], &sigma[1], &sigma[2]];
    let n = sigma.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let m = Moebius::from_triples(base, [&sigma[i], &sigma[j], &sigma[k]])?;
                if sigma.iter().all(|p| set.contains(&m.apply(p))) && !out.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    Ok(out)
}
