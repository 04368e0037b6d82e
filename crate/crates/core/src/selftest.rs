//! Seeded self-test: runs each property family on freshly generated
//! instances and reports case and failure counts. The same seed always
//! produces the same report.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delpezzo::{self, biconic_from_config, biconic_interval_image, geiser};
use crate::lattice;
use crate::planner::{find_rect_path, validate_path};
use crate::projline::{config_equiv, verify_config_witness};
use crate::sample;
use crate::twist::{apply_twist, synthesize_twist, Jet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// A few concrete outputs, so that reports differ when results do.
    pub digest: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed {}", self.seed)?;
        for s in &self.suites {
            writeln!(f, "{}: {} cases, {} failures", s.name, s.cases, s.failures)?;
            for d in &s.digest {
                writeln!(f, "  {d}")?;
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

struct Suite {
    result: SuiteResult,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            result: SuiteResult {
                name,
                cases: 0,
                failures: 0,
                digest: Vec::new(),
            },
        }
    }

    fn check(&mut self, ok: bool) {
        self.result.cases += 1;
        if !ok {
            self.result.failures += 1;
        }
    }

    fn note(&mut self, s: String) {
        if self.result.digest.len() < 3 {
            self.result.digest.push(s);
        }
    }
}

fn twist_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("twist");
    let mut done = 0;
    while done < 20 {
        let r = rng.gen_range(1..=3);
        let n = rng.gen_range(0..=4);
        let m = rng.gen_range(0..=2);
        let Some(inst) = sample::twist_instance(rng, r, n, m) else {
            continue;
        };
        done += 1;
        let t = match synthesize_twist(&inst.model, &inst.pairs, &inst.pins, &[]) {
            Ok(t) => t,
            Err(_) => {
                s.check(false);
                continue;
            }
        };
        s.note(format!("lambda = {}", t.lambda));
        let moved = inst
            .pairs
            .iter()
            .all(|(p, q)| apply_twist(&inst.model, &t, p).is_ok_and(|img| img == *q));
        let pinned = inst.pins.iter().all(|b| t.fiber_rotation(b).is_identity());
        s.check(moved && pinned && t.orthogonality_defect().is_zero());
    }
    s.result
}

fn jet_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("jets");
    let mut done = 0;
    while done < 10 {
        let r = rng.gen_range(1..=3);
        let Some(inst) = sample::twist_instance(rng, r, 1, 2) else {
            continue;
        };
        done += 1;
        let jet = Jet {
            x: inst.pins[1].clone(),
            mu: sample::rational(rng, 3, 7),
        };
        match synthesize_twist(&inst.model, &inst.pairs, &inst.pins[..1], std::slice::from_ref(&jet)) {
            Ok(t) => {
                let kappa = t.tangent_coefficient(&jet.x);
                s.note(format!("kappa = {}", crate::rat::format_rat(&kappa)));
                s.check(t.fiber_rotation(&jet.x).is_identity() && kappa == &jet.mu * crate::rat::int(2));
            }
            Err(_) => s.check(false),
        }
    }
    s.result
}

fn equivalence_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("interval-equivalence");
    for _ in 0..40 {
        let r = rng.gen_range(1..=4);
        let a = sample::config(rng, r);
        let b = if rng.gen_bool(0.5) {
            a.image(&sample::moebius(rng))
        } else {
            sample::config(rng, r)
        };
        let ab = config_equiv(&a, &b, None);
        let ba = config_equiv(&b, &a, None);
        let witness_ok = ab
            .as_ref()
            .is_none_or(|w| verify_config_witness(&a, &b, &w.moebius, &w.perm));
        if let Some(w) = &ab {
            s.note(format!("{} -> {} via {}", a, b, w.moebius));
        }
        s.check(witness_ok && ab.is_some() == ba.is_some());
    }
    s.result
}

fn biconic_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("biconic");
    for k in 0..=3 {
        for _ in 0..5 {
            let c = sample::finite_config(rng, k);
            let ok = biconic_from_config(&c)
                .and_then(|m| biconic_interval_image(&m))
                .is_ok_and(|img| img == c);
            s.check(ok);
        }
    }
    for k in 1..=3 {
        let c = sample::finite_config(rng, k);
        let Ok(m) = biconic_from_config(&c) else {
            s.check(false);
            continue;
        };
        let t = c.intervals()[0].interior_sample();
        let Ok(points) = delpezzo::fiber_points(&m, &t, 4, 2_000) else {
            continue;
        };
        for p in points {
            let ok = geiser(&m, &p).and_then(|g| {
                let back = geiser(&m, &g)?;
                Ok(m.on_surface(&g) && g.xyz() == p.xyz() && back == p)
            });
            s.note(format!("{p} on fibre {t}"));
            s.check(ok.unwrap_or(false));
        }
    }
    s.result
}

fn lattice_suite() -> SuiteResult {
    let mut s = Suite::new("lattice");
    for (m, n) in [(5, 16), (6, 27), (7, 56)] {
        s.check(lattice::exceptional_classes(m).is_ok_and(|c| c.len() == n));
    }
    let (sigma, alpha) = (lattice::deg4_sigma(), lattice::deg4_alpha());
    for p in [&sigma, &alpha] {
        s.check(p.is_involution() && p.fixed_points().is_empty() && lattice::perm_preserves_form(p));
    }
    s.check(lattice::perms_commute(&sigma, &alpha));
    let k = lattice::canonical(7);
    for d in lattice::exceptional_classes(7).expect("m = 7") {
        let g = lattice::geiser_reflection(&d).expect("m = 7");
        let back = lattice::geiser_reflection(&g).expect("m = 7");
        s.check(back == d && lattice::intersect(&g, &k) == lattice::intersect(&d, &k));
    }
    s.result
}

fn planner_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("planner");
    for _ in 0..40 {
        let q = sample::path_query(rng);
        match find_rect_path(&q) {
            Ok(Some(path)) => {
                s.note(format!("{} -> {}: {} segments", q.start, q.end, path.len()));
                s.check(validate_path(&q, &path).is_ok());
            }
            Ok(None) => s.check(true),
            Err(_) => s.check(false),
        }
    }
    s.result
}

pub fn run(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        twist_suite(&mut rng),
        jet_suite(&mut rng),
        equivalence_suite(&mut rng),
        biconic_suite(&mut rng),
        lattice_suite(),
        planner_suite(&mut rng),
    ];
    SelftestReport { seed, suites }
}
