//! Command dispatch for the `realconic` binary: each subcommand reads one
//! JSON document and produces one JSON document plus an exit code
//! (0 yes/success, 1 no, 2 usage or data error).

pub mod json;

use serde_json::{json, Map, Value};

use realconic::conic_model::{decide_birational, decide_marked_iso, decide_very_transitive};
use realconic::delpezzo::{
    biconic_from_config, biconic_interval_image, geiser, is_ramification, second_fibration,
};
use realconic::lattice;
use realconic::planner::find_rect_path;
use realconic::projline::{config_equiv, realizable_permutations, stabilizer};
use realconic::selftest;
use realconic::twist::{apply_twist, synthesize_twist, verify_twist, TwistReport};

use json::*;

pub const COMMANDS: [&str; 12] = [
    "decide-birational",
    "decide-iso",
    "decide-verytransitive",
    "realizable-perms",
    "stabilizer",
    "twist",
    "verify-twist",
    "geiser",
    "biconic-image",
    "lattice",
    "region-path",
    "selftest",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit: i32,
    pub body: Value,
}

impl Outcome {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

fn with_command(command: &str, body: Value) -> Value {
    let mut obj = match body {
        Value::Object(o) => o,
        other => {
            let mut o = Map::new();
            o.insert("result".into(), other);
            o
        }
    };
    obj.insert("command".into(), json!(command));
    Value::Object(obj)
}

fn verdict(command: &str, yes: bool, reasons: &[&str], mut extra: Map<String, Value>) -> Outcome {
    extra.insert("verdict".into(), json!(yes));
    extra.insert("reasons".into(), json!(reasons));
    Outcome {
        exit: if yes { 0 } else { 1 },
        body: with_command(command, Value::Object(extra)),
    }
}

fn success(command: &str, body: Value) -> Outcome {
    Outcome {
        exit: 0,
        body: with_command(command, body),
    }
}

pub fn error_outcome(command: &str, e: &InputError) -> Outcome {
    Outcome {
        exit: 2,
        body: with_command(command, json!({"error": e.to_json()})),
    }
}

/// Runs `command` on the JSON text `input`; `seed` is used by `selftest`.
pub fn execute(command: &str, input: &str, seed: u64) -> Outcome {
    if command == "selftest" {
        return run_selftest(seed);
    }
    let result = parse_document(input).and_then(|doc| dispatch(command, &doc));
    match result {
        Ok(o) => o,
        Err(e) => error_outcome(command, &e),
    }
}

fn dispatch(command: &str, doc: &Value) -> InResult<Outcome> {
    match command {
        "decide-birational" => cmd_birational(doc),
        "decide-iso" => cmd_iso(doc),
        "decide-verytransitive" => cmd_very_transitive(doc),
        "realizable-perms" => cmd_realizable(doc),
        "stabilizer" => cmd_stabilizer(doc),
        "twist" => cmd_twist(doc),
        "verify-twist" => cmd_verify_twist(doc),
        "geiser" => cmd_geiser(doc),
        "biconic-image" => cmd_biconic_image(doc),
        "lattice" => cmd_lattice(doc),
        "region-path" => cmd_region_path(doc),
        other => Err(InputError::Schema {
            field: "command".into(),
            reason: format!("unknown subcommand `{other}`"),
        }),
    }
}

fn cmd_birational(doc: &Value) -> InResult<Outcome> {
    let a = model_or_config(field(doc, "", "a")?, "a")?;
    let b = model_or_config(field(doc, "", "b")?, "b")?;
    let mut extra = Map::new();
    extra.insert("a".into(), config_json(&a));
    extra.insert("b".into(), config_json(&b));
    if a.len() != b.len() {
        return Ok(verdict("decide-birational", false, &["thm6.1(3)-interval-count"], extra));
    }
    Ok(match config_equiv(&a, &b, None) {
        Some(w) => {
            extra.insert("witness".into(), match_json(&w));
            verdict("decide-birational", true, &["thm6.1(3)"], extra)
        }
        None => verdict("decide-birational", false, &["thm6.1(3)-no-moebius-map"], extra),
    })
}

fn cmd_iso(doc: &Value) -> InResult<Outcome> {
    let a = marked_model(field(doc, "", "a")?, "a")?;
    let b = marked_model(field(doc, "", "b")?, "b")?;
    let mut extra = Map::new();
    extra.insert("mark_counts_a".into(), json!(a.mark_counts()));
    extra.insert("mark_counts_b".into(), json!(b.mark_counts()));
    if a.model().r() != b.model().r() {
        return Ok(verdict("decide-iso", false, &["cor8.2-component-count"], extra));
    }
    let (mut ca, mut cb) = (a.mark_counts(), b.mark_counts());
    ca.sort();
    cb.sort();
    if ca != cb {
        return Ok(verdict("decide-iso", false, &["cor8.2-mark-counts"], extra));
    }
    if decide_birational(a.model(), b.model()).is_none() {
        return Ok(verdict("decide-iso", false, &["thm6.1(3)-no-moebius-map"], extra));
    }
    Ok(match decide_marked_iso(&a, &b) {
        Some(w) => {
            extra.insert("witness".into(), match_json(&w));
            verdict("decide-iso", true, &["lemma9.1"], extra)
        }
        None => verdict("decide-iso", false, &["lemma9.1-no-compatible-permutation"], extra),
    })
}

fn cmd_very_transitive(doc: &Value) -> InResult<Outcome> {
    let m = marked_model(doc, "")?;
    let v = decide_very_transitive(&m);
    let mut extra = Map::new();
    extra.insert("componentwise".into(), json!(v.componentwise));
    extra.insert(
        "component_types".into(),
        json!(v.component_types.iter().map(|t| t.to_string()).collect::<Vec<_>>()),
    );
    extra.insert(
        "witnesses".into(),
        Value::Array(v.witnesses.iter().map(match_json).collect()),
    );
    extra.insert("not_even_2_transitive".into(), json!(v.not_even_2_transitive));
    if let Some(f) = &v.failing_condition {
        extra.insert("failing_condition".into(), json!(f));
    }
    Ok(verdict("decide-verytransitive", v.very_transitive, &[v.rule], extra))
}

fn cmd_realizable(doc: &Value) -> InResult<Outcome> {
    let c = model_or_config(doc, "")?;
    let perms = realizable_permutations(&c);
    Ok(success(
        "realizable-perms",
        json!({
            "config": config_json(&c),
            "permutations": perms.iter().map(match_json).collect::<Vec<_>>(),
        }),
    ))
}

fn cmd_stabilizer(doc: &Value) -> InResult<Outcome> {
    let pts = array(field(doc, "", "points")?, "points")?
        .iter()
        .enumerate()
        .map(|(i, p)| point(p, &format!("points[{i}]")))
        .collect::<InResult<Vec<_>>>()?;
    let group = stabilizer(&pts)?;
    Ok(success(
        "stabilizer",
        json!({
            "order": group.len(),
            "elements": group.iter().map(moebius_json).collect::<Vec<_>>(),
        }),
    ))
}

fn report_json(r: &TwistReport) -> Value {
    json!({
        "passed": r.passed(),
        "base_is_rotation": r.base_is_rotation,
        "orthogonality_identity": r.orthogonality_identity,
        "samples": r.samples,
        "failures": r.failures,
        "membership_failures": r.membership_failures.iter().map(surf_point_json).collect::<Vec<_>>(),
        "inverse_failures": r.inverse_failures.iter().map(surf_point_json).collect::<Vec<_>>(),
    })
}

fn cmd_twist(doc: &Value) -> InResult<Outcome> {
    let m = model(field(doc, "", "model")?, "model")?;
    let mut pairs = Vec::new();
    if let Some(ps) = opt_field(doc, "pairs") {
        for (i, pq) in array(ps, "pairs")?.iter().enumerate() {
            let path = format!("pairs[{i}]");
            let p = surf_point(field(pq, &path, "p")?, &format!("{path}.p"))?;
            let q = surf_point(field(pq, &path, "q")?, &format!("{path}.q"))?;
            pairs.push((p, q));
        }
    }
    let pins = match opt_field(doc, "pins") {
        Some(v) => rationals(v, "pins")?,
        None => Vec::new(),
    };
    let jets = match opt_field(doc, "jets") {
        Some(v) => array(v, "jets")?
            .iter()
            .enumerate()
            .map(|(i, j)| jet(j, &format!("jets[{i}]")))
            .collect::<InResult<Vec<_>>>()?,
        None => Vec::new(),
    };
    let t = synthesize_twist(&m, &pairs, &pins, &jets)?;
    let report = verify_twist(&m, &t);
    let images = pairs
        .iter()
        .map(|(p, _)| apply_twist(&m, &t, p).map(|q| surf_point_json(&q)))
        .collect::<Result<Vec<_>, _>>()?;
    let tangents: Vec<Value> = jets
        .iter()
        .map(|j| json!({"x": rat_json(&j.x), "kappa": rat_json(&t.tangent_coefficient(&j.x))}))
        .collect();
    Ok(Outcome {
        exit: if report.passed() { 0 } else { 1 },
        body: with_command(
            "twist",
            json!({
                "twist": twist_json(&t),
                "images": images,
                "tangent_coefficients": tangents,
                "verification": report_json(&report),
            }),
        ),
    })
}

fn cmd_verify_twist(doc: &Value) -> InResult<Outcome> {
    let m = model(field(doc, "", "model")?, "model")?;
    let t = twist_map(field(doc, "", "twist")?, "twist")?;
    let report = verify_twist(&m, &t);
    Ok(Outcome {
        exit: if report.passed() { 0 } else { 1 },
        body: with_command("verify-twist", json!({"verification": report_json(&report)})),
    })
}

fn cmd_geiser(doc: &Value) -> InResult<Outcome> {
    let m = biconic(field(doc, "", "forms")?, "forms")?;
    let p = bi_point(field(doc, "", "point")?, "point")?;
    let g = geiser(&m, &p)?;
    let t2 = second_fibration(&m, &p)?;
    let (a, b) = t2.coords();
    Ok(success(
        "geiser",
        json!({
            "image": bi_point_json(&g),
            "second_fibration": [a.to_string(), b.to_string()],
            "ramification": is_ramification(&m, &p),
        }),
    ))
}

fn cmd_biconic_image(doc: &Value) -> InResult<Outcome> {
    let m = match opt_field(doc, "config") {
        Some(c) => biconic_from_config(&config(c, "config")?)?,
        None => biconic(field(doc, "", "forms")?, "forms")?,
    };
    let image = biconic_interval_image(&m)?;
    Ok(success(
        "biconic-image",
        json!({
            "forms": biconic_json(&m),
            "k": m.k(),
            "config": config_json(&image),
        }),
    ))
}

fn pic_vector(v: &Value, path: &str) -> InResult<lattice::PicVector> {
    let coords = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, c)| integer(c, &format!("{path}[{i}]")))
        .collect::<InResult<Vec<_>>>()?;
    Ok(lattice::PicVector::new(coords))
}

fn cmd_lattice(doc: &Value) -> InResult<Outcome> {
    let m = integer(field(doc, "", "m")?, "m")?;
    let m = usize::try_from(m).map_err(|_| InputError::Schema {
        field: "m".into(),
        reason: "expected a positive integer".into(),
    })?;
    let k = lattice::canonical(m);
    let classes = lattice::exceptional_classes(m)?;
    let sf = lattice::singular_fibre_count(m)?;
    let mut out = Map::new();
    out.insert("m".into(), json!(m));
    out.insert("canonical".into(), pic_json(&k));
    out.insert("k_squared".into(), json!(lattice::intersect(&k, &k)?));
    out.insert("exceptional_count".into(), json!(classes.len()));
    out.insert(
        "exceptional_classes".into(),
        Value::Array(classes.iter().map(pic_json).collect()),
    );
    out.insert(
        "singular_fibres".into(),
        json!({"count": sf.count, "derivation": sf.to_string()}),
    );
    if m == 5 {
        let (s, a) = (lattice::deg4_sigma(), lattice::deg4_alpha());
        let table = |p: &lattice::ClassPerm| -> Value {
            let mut t = Map::new();
            for c in p.classes() {
                let from = lattice::deg4_class_name(c).expect("named");
                let to = lattice::deg4_class_name(p.apply(c).expect("in list")).expect("named");
                t.insert(from, json!(to));
            }
            Value::Object(t)
        };
        out.insert(
            "deg4".into(),
            json!({
                "sigma": table(&s),
                "alpha": table(&a),
                "sigma_preserves_form": lattice::perm_preserves_form(&s),
                "alpha_preserves_form": lattice::perm_preserves_form(&a),
                "involutions": s.is_involution() && a.is_involution(),
                "fixed_point_free": s.fixed_points().is_empty() && a.fixed_points().is_empty(),
                "commute": lattice::perms_commute(&s, &a),
            }),
        );
    }
    if let Some(f) = opt_field(doc, "fiber_class") {
        let f1 = pic_vector(f, "fiber_class")?;
        let f2 = lattice::conic_fiber_partner(m, &f1)?;
        out.insert("fiber_partner".into(), pic_json(&f2));
    }
    if let Some(d) = opt_field(doc, "class") {
        let d = pic_vector(d, "class")?;
        out.insert("geiser_reflection".into(), pic_json(&lattice::geiser_reflection(&d)?));
    }
    Ok(success("lattice", Value::Object(out)))
}

fn cmd_region_path(doc: &Value) -> InResult<Outcome> {
    let q = path_query(doc)?;
    Ok(match find_rect_path(&q)? {
        Some(p) => {
            let mut extra = Map::new();
            extra.insert("path".into(), path_json(&p));
            verdict("region-path", true, &["prop7.4-path"], extra)
        }
        None => verdict("region-path", false, &["prop7.4-disconnected"], Map::new()),
    })
}

fn run_selftest(seed: u64) -> Outcome {
    let r = selftest::run(seed);
    let suites: Vec<Value> = r
        .suites
        .iter()
        .map(|s| json!({"name": s.name, "cases": s.cases, "failures": s.failures, "digest": s.digest}))
        .collect();
    Outcome {
        exit: if r.passed() { 0 } else { 1 },
        body: with_command(
            "selftest",
            json!({"seed": seed, "passed": r.passed(), "suites": suites}),
        ),
    }
}
