//! JSON encoding of library values. Rationals are strings `"p/q"`
//! (`"p"` when the denominator is 1) and the point at infinity is `"inf"`.
//! Objects are emitted with sorted keys, so output is byte-stable.

use serde_json::{json, Map, Value};

use realconic::conic_model::{ConicModel, MarkedModel, SurfPoint};
use realconic::delpezzo::{BiPoint, BiconicModel, BinQuadForm};
use realconic::lattice::PicVector;
use realconic::planner::{PathQuery, Pt, Rect, Region, SegPath};
use realconic::poly::RatPoly;
use realconic::projline::{parse_point, ConfigMatch, Interval, IntervalConfig, Moebius, ProjPoint};
use realconic::rat::{format_rat, parse_rat};
use realconic::twist::{Jet, Rotation, TwistMap};
use realconic::{Error, Rat};

/// Input problems: malformed JSON, a field of the wrong shape, or a value
/// rejected by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputError {
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    Schema {
        field: String,
        reason: String,
    },
    Domain(Error),
}

impl InputError {
    pub fn code(&self) -> &'static str {
        match self {
            InputError::Json { .. } => "MalformedJson",
            InputError::Schema { .. } => "SchemaError",
            InputError::Domain(e) => e.code(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            InputError::Json {
                line,
                column,
                message,
            } => format!("malformed JSON at line {line}, column {column}: {message}"),
            InputError::Schema { field, reason } => format!("field `{field}`: {reason}"),
            InputError::Domain(e) => e.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("code".into(), json!(self.code()));
        obj.insert("message".into(), json!(self.message()));
        match self {
            InputError::Json { line, column, .. } => {
                obj.insert("line".into(), json!(line));
                obj.insert("column".into(), json!(column));
            }
            InputError::Schema { field, .. } => {
                obj.insert("field".into(), json!(field));
            }
            InputError::Domain(_) => {}
        }
        Value::Object(obj)
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Domain(e)
    }
}

pub type InResult<T> = std::result::Result<T, InputError>;

pub fn parse_document(text: &str) -> InResult<Value> {
    serde_json::from_str(text).map_err(|e| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn schema(field: &str, reason: impl Into<String>) -> InputError {
    InputError::Schema {
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn sub(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn field<'a>(v: &'a Value, path: &str, key: &str) -> InResult<&'a Value> {
    v.get(key)
        .ok_or_else(|| schema(&sub(path, key), "missing"))
}

pub fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

pub fn array<'a>(v: &'a Value, path: &str) -> InResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> InResult<&'a str> {
    v.as_str()
        .ok_or_else(|| schema(path, "expected a string such as \"3/4\""))
}

pub fn rational(v: &Value, path: &str) -> InResult<Rat> {
    Ok(parse_rat(string(v, path)?)?)
}

pub fn rationals(v: &Value, path: &str) -> InResult<Vec<Rat>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn point(v: &Value, path: &str) -> InResult<ProjPoint> {
    Ok(parse_point(string(v, path)?)?)
}

pub fn integer(v: &Value, path: &str) -> InResult<i64> {
    v.as_i64().ok_or_else(|| schema(path, "expected an integer"))
}

pub fn config(v: &Value, path: &str) -> InResult<IntervalConfig> {
    let arcs = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, pair)| {
            let p = format!("{path}[{i}]");
            let ends = array(pair, &p)?;
            if ends.len() != 2 {
                return Err(schema(&p, "expected [start, end]"));
            }
            Ok(Interval::new(point(&ends[0], &format!("{p}[0]"))?, point(&ends[1], &format!("{p}[1]"))?)?)
        })
        .collect::<InResult<Vec<_>>>()?;
    Ok(IntervalConfig::new(arcs)?)
}

pub fn model(v: &Value, path: &str) -> InResult<ConicModel> {
    let roots = rationals(field(v, path, "roots")?, &sub(path, "roots"))?;
    Ok(ConicModel::new(roots)?)
}

/// `{"roots": [...]}` gives the model's interval image; `{"config": [...]}`
/// is taken as is.
pub fn model_or_config(v: &Value, path: &str) -> InResult<IntervalConfig> {
    if let Some(c) = opt_field(v, "config") {
        return config(c, &sub(path, "config"));
    }
    Ok(model(v, path)?.interval_image())
}

pub fn surf_point(v: &Value, path: &str) -> InResult<SurfPoint> {
    let get = |k: &str| rational(field(v, path, k)?, &sub(path, k));
    Ok(SurfPoint::new(get("x")?, get("y")?, get("z")?))
}

pub fn marked_model(v: &Value, path: &str) -> InResult<MarkedModel> {
    let m = model(v, path)?;
    let marks = match opt_field(v, "marks") {
        None => Vec::new(),
        Some(ms) => {
            let p = sub(path, "marks");
            array(ms, &p)?
                .iter()
                .enumerate()
                .map(|(i, x)| surf_point(x, &format!("{p}[{i}]")))
                .collect::<InResult<Vec<_>>>()?
        }
    };
    Ok(MarkedModel::new(m, marks)?)
}

pub fn rotation(v: &Value, path: &str) -> InResult<Rotation> {
    let c = rational(field(v, path, "c")?, &sub(path, "c"))?;
    let s = rational(field(v, path, "s")?, &sub(path, "s"))?;
    Ok(Rotation::new_unchecked(c, s))
}

pub fn twist_map(v: &Value, path: &str) -> InResult<TwistMap> {
    Ok(TwistMap {
        base: rotation(field(v, path, "base")?, &sub(path, "base"))?,
        lambda: RatPoly::new(rationals(field(v, path, "lambda")?, &sub(path, "lambda"))?),
    })
}

pub fn jet(v: &Value, path: &str) -> InResult<Jet> {
    Ok(Jet {
        x: rational(field(v, path, "x")?, &sub(path, "x"))?,
        mu: rational(field(v, path, "mu")?, &sub(path, "mu"))?,
    })
}

pub fn quad_form(v: &Value, path: &str) -> InResult<BinQuadForm> {
    let c = rationals(v, path)?;
    if c.len() != 3 {
        return Err(schema(path, "expected three coefficients [α, β, γ]"));
    }
    let [a, b, g]: [Rat; 3] = c.try_into().expect("length checked");
    Ok(BinQuadForm::new(a, b, g)?)
}

pub fn biconic(v: &Value, path: &str) -> InResult<BiconicModel> {
    let f = |k: &str| quad_form(field(v, path, k)?, &sub(path, k));
    Ok(BiconicModel::new(f("m1")?, f("m2")?, f("m3")?)?)
}

pub fn bi_point(v: &Value, path: &str) -> InResult<BiPoint> {
    let xp = sub(path, "xyz");
    let xyz = rationals(field(v, path, "xyz")?, &xp)?;
    let xyz: [Rat; 3] = xyz
        .try_into()
        .map_err(|_| schema(&xp, "expected three coordinates"))?;
    let tp = sub(path, "t");
    let t = rationals(field(v, path, "t")?, &tp)?;
    if t.len() != 2 {
        return Err(schema(&tp, "expected two coordinates [a, b]"));
    }
    let ab = realconic::rat::primitive_integer_vector(&t).ok_or(Error::ZeroPoint)?;
    let t = ProjPoint::new(ab[0].clone(), ab[1].clone())?;
    Ok(BiPoint::new(xyz, t)?)
}

fn plane_point(v: &Value, path: &str) -> InResult<Pt> {
    let c = rationals(v, path)?;
    if c.len() != 2 {
        return Err(schema(path, "expected [x, y]"));
    }
    Ok(Pt::new(c[0].clone(), c[1].clone()))
}

pub fn path_query(v: &Value) -> InResult<PathQuery> {
    let rects = array(field(v, "", "rects")?, "rects")?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let p = format!("rects[{i}]");
            let axes = array(r, &p)?;
            if axes.len() != 2 {
                return Err(schema(&p, "expected [[x0, x1], [y0, y1]]"));
            }
            let xr = rationals(&axes[0], &format!("{p}[0]"))?;
            let yr = rationals(&axes[1], &format!("{p}[1]"))?;
            if xr.len() != 2 || yr.len() != 2 {
                return Err(schema(&p, "expected [[x0, x1], [y0, y1]]"));
            }
            Ok(Rect::new((xr[0].clone(), xr[1].clone()), (yr[0].clone(), yr[1].clone()))?)
        })
        .collect::<InResult<Vec<_>>>()?;
    let lines = |k: &str| match opt_field(v, k) {
        None => Ok(Vec::new()),
        Some(x) => rationals(x, k),
    };
    Ok(PathQuery {
        region: Region::new(rects),
        start: plane_point(field(v, "", "start")?, "start")?,
        end: plane_point(field(v, "", "end")?, "end")?,
        forbidden_x: lines("forbidden_x")?,
        forbidden_y: lines("forbidden_y")?,
    })
}

// ---- encoding ----

pub fn rat_json(q: &Rat) -> Value {
    json!(format_rat(q))
}

pub fn point_json(p: &ProjPoint) -> Value {
    json!(p.to_string())
}

pub fn config_json(c: &IntervalConfig) -> Value {
    Value::Array(
        c.intervals()
            .iter()
            .map(|i| json!([point_json(i.start()), point_json(i.end())]))
            .collect(),
    )
}

pub fn moebius_json(m: &Moebius) -> Value {
    Value::Array(m.coefficients().iter().map(|c| json!(c.to_string())).collect())
}

pub fn match_json(w: &ConfigMatch) -> Value {
    json!({
        "moebius": moebius_json(&w.moebius),
        "orientation": w.moebius.orientation(),
        "perm": w.perm.one_based(),
    })
}

pub fn surf_point_json(p: &SurfPoint) -> Value {
    json!({"x": rat_json(&p.x), "y": rat_json(&p.y), "z": rat_json(&p.z)})
}

pub fn poly_json(p: &RatPoly) -> Value {
    if p.is_zero() {
        return json!(["0"]);
    }
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

pub fn twist_json(t: &TwistMap) -> Value {
    json!({
        "base": {"c": rat_json(&t.base.c), "s": rat_json(&t.base.s)},
        "lambda": poly_json(&t.lambda),
    })
}

pub fn form_json(f: &BinQuadForm) -> Value {
    json!([rat_json(&f.alpha), rat_json(&f.beta), rat_json(&f.gamma)])
}

pub fn biconic_json(m: &BiconicModel) -> Value {
    let [a, b, c] = m.forms();
    json!({"m1": form_json(a), "m2": form_json(b), "m3": form_json(c)})
}

pub fn bi_point_json(p: &BiPoint) -> Value {
    let (a, b) = p.t.coords();
    json!({
        "xyz": p.xyz().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "t": [a.to_string(), b.to_string()],
    })
}

pub fn pic_json(v: &PicVector) -> Value {
    json!(v.coords())
}

fn pt_json(p: &Pt) -> Value {
    json!([rat_json(&p.x), rat_json(&p.y)])
}

pub fn path_json(p: &SegPath) -> Value {
    Value::Array(
        p.segments
            .iter()
            .map(|s| json!([pt_json(&s.from), pt_json(&s.to)]))
            .collect(),
    )
}
