//! JSON rendering of command outputs, with parsers for the same shapes so
//! every emitted document round-trips.
//!
//! All exact values are strings in the same grammar the text interfaces use
//! (`p/q` rationals, `sqrt(..)` radicals); nothing is ever converted through
//! floating point.

use serde_json::{json, Map, Value};

use quadeuclid_core::covering::VerificationReport;
use quadeuclid_core::division::DivisionResult;
use quadeuclid_core::exact::{parse_rat, Rat};
use quadeuclid_core::field::{FieldElement, RingElement};

#[derive(Debug, PartialEq)]
pub struct DivideOutput {
    pub m: i64,
    pub xi: (Rat, Rat),
    pub quotient: (String, String),
    pub remainder_norm: Rat,
    pub pair: (i64, i64),
    pub signs: (i8, i8),
}

pub fn divide_to_json(m: i64, xi: &FieldElement, r: &DivisionResult) -> Value {
    json!({
        "m": m,
        "xi": [xi.a.to_string(), xi.b.to_string()],
        "quotient": [r.quotient.x.to_string(), r.quotient.y.to_string()],
        "remainder_norm": r.remainder_norm.to_string(),
        "pair": [r.pair_used.0, r.pair_used.1],
        "signs": [r.signs_used.0, r.signs_used.1],
    })
}

pub fn divide_from_json(v: &Value) -> Option<DivideOutput> {
    let pair = v.get("pair")?.as_array()?;
    let signs = v.get("signs")?.as_array()?;
    let xi = v.get("xi")?.as_array()?;
    let q = v.get("quotient")?.as_array()?;
    Some(DivideOutput {
        m: v.get("m")?.as_i64()?,
        xi: (
            parse_rat(xi[0].as_str()?)?,
            parse_rat(xi[1].as_str()?)?,
        ),
        quotient: (q[0].as_str()?.to_string(), q[1].as_str()?.to_string()),
        remainder_norm: parse_rat(v.get("remainder_norm")?.as_str()?)?,
        pair: (pair[0].as_i64()?, pair[1].as_i64()?),
        signs: (signs[0].as_i64()? as i8, signs[1].as_i64()? as i8),
    })
}

pub fn coverset_to_json(m: i64, point: &(Rat, Rat), bound: u32, pairs: &[(i64, i64)]) -> Value {
    json!({
        "m": m,
        "point": [point.0.to_string(), point.1.to_string()],
        "bound": bound,
        "pairs": pairs.iter().map(|(u, v)| json!([u, v])).collect::<Vec<_>>(),
    })
}

pub fn coverset_from_json(v: &Value) -> Option<(i64, (Rat, Rat), u32, Vec<(i64, i64)>)> {
    let point = v.get("point")?.as_array()?;
    let pairs = v
        .get("pairs")?
        .as_array()?
        .iter()
        .map(|p| {
            let p = p.as_array()?;
            Some((p[0].as_i64()?, p[1].as_i64()?))
        })
        .collect::<Option<Vec<_>>>()?;
    Some((
        v.get("m")?.as_i64()?,
        (
            parse_rat(point[0].as_str()?)?,
            parse_rat(point[1].as_str()?)?,
        ),
        v.get("bound")?.as_u64()? as u32,
        pairs,
    ))
}

pub fn gcd_to_json(m: i64, alpha: &RingElement, beta: &RingElement, g: &RingElement) -> Value {
    json!({
        "m": m,
        "alpha": [alpha.x.to_string(), alpha.y.to_string()],
        "beta": [beta.x.to_string(), beta.y.to_string()],
        "gcd": [g.x.to_string(), g.y.to_string()],
    })
}

pub fn gcd_from_json(v: &Value) -> Option<(i64, Vec<String>)> {
    let g = v.get("gcd")?.as_array()?;
    Some((
        v.get("m")?.as_i64()?,
        g.iter().map(|x| x.as_str().map(String::from)).collect::<Option<Vec<_>>>()?,
    ))
}

pub fn report_to_json(report: &VerificationReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("name".into(), Value::String(c.name.clone()));
            m.insert("pass".into(), Value::Bool(c.pass));
            m.insert("detail".into(), Value::String(c.detail.clone()));
            Value::Object(m)
        })
        .collect();
    json!({ "pass": report.pass(), "checks": checks })
}

pub fn report_from_json(v: &Value) -> Option<(bool, Vec<(String, bool, String)>)> {
    let checks = v
        .get("checks")?
        .as_array()?
        .iter()
        .map(|c| {
            Some((
                c.get("name")?.as_str()?.to_string(),
                c.get("pass")?.as_bool()?,
                c.get("detail")?.as_str()?.to_string(),
            ))
        })
        .collect::<Option<Vec<_>>>()?;
    Some((v.get("pass")?.as_bool()?, checks))
}

pub fn search_to_json(m: i64, complete: bool, steps: u32, pairs: &[(i64, i64)]) -> Value {
    json!({
        "m": m,
        "complete": complete,
        "steps": steps,
        "pairs": pairs.iter().map(|(u, v)| json!([u, v])).collect::<Vec<_>>(),
    })
}

pub fn search_from_json(v: &Value) -> Option<(i64, bool, u32, Vec<(i64, i64)>)> {
    let pairs = v
        .get("pairs")?
        .as_array()?
        .iter()
        .map(|p| {
            let p = p.as_array()?;
            Some((p[0].as_i64()?, p[1].as_i64()?))
        })
        .collect::<Option<Vec<_>>>()?;
    Some((
        v.get("m")?.as_i64()?,
        v.get("complete")?.as_bool()?,
        v.get("steps")?.as_u64()? as u32,
        pairs,
    ))
}
