//! JSON input formats and conversions to and from core types.
//!
//! Polytopes arrive as `{"A": [[int]], "b": [int], "rel": ["le"|"ge", …]}`
//! (the `rel` list optional, defaulting to all `le`), boxes as
//! `{"A": [[int]], "lo": [int], "hi": [int]}` meaning `lo <= A·x <= hi`,
//! threshold functions as `{"n", "k", "a0", "a"}`, and rationals as `"p/q"`
//! strings or plain integers.

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use irrpoly_core::num::{big, rat, to_i64, Rat};
use irrpoly_core::polytope::{HPolytope, Parallelepiped};
use irrpoly_core::threshold::ThresholdFn;
use irrpoly_core::Error;

use crate::{malformed, CliError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeInput {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    #[serde(default)]
    pub rel: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxInput {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdInput {
    pub n: usize,
    pub k: u64,
    pub a0: i64,
    pub a: Vec<i64>,
}

/// A rational given either as an integer or as a `"p/q"` string.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Int(i64),
    Str(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalizeInput {
    pub n: usize,
    pub k: u64,
    pub a: Vec<RatJson>,
    pub a0: RatJson,
}

pub enum Geometry {
    Box(Parallelepiped),
    Poly(HPolytope),
}

impl Geometry {
    pub fn to_hpolytope(&self) -> HPolytope {
        match self {
            Geometry::Box(b) => b.to_hpolytope(),
            Geometry::Poly(p) => p.clone(),
        }
    }
}

fn bad_json(e: serde_json::Error) -> CliError {
    malformed(format!("invalid JSON: {e}"))
}

/// Construction failures caused by input shape are malformed; geometric
/// degeneracies (a singular box frame) are domain errors.
fn shape_or_domain(e: Error) -> CliError {
    match e {
        Error::DimMismatch { .. } | Error::NonSquare { .. } => malformed(e.to_string()),
        other => CliError::Domain(other.to_string()),
    }
}

pub fn parse_geometry(text: &str) -> Result<Geometry, CliError> {
    let v: Value = serde_json::from_str(text).map_err(bad_json)?;
    let obj = v.as_object().ok_or_else(|| malformed("expected a JSON object"))?;
    if obj.contains_key("lo") || obj.contains_key("hi") {
        let inp: BoxInput = serde_json::from_value(v).map_err(bad_json)?;
        Ok(Geometry::Box(box_from_input(&inp)?))
    } else if obj.contains_key("b") {
        let inp: PolytopeInput = serde_json::from_value(v).map_err(bad_json)?;
        Ok(Geometry::Poly(polytope_from_input(&inp)?))
    } else {
        Err(malformed("expected a box ({A, lo, hi}) or a polytope ({A, b})"))
    }
}

pub fn polytope_from_input(inp: &PolytopeInput) -> Result<HPolytope, CliError> {
    if inp.a.is_empty() || inp.a[0].is_empty() {
        return Err(malformed("the constraint matrix must be nonempty"));
    }
    let width = inp.a[0].len();
    if inp.b.len() != inp.a.len() {
        return Err(malformed("the right-hand side length must match the row count"));
    }
    let rel_default = vec!["le".to_string(); inp.a.len()];
    let rel = inp.rel.as_deref().unwrap_or(&rel_default);
    if rel.len() != inp.a.len() {
        return Err(malformed("the rel list length must match the row count"));
    }
    let mut p = HPolytope::new(width);
    for ((row, &rhs), r) in inp.a.iter().zip(&inp.b).zip(rel) {
        let coeffs: Vec<BigInt> = row.iter().map(|&v| big(v)).collect();
        let res = match r.as_str() {
            "le" => p.push_le(coeffs, big(rhs)),
            "ge" => p.push_ge(coeffs, big(rhs)),
            other => return Err(malformed(format!("unknown relation {other:?}"))),
        };
        res.map_err(shape_or_domain)?;
    }
    Ok(p)
}

pub fn box_from_input(inp: &BoxInput) -> Result<Parallelepiped, CliError> {
    let a: Vec<Vec<BigInt>> = inp
        .a
        .iter()
        .map(|row| row.iter().map(|&v| big(v)).collect())
        .collect();
    let lo: Vec<BigInt> = inp.lo.iter().map(|&v| big(v)).collect();
    let hi: Vec<BigInt> = inp.hi.iter().map(|&v| big(v)).collect();
    Parallelepiped::new(a, lo, hi).map_err(shape_or_domain)
}

pub fn parse_box(text: &str) -> Result<Parallelepiped, CliError> {
    match parse_geometry(text)? {
        Geometry::Box(b) => Ok(b),
        Geometry::Poly(_) => Err(malformed("this command needs a box ({A, lo, hi})")),
    }
}

pub fn parse_threshold(text: &str) -> Result<ThresholdFn, CliError> {
    let inp: ThresholdInput = serde_json::from_str(text).map_err(bad_json)?;
    if inp.a.len() != inp.n {
        return Err(malformed("the coefficient count must equal n"));
    }
    let a: Vec<BigInt> = inp.a.iter().map(|&v| big(v)).collect();
    ThresholdFn::new(inp.k, a, big(inp.a0)).map_err(shape_or_domain)
}

pub fn parse_rat(v: &RatJson) -> Result<Rat, CliError> {
    match v {
        RatJson::Int(i) => Ok(rat(*i)),
        RatJson::Str(s) => {
            let parse_int = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| malformed(format!("invalid rational {s:?}")))
            };
            match s.split_once('/') {
                None => Ok(rat(parse_int(s)?)),
                Some((p, q)) => {
                    let den = parse_int(q)?;
                    if den == 0 {
                        return Err(malformed(format!("zero denominator in {s:?}")));
                    }
                    Ok(Rat::new(big(parse_int(p)?), big(den)))
                }
            }
        }
    }
}

pub fn parse_rationalize(text: &str) -> Result<(Vec<Rat>, Rat, usize, u64), CliError> {
    let inp: RationalizeInput = serde_json::from_str(text).map_err(bad_json)?;
    if inp.a.len() != inp.n {
        return Err(malformed("the coefficient count must equal n"));
    }
    let a = inp.a.iter().map(parse_rat).collect::<Result<Vec<_>, _>>()?;
    let a0 = parse_rat(&inp.a0)?;
    Ok((a, a0, inp.n, inp.k))
}

// --- repro dumps -----------------------------------------------------------

pub(crate) fn int_value(v: &BigInt) -> Value {
    match to_i64(v) {
        Some(i) => Value::from(i),
        None => Value::from(v.to_string()),
    }
}

pub fn box_to_value(b: &Parallelepiped) -> Value {
    serde_json::json!({
        "A": b.a.iter().map(|r| r.iter().map(int_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "lo": b.lo.iter().map(int_value).collect::<Vec<_>>(),
        "hi": b.hi.iter().map(int_value).collect::<Vec<_>>(),
    })
}

pub fn poly_to_value(p: &HPolytope) -> Value {
    let mut a = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..p.num_rows() {
        let (row, b) = p.row(i);
        a.push(row.iter().map(int_value).collect::<Vec<_>>());
        rhs.push(int_value(b));
    }
    serde_json::json!({ "A": a, "b": rhs })
}

pub fn threshold_to_value(f: &ThresholdFn) -> Value {
    serde_json::json!({
        "n": f.n(),
        "k": f.k(),
        "a0": int_value(f.offset()),
        "a": f.coeffs().iter().map(int_value).collect::<Vec<_>>(),
    })
}

/// `p/q` for proper fractions, plain digits for integers.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

pub fn rat_vec_value(v: &[Rat]) -> Value {
    Value::from(rats_to_strings(v))
}

/// The system rows of `p` as plain integer vectors, for bound evaluation.
pub fn system_rows(p: &HPolytope) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..p.num_rows() {
        let (row, b) = p.row(i);
        rows.push(row.to_vec());
        rhs.push(b.clone());
    }
    (rows, rhs)
}

