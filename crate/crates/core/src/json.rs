//! Interchange documents. The prime travels once in the document header,
//! never per value; polynomials are integer arrays, lowest degree first;
//! table keys join canonical representatives with semicolons.

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Prime, RationalFunction};
use crate::modsearch::{DegreeTable, SearchSpec, TableKind};
use crate::ore::{Gauge, SkewOperator};
use crate::radii::{ExponentSet, RadiusClass};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidDocument(msg.into())
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| bad(format!("missing field \"{name}\"")))
}

fn int_field(v: &Value, name: &str) -> Result<u64> {
    field(v, name)?
        .as_u64()
        .ok_or_else(|| bad(format!("field \"{name}\" must be a nonnegative integer")))
}

fn prime_field(v: &Value) -> Result<Prime> {
    Prime::new(int_field(v, "p")?)
}

pub fn poly_to_value(q: &Poly) -> Value {
    Value::Array(q.coeffs().iter().map(|&c| json!(c)).collect())
}

pub fn poly_from_value(prime: Prime, v: &Value) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| bad("polynomial must be an integer array"))?;
    let mut coeffs = Vec::with_capacity(arr.len());
    for c in arr {
        coeffs.push(c.as_i64().ok_or_else(|| bad("polynomial entry must be an integer"))?);
    }
    Ok(Poly::from_i64(prime, &coeffs))
}

pub fn ratfn_to_value(r: &RationalFunction) -> Value {
    json!({ "num": poly_to_value(r.num()), "den": poly_to_value(r.den()) })
}

pub fn ratfn_from_value(prime: Prime, v: &Value) -> Result<RationalFunction> {
    let num = poly_from_value(prime, field(v, "num")?)?;
    let den = poly_from_value(prime, field(v, "den")?)?;
    RationalFunction::new(num, den).map_err(|_| bad("zero denominator"))
}

/// {"p": int, "gauge": "partial"|"theta", "coeffs": [{"num": [...], "den": [...]}, ...]}
/// with coeffs[i] the coefficient of the i-th power of the generator.
pub fn operator_to_value(d: &SkewOperator) -> Value {
    let coeffs: Vec<Value> = match d.order() {
        None => Vec::new(),
        Some(n) => (0..=n).map(|k| ratfn_to_value(&d.coeff(k))).collect(),
    };
    json!({
        "p": d.prime().get(),
        "gauge": d.gauge().to_string(),
        "coeffs": coeffs,
    })
}

pub fn operator_from_value(v: &Value) -> Result<SkewOperator> {
    let prime = prime_field(v)?;
    let gauge = match field(v, "gauge")?.as_str() {
        Some("partial") => Gauge::Partial,
        Some("theta") => Gauge::Theta,
        _ => return Err(bad("field \"gauge\" must be \"partial\" or \"theta\"")),
    };
    let arr = field(v, "coeffs")?
        .as_array()
        .ok_or_else(|| bad("field \"coeffs\" must be an array"))?;
    let coeffs: Vec<RationalFunction> =
        arr.iter().map(|c| ratfn_from_value(prime, c)).collect::<Result<_>>()?;
    Ok(SkewOperator::new(gauge, prime, coeffs))
}

/// {"p": int, "rep": [ints]}; any translate is accepted and canonicalized.
pub fn class_to_value(c: &RadiusClass) -> Value {
    json!({ "p": c.prime().get(), "rep": c.rep().elems() })
}

pub fn class_from_value(v: &Value) -> Result<RadiusClass> {
    let prime = prime_field(v)?;
    let arr = field(v, "rep")?
        .as_array()
        .ok_or_else(|| bad("field \"rep\" must be an integer array"))?;
    let mut elems = Vec::with_capacity(arr.len());
    for e in arr {
        elems.push(e.as_u64().ok_or_else(|| bad("exponent must be a nonnegative integer"))?);
    }
    RadiusClass::new(ExponentSet::new(prime, elems)?)
}

/// "0,1;0,2": representatives comma-joined inside, semicolon-joined across.
pub fn radii_key_string(key: &[RadiusClass]) -> String {
    key.iter().map(rep_string).collect::<Vec<_>>().join(";")
}

pub fn rep_string(c: &RadiusClass) -> String {
    c.rep().elems().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

pub fn radii_key_parse(prime: Prime, s: &str) -> Result<Vec<RadiusClass>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|part| {
            let mut elems = Vec::new();
            for e in part.split(',') {
                let e: u64 =
                    e.trim().parse().map_err(|_| bad(format!("bad exponent in key \"{s}\"")))?;
                elems.push(e);
            }
            RadiusClass::new(ExponentSet::new(prime, elems)?)
        })
        .collect()
}

fn kind_to_str(kind: TableKind) -> String {
    kind.to_string()
}

fn kind_from_str(s: &str) -> Result<TableKind> {
    match s {
        "sl" => Ok(TableKind::Sl),
        "so" => Ok(TableKind::So),
        "sp" => Ok(TableKind::Sp),
        other => Err(bad(format!("unknown table kind \"{other}\""))),
    }
}

/// {"p": int, "n": int, "kind": "sl"|"so"|"sp", "table": {key: count}}.
pub fn table_to_value(t: &DegreeTable) -> Value {
    let mut entries = Map::new();
    for (key, &count) in &t.entries {
        entries.insert(radii_key_string(key), json!(count));
    }
    json!({
        "p": t.prime.get(),
        "n": t.order,
        "kind": kind_to_str(t.kind),
        "table": entries,
    })
}

/// Accepts the standalone table document above, or a search output document
/// (anything carrying a "spec" object next to its "table").
pub fn table_from_value(v: &Value) -> Result<DegreeTable> {
    let (prime, order, kind) = match v.get("spec") {
        Some(spec) => {
            let prime = prime_field(spec)?;
            let order = int_field(spec, "n")? as usize;
            let kind = match field(spec, "self_dual")?.as_str() {
                Some("none") => TableKind::Sl,
                Some("orthogonal") => TableKind::So,
                Some("symplectic") => TableKind::Sp,
                _ => return Err(bad("field \"self_dual\" must name a duality kind")),
            };
            (prime, order, kind)
        }
        None => {
            let prime = prime_field(v)?;
            let order = int_field(v, "n")? as usize;
            let kind = kind_from_str(
                field(v, "kind")?.as_str().ok_or_else(|| bad("field \"kind\" must be a string"))?,
            )?;
            (prime, order, kind)
        }
    };
    let obj = field(v, "table")?
        .as_object()
        .ok_or_else(|| bad("field \"table\" must be an object"))?;
    let mut raw: BTreeMap<Vec<RadiusClass>, u64> = BTreeMap::new();
    let mut arity: Option<usize> = None;
    for (key, count) in obj {
        let classes = radii_key_parse(prime, key)?;
        for c in &classes {
            if c.size() != order {
                return Err(bad(format!("key \"{key}\" has a class of the wrong cardinality")));
            }
        }
        match arity {
            None => arity = Some(classes.len()),
            Some(a) if a != classes.len() => {
                return Err(bad(format!("key \"{key}\" has mismatched arity")));
            }
            _ => {}
        }
        let count =
            count.as_u64().ok_or_else(|| bad(format!("count for \"{key}\" must be an integer")))?;
        if raw.insert(classes, count).is_some() {
            return Err(bad(format!("key \"{key}\" appears twice after canonicalization")));
        }
    }
    DegreeTable::from_entries(prime, order, kind, raw)
}

/// Echo of a search specification inside search output documents.
pub fn spec_to_value(spec: &SearchSpec) -> Value {
    let points: Vec<Value> = spec.points.iter().map(|pt| json!(pt.to_string())).collect();
    let radii: Value = match &spec.radii {
        None => Value::Null,
        Some(list) => Value::Array(list.iter().map(|c| json!(rep_string(c))).collect()),
    };
    json!({
        "p": spec.prime.get(),
        "n": spec.order,
        "points": points,
        "radii": radii,
        "self_dual": spec.self_dual.to_string(),
        "budget": spec.budget,
    })
}
