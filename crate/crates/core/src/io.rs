//! CSV input and JSON/CSV encodings of Morse sets and transformation outputs.
//!
//! Extended reals are written as JSON numbers when finite and as the strings
//! `"inf"` / `"-inf"` otherwise. On input `null` is also accepted where the
//! sign of the infinity is implied by the field (death: `-inf`, persistence:
//! `+inf`).

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extract::{SampledSeries, Segment};
use crate::metrics::AnyDiagram;
use crate::morse::{CriticalPoint, Domain, Kind, MorseSet};
use crate::transform::{PdPoint, PdSet, PtFeature, PtSet, RptFeature, RptSet};

/// Parses `x,y` rows into a series. Blank lines separate segments; an optional
/// header line may precede the first row; lines starting with `#` are skipped.
pub fn parse_series_csv(text: &str) -> Result<SampledSeries> {
    let mut segments = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    let mut seen_data = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !current.is_empty() {
                segments.push(Segment::new(std::mem::take(&mut current))?);
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = match fields.as_slice() {
            [x, y] => x.parse::<f64>().ok().zip(y.parse::<f64>().ok()),
            _ => None,
        };
        match parsed {
            Some(xy) => {
                seen_data = true;
                current.push(xy);
            }
            None if !seen_data && segments.is_empty() && current.is_empty() && fields.len() == 2 => {
                // header
            }
            None => {
                return Err(Error::Parse(format!(
                    "line {}: expected two numeric columns `x,y`, got {raw:?}",
                    lineno + 1
                )))
            }
        }
    }
    if !current.is_empty() {
        segments.push(Segment::new(current)?);
    }
    if segments.is_empty() {
        return Err(Error::EmptyInput("no samples in CSV input".into()));
    }
    SampledSeries::new(segments)
}

pub fn ext_to_json(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v == f64::INFINITY {
        json!("inf")
    } else if v == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        Value::Null
    }
}

/// Reads an extended real; `null` maps to `null_as` when given.
pub fn ext_from_json(v: &Value, null_as: Option<f64>) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}"))),
        Value::String(s) => match s.as_str() {
            "inf" | "+inf" | "Infinity" => Ok(f64::INFINITY),
            "-inf" | "-Infinity" => Ok(f64::NEG_INFINITY),
            other => other.parse().map_err(|_| Error::Parse(format!("bad number {other:?}"))),
        },
        Value::Null => null_as.ok_or_else(|| Error::Parse("unexpected null".into())),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

fn tuples<'a>(v: &'a Value, field: &str, arity: usize) -> Result<Vec<&'a [Value]>> {
    let arr = v
        .get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("missing array field {field:?}")))?;
    arr.iter()
        .map(|t| match t.as_array() {
            Some(items) if items.len() == arity => Ok(items.as_slice()),
            _ => Err(Error::Parse(format!("{field}: expected {arity}-element arrays, got {t}"))),
        })
        .collect()
}

pub fn morse_set_to_json(set: &MorseSet) -> Value {
    let pts = |v: &[CriticalPoint]| -> Vec<Value> { v.iter().map(|p| json!([p.x, p.y])).collect() };
    json!({
        "domain": [set.domain().start, set.domain().end],
        "maxima": pts(set.maxima()),
        "minima": pts(set.minima()),
    })
}

/// Parses a Morse set without validating it.
pub fn morse_set_from_json(v: &Value) -> Result<MorseSet> {
    let domain = v
        .get("domain")
        .and_then(Value::as_array)
        .filter(|d| d.len() == 2)
        .ok_or_else(|| Error::Parse("missing `domain: [a, b]`".into()))?;
    let domain = Domain::new(ext_from_json(&domain[0], None)?, ext_from_json(&domain[1], None)?);
    let read = |field: &str, kind: Kind| -> Result<Vec<CriticalPoint>> {
        tuples(v, field, 2)?
            .into_iter()
            .map(|t| Ok(CriticalPoint::new(ext_from_json(&t[0], None)?, ext_from_json(&t[1], None)?, kind)))
            .collect()
    };
    Ok(MorseSet::from_parts_unchecked(domain, read("maxima", Kind::Max)?, read("minima", Kind::Min)?))
}

/// A single set is written as an object, several as an array.
pub fn morse_sets_to_json(sets: &[MorseSet]) -> Value {
    match sets {
        [one] => morse_set_to_json(one),
        many => Value::Array(many.iter().map(morse_set_to_json).collect()),
    }
}

pub fn morse_sets_from_json(v: &Value) -> Result<Vec<MorseSet>> {
    match v {
        Value::Array(items) => items.iter().map(morse_set_from_json).collect(),
        obj => Ok(vec![morse_set_from_json(obj)?]),
    }
}

pub fn pt_to_json(pt: &PtSet) -> Value {
    json!({
        "features": pt.features.iter()
            .map(|f| json!([f.x, ext_to_json(f.birth), ext_to_json(f.death)]))
            .collect::<Vec<_>>(),
        "diagonal": pt.diagonal.iter().map(|f| json!([f.x, f.birth])).collect::<Vec<_>>(),
    })
}

pub fn pt_from_json(v: &Value) -> Result<PtSet> {
    let features = tuples(v, "features", 3)?
        .into_iter()
        .map(|t| {
            Ok(PtFeature {
                x: ext_from_json(&t[0], None)?,
                birth: ext_from_json(&t[1], None)?,
                death: ext_from_json(&t[2], Some(f64::NEG_INFINITY))?,
            })
        })
        .collect::<Result<_>>()?;
    let diagonal = if v.get("diagonal").is_some() {
        tuples(v, "diagonal", 2)?
            .into_iter()
            .map(|t| {
                let y = ext_from_json(&t[1], None)?;
                Ok(PtFeature { x: ext_from_json(&t[0], None)?, birth: y, death: y })
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(PtSet { features, diagonal })
}

pub fn rpt_to_json(rpt: &RptSet) -> Value {
    json!({
        "features": rpt.features.iter()
            .map(|f| json!([f.x, ext_to_json(f.persistence)]))
            .collect::<Vec<_>>(),
    })
}

pub fn rpt_from_json(v: &Value) -> Result<RptSet> {
    let features = tuples(v, "features", 2)?
        .into_iter()
        .map(|t| {
            Ok(RptFeature {
                x: ext_from_json(&t[0], None)?,
                persistence: ext_from_json(&t[1], Some(f64::INFINITY))?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RptSet { features })
}

pub fn pd_to_json(pd: &PdSet) -> Value {
    json!({
        "points": pd.points.iter()
            .map(|p| json!([ext_to_json(p.birth), ext_to_json(p.death)]))
            .collect::<Vec<_>>(),
    })
}

pub fn pd_from_json(v: &Value) -> Result<PdSet> {
    let points = tuples(v, "points", 2)?
        .into_iter()
        .map(|t| {
            Ok(PdPoint {
                birth: ext_from_json(&t[0], None)?,
                death: ext_from_json(&t[1], Some(f64::NEG_INFINITY))?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PdSet { points })
}

pub fn diagram_to_json(d: &AnyDiagram) -> Value {
    match d {
        AnyDiagram::Pt(x) => pt_to_json(x),
        AnyDiagram::Rpt(x) => rpt_to_json(x),
        AnyDiagram::Pd(x) => pd_to_json(x),
    }
}

/// What a parsed JSON document holds.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    MorseSets(Vec<MorseSet>),
    Diagram(AnyDiagram),
}

/// Recognises Morse sets (object or array), PT, RPT and PD documents by shape.
///
/// A `features` array whose entries are pairs is read as RPT, triples as PT.
/// An empty `features` array without `diagonal` is read as RPT.
pub fn parse_document(v: &Value) -> Result<Document> {
    if v.is_array() || v.get("domain").is_some() {
        return Ok(Document::MorseSets(morse_sets_from_json(v)?));
    }
    if v.get("points").is_some() {
        return Ok(Document::Diagram(AnyDiagram::Pd(pd_from_json(v)?)));
    }
    if let Some(features) = v.get("features").and_then(Value::as_array) {
        let arity = features.first().and_then(Value::as_array).map(Vec::len);
        let is_pt = match arity {
            Some(3) => true,
            Some(_) => false,
            None => v.get("diagonal").is_some(),
        };
        return Ok(Document::Diagram(if is_pt {
            AnyDiagram::Pt(pt_from_json(v)?)
        } else {
            AnyDiagram::Rpt(rpt_from_json(v)?)
        }));
    }
    Err(Error::Parse("unrecognised JSON document".into()))
}

fn num(v: f64) -> String {
    format!("{v}")
}

pub fn morse_sets_to_csv(sets: &[MorseSet]) -> String {
    let mut out = String::from("x,y,kind\n");
    for (i, set) in sets.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for p in set.by_position() {
            out.push_str(&format!("{},{},{}\n", num(p.x), num(p.y), p.kind));
        }
    }
    out
}

pub fn pt_to_csv(pt: &PtSet) -> String {
    let mut out = String::from("x,birth,death,kind\n");
    for f in &pt.features {
        out.push_str(&format!("{},{},{},feature\n", num(f.x), num(f.birth), num(f.death)));
    }
    for f in &pt.diagonal {
        out.push_str(&format!("{},{},{},diagonal\n", num(f.x), num(f.birth), num(f.death)));
    }
    out
}

pub fn rpt_to_csv(rpt: &RptSet) -> String {
    let mut out = String::from("x,persistence\n");
    for f in &rpt.features {
        out.push_str(&format!("{},{}\n", num(f.x), num(f.persistence)));
    }
    out
}

pub fn pd_to_csv(pd: &PdSet) -> String {
    let mut out = String::from("birth,death\n");
    for p in &pd.points {
        out.push_str(&format!("{},{}\n", num(p.birth), num(p.death)));
    }
    out
}
