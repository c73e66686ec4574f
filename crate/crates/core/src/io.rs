//! JSON file formats for graphs, schemes, tensors and distance tables.
//!
//! Objects are written with sorted keys and rationals as `"p/q"` strings so
//! identical inputs give byte-identical files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, DistanceTable};
use crate::rational;
use crate::scheme::{ClassLabel, IntersectionTensor, SchemeClasses};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    m: usize,
    vertices: Vec<String>,
    edges: Vec<(String, String, usize)>,
}

/// `{"m": 2, "vertices": [...], "edges": [["u", "v", 1], ...]}`
pub fn graph_to_json(g: &ColoredGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .into_iter()
        .map(|(u, v, c)| json!([g.name(u), g.name(v), c]))
        .collect();
    json!({ "m": g.m(), "vertices": g.names(), "edges": edges })
}

pub fn graph_from_json(text: &str) -> Result<ColoredGraph> {
    let f: GraphFile = serde_json::from_str(text)?;
    ColoredGraph::new(f.m, f.vertices, &f.edges)
}

/// A scheme file holds either vertex-level class matrices or an abstract
/// intersection tensor.
#[derive(Clone, Debug)]
pub enum SchemeFile {
    Classes(SchemeClasses),
    Tensor(IntersectionTensor),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFileRaw {
    labels: Vec<ClassLabel>,
    #[serde(default)]
    vertices: Option<Vec<String>>,
    #[serde(default)]
    matrices: Option<BTreeMap<String, Vec<Vec<u8>>>>,
    #[serde(default)]
    p: Option<Vec<(ClassLabel, ClassLabel, ClassLabel, Value)>>,
}

fn rational_value(v: &Value) -> Result<rational::Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().unwrap())),
        other => Err(Error::Parse(format!(
            "intersection number {other} is not an integer or \"p/q\" string"
        ))),
    }
}

pub fn scheme_from_json(text: &str) -> Result<SchemeFile> {
    let raw: SchemeFileRaw = serde_json::from_str(text)?;
    match (raw.matrices, raw.p) {
        (Some(mut mats), None) => {
            let mut ordered = Vec::with_capacity(raw.labels.len());
            for l in &raw.labels {
                let m = mats
                    .remove(&l.to_string())
                    .ok_or_else(|| Error::MissingLabel(format!("matrix for `{l}`")))?;
                ordered.push(m);
            }
            if let Some(extra) = mats.keys().next() {
                return Err(Error::UnknownLabel(extra.clone()));
            }
            let n = ordered.first().map_or(0, Vec::len);
            let vertices = raw.vertices.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
            Ok(SchemeFile::Classes(SchemeClasses::new(vertices, raw.labels, ordered)?))
        }
        (None, Some(p)) => {
            let entries = p
                .into_iter()
                .map(|(a, b, c, v)| Ok((a, b, c, rational_value(&v)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(SchemeFile::Tensor(IntersectionTensor::new(raw.labels, entries)?))
        }
        _ => Err(Error::Parse(
            "scheme file needs exactly one of `matrices` or `p`".into(),
        )),
    }
}

/// `{"labels": [...], "vertices": [...], "matrices": {"label": [[0, 1, ...], ...]}}`
pub fn scheme_to_json(s: &SchemeClasses) -> Value {
    let matrices: BTreeMap<String, Vec<Vec<u8>>> = (0..s.num_classes())
        .map(|c| (s.labels()[c].to_string(), s.matrix(c)))
        .collect();
    json!({ "labels": s.labels(), "vertices": s.vertices(), "matrices": matrices })
}

/// `{"labels": [...], "p": [["a", "b", "c", "p/q"], ...]}` with nonzero entries only.
pub fn tensor_to_json(t: &IntersectionTensor) -> Value {
    let l = t.labels();
    let p: Vec<Value> = t
        .entries()
        .map(|((a, b, c), v)| json!([l[a], l[b], l[c], rational::format(v)]))
        .collect();
    json!({ "labels": l, "p": p })
}

/// `{"m": 2, "order": "...", "labels": [...], "distances": {"x|y": [i, j]}}`
pub fn distance_table_to_json(t: &DistanceTable) -> Value {
    json!({
        "m": t.m,
        "order": t.order.to_string(),
        "labels": t.labels,
        "distances": t.to_map(),
    })
}
