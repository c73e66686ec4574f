//! Reading input files into library objects.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use mdrg::io::{graph_from_json, scheme_from_json, SchemeFile};
use mdrg::{intersection_tensor, mdrg_check, ColoredGraph, IntersectionTensor, Labeling, MonomialOrder, SchemeClasses};
use serde_json::Value;

pub enum Input {
    Graph(ColoredGraph),
    Scheme(SchemeFile),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

fn locate(err: mdrg::Error, path: &Path) -> anyhow::Error {
    anyhow!("{}: {err}", path.display())
}

pub fn graph(path: &Path) -> Result<ColoredGraph> {
    graph_from_json(&read(path)?).map_err(|e| locate(e, path))
}

pub fn scheme(path: &Path) -> Result<SchemeFile> {
    scheme_from_json(&read(path)?).map_err(|e| locate(e, path))
}

pub fn scheme_classes(path: &Path) -> Result<SchemeClasses> {
    match scheme(path)? {
        SchemeFile::Classes(s) => Ok(s),
        SchemeFile::Tensor(_) => bail!(
            "{}: expected class matrices, found an intersection tensor",
            path.display()
        ),
    }
}

/// A graph file has an `edges` key; anything else is read as a scheme.
pub fn any(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    if v.get("edges").is_some() {
        Ok(Input::Graph(graph_from_json(&text).map_err(|e| locate(e, path))?))
    } else {
        Ok(Input::Scheme(scheme_from_json(&text).map_err(|e| locate(e, path))?))
    }
}

/// The intersection tensor of any input. Graphs are labeled by their
/// m-distances under `order`; `labeling` then renames classes.
pub fn tensor(path: &Path, order: &MonomialOrder, labeling: Option<&Labeling>) -> Result<IntersectionTensor> {
    let t = match any(path)? {
        Input::Graph(g) => {
            let report = mdrg_check(&g, order)?;
            report.tensor.ok_or_else(|| {
                anyhow!(
                    "{}: graph is not m-distance-regular under {order}; run certify-mdrg for the witness",
                    path.display()
                )
            })?
        }
        Input::Scheme(SchemeFile::Classes(s)) => intersection_tensor(&s)
            .map_err(|e| anyhow!("{}: {e}; run verify-scheme for the witness", path.display()))?,
        Input::Scheme(SchemeFile::Tensor(t)) => t,
    };
    match labeling {
        Some(l) => Ok(l.apply(&t)?),
        None => Ok(t),
    }
}
