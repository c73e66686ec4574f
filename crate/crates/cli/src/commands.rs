use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use mdrg::generators::{
    cartesian_product, cell24, cell24_scheme, complete, cycle, gen24cell, hamming_graph, one_class_scheme, path,
    pauli_scheme4, symmetrize,
};
use mdrg::io::{distance_table_to_json, graph_to_json, scheme_to_json, tensor_to_json, SchemeFile};
use mdrg::{
    ab_region_for_scheme, boundary_check, certify_ppoly, certify_ppoly_refined, certify_type_ab, discover_labelings,
    extract_polynomials, intersection_tensor, m_distance_table, mdrg_check, rational, verify_recurrences,
    verify_scheme_axioms, AlphaBeta, Dominance, IntersectionTensor, MonomialOrder, PartialOrder,
};
use serde_json::{json, Value};

use crate::report::Report;
use crate::{load, Command, Outcome};

pub fn run(command: Command) -> Result<(Value, Outcome)> {
    let report = match command {
        Command::Generate { family, scheme, out } => {
            let value = generate(&family, scheme.as_deref())?;
            return match out {
                Some(path) => {
                    write_json(&path, &value)?;
                    Ok((
                        json!({ "command": "generate", "family": family, "out": path }),
                        Outcome::Pass,
                    ))
                }
                None => Ok((value, Outcome::Pass)),
            };
        }
        Command::Distances { graph, order, table } => distances(&graph, &order, table.as_deref())?,
        Command::CertifyMdrg { graph, order, tensor } => certify_mdrg(&graph, &order, tensor.as_deref())?,
        Command::VerifyScheme { scheme } => verify_scheme(&scheme)?,
        Command::CertifyPpoly {
            input,
            order,
            partial,
            labeling,
            boundary,
            polys,
            recurrences,
        } => {
            let t = load::tensor(&input, &order, labeling.as_ref())?;
            let mut r = Report::new("certify-ppoly");
            r.input("path", &input).input("order", order.to_string());
            if let Some(l) = &labeling {
                r.input("labeling", l);
            }
            if let Some(p) = &partial {
                r.input("partial", p.to_string());
            }
            certify_ppoly_cmd(
                &mut r,
                &t,
                &order,
                partial.as_ref(),
                boundary,
                polys.as_ref().map(Option::as_deref),
                recurrences,
            )?;
            r
        }
        Command::TypeAb {
            scheme,
            labeling,
            alpha,
            beta,
            region,
        } => {
            let t = load::tensor(&scheme, &MonomialOrder::DegLexSum, labeling.as_ref())?;
            let mut r = Report::new("type-ab");
            r.input("path", &scheme);
            if let Some(l) = &labeling {
                r.input("labeling", l);
            }
            let point = match (alpha, beta) {
                (Some(a), Some(b)) => Some(AlphaBeta::new(rational::parse(&a)?, rational::parse(&b)?)?),
                _ => None,
            };
            type_ab(&mut r, &t, point, region)?;
            r
        }
        Command::Discover { scheme, m, order } => discover(&scheme, m, &order)?,
    };
    let outcome = if report.passed() { Outcome::Pass } else { Outcome::Fail };
    Ok((report.to_json(), outcome))
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write `{}`", path.display()))
}

fn args<'a>(family: &str, rest: &'a str, n: usize) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
    if parts.len() != n || parts.iter().any(|p| p.is_empty()) {
        bail!("`{family}` takes {n} comma-separated argument(s), got `{rest}`");
    }
    Ok(parts)
}

fn size(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| anyhow!("expected a non-negative integer, got `{s}`"))
}

pub fn generate(spec: &str, scheme: Option<&Path>) -> Result<Value> {
    let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let one = |f: &dyn Fn(usize) -> mdrg::Result<mdrg::ColoredGraph>| -> Result<Value> {
        Ok(graph_to_json(&f(size(args(family, rest, 1)?[0])?)?))
    };
    let no_args = || -> Result<()> {
        if rest.is_empty() {
            Ok(())
        } else {
            bail!("`{family}` takes no arguments")
        }
    };
    Ok(match family {
        "cycle" => one(&cycle)?,
        "path" => one(&path)?,
        "complete" => one(&complete)?,
        "hamming" => {
            let a = args(family, rest, 2)?;
            graph_to_json(&hamming_graph(size(a[0])?, size(a[1])?)?)
        }
        "cartesian" => {
            let factors = rest
                .split(',')
                .map(|p| load::graph(Path::new(p.trim())))
                .collect::<Result<Vec<_>>>()?;
            graph_to_json(&cartesian_product(&factors)?)
        }
        "cell24" => {
            no_args()?;
            graph_to_json(&cell24())
        }
        "cell24-scheme" => {
            no_args()?;
            scheme_to_json(&cell24_scheme())
        }
        "gen24cell" => {
            let a = args(family, rest, 2)?;
            tensor_to_json(&gen24cell(&rational::parse(a[0])?, &rational::parse(a[1])?)?)
        }
        "pauli4" => {
            no_args()?;
            scheme_to_json(&pauli_scheme4())
        }
        "one-class" => scheme_to_json(&one_class_scheme(size(args(family, rest, 1)?[0])?)?),
        "symmetrize" => {
            let k = size(args(family, rest, 1)?[0])?;
            let base = scheme.ok_or_else(|| anyhow!("`symmetrize:K` needs --scheme FILE"))?;
            scheme_to_json(&symmetrize(&load::scheme_classes(base)?, k)?)
        }
        _ => bail!("unknown family `{family}`"),
    })
}

fn distances(path: &Path, order: &MonomialOrder, table_out: Option<&Path>) -> Result<Report> {
    let g = load::graph(path)?;
    let table = m_distance_table(&g, order)?;
    let mut r = Report::new("distances");
    r.input("path", path).input("order", order.to_string());
    r.field("labels", &table.labels).field("num_labels", table.labels.len());
    match table_out {
        Some(out) => {
            write_json(out, &distance_table_to_json(&table))?;
            r.field("table_file", out);
        }
        None => {
            r.field("table", distance_table_to_json(&table));
        }
    }
    Ok(r)
}

fn certify_mdrg(path: &Path, order: &MonomialOrder, tensor_out: Option<&Path>) -> Result<Report> {
    let g = load::graph(path)?;
    let report = mdrg_check(&g, order)?;
    let mut r = Report::new("certify-mdrg");
    r.input("path", path).input("order", order.to_string());
    r.field("labels", &report.table.labels);
    if let Some(t) = &report.tensor {
        let sizes: BTreeMap<String, usize> = report
            .table
            .row_counts(0)
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        r.field("class_sizes", sizes);
        r.field("valencies", valencies(t));
        if let Some(out) = tensor_out {
            write_json(out, &tensor_to_json(t))?;
            r.field("tensor_file", out);
        }
    }
    r.certificate(report.certificate);
    Ok(r)
}

fn valencies(t: &IntersectionTensor) -> BTreeMap<String, String> {
    t.labels()
        .iter()
        .zip(t.valencies())
        .map(|(l, k)| (l.to_string(), rational::format(&k)))
        .collect()
}

fn verify_scheme(path: &Path) -> Result<Report> {
    let mut r = Report::new("verify-scheme");
    r.input("path", path);
    match load::scheme(path)? {
        SchemeFile::Classes(s) => {
            let cert = verify_scheme_axioms(&s);
            if cert.passed() {
                let t = intersection_tensor(&s)?;
                r.field("valencies", valencies(&t));
                r.field("tensor", tensor_to_json(&t));
            }
            r.certificate(cert);
        }
        SchemeFile::Tensor(t) => {
            r.field("valencies", valencies(&t));
            r.certificate(t.validate());
        }
    }
    Ok(r)
}

fn certify_ppoly_cmd(
    r: &mut Report,
    t: &IntersectionTensor,
    order: &MonomialOrder,
    partial: Option<&PartialOrder>,
    boundary: bool,
    polys: Option<Option<&Path>>,
    recurrences: bool,
) -> Result<()> {
    let main = match partial {
        Some(p) => certify_ppoly_refined(t, order, p)?,
        None => certify_ppoly(t, order)?,
    };
    let passed = main.passed();
    r.certificate(main);
    let cmp = match partial {
        Some(p) => Dominance::Partial(p.clone()),
        None => Dominance::Order(order.clone()),
    };
    if boundary {
        r.certificate(boundary_check(t, &cmp)?);
    }
    if polys.is_none() && !recurrences {
        return Ok(());
    }
    if !passed {
        r.field("polynomials_skipped", "certificate failed");
        return Ok(());
    }
    let (expansion, cert) = extract_polynomials(t, &cmp)?;
    let extracted = cert.passed();
    r.certificate(cert);
    if !extracted {
        return Ok(());
    }
    if let Some(out) = polys {
        let shown: BTreeMap<String, String> = expansion
            .polys
            .iter()
            .map(|(n, p)| (n.to_string(), p.to_string()))
            .collect();
        r.field("polynomials", shown);
        if let Some(out) = out {
            write_json(out, &expansion.to_json())?;
            r.field("polynomials_file", out);
        }
    }
    if recurrences {
        r.certificate(verify_recurrences(&expansion, t, partial)?);
    }
    Ok(())
}

fn type_ab(r: &mut Report, t: &IntersectionTensor, point: Option<AlphaBeta>, region: bool) -> Result<()> {
    if let Some(ab) = point {
        let p = PartialOrder::AlphaBeta(ab.clone());
        r.input("partial", p.to_string());
        r.certificate(certify_type_ab(t, &ab)?);
        if let Ok(refined) = certify_ppoly_refined(t, &MonomialOrder::DegLexY2, &p) {
            r.informational(refined);
        }
    }
    if region {
        let reg = ab_region_for_scheme(t)?;
        let rects: Vec<Value> = reg
            .rects
            .iter()
            .map(|rect| json!({ "alpha": rect.alpha.to_string(), "beta": rect.beta.to_string() }))
            .collect();
        r.field("region", reg.to_string()).field("rects", rects);
        if reg.is_empty() {
            r.fail();
        }
    }
    Ok(())
}

fn discover(path: &Path, m: usize, order: &MonomialOrder) -> Result<Report> {
    let s = load::scheme_classes(path)?;
    let found = discover_labelings(&s, m, order)?;
    let mut r = Report::new("discover");
    r.input("path", path).input("m", m).input("order", order.to_string());
    r.field("count", found.len()).field("labelings", &found);
    Ok(r)
}
