//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::cmp::Ordering;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mdrg::generators::{cell24_scheme, complete, cycle, gen24cell, hamming_graph, pauli_scheme4, symmetrize};
use mdrg::io::{scheme_from_json, SchemeFile};
use mdrg::order::validate_order_fn;
use mdrg::rational::{frac, int};
use mdrg::{
    certify_ppoly, certify_ppoly_refined, count_walks_by_type, discover_labelings, extract_polynomials,
    m_distance_table, mdrg_check, union_graph, validate_monomial_order, verify_recurrences, verify_scheme_axioms,
    AlphaBeta, ClassLabel, ColoredGraph, Dominance, IntersectionTensor, Labeling, MonomialOrder, MultiIndex,
    PartialOrder, Polynomial, Rational, Witness,
};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const LIMIT_CELL24: Duration = Duration::from_secs(5);
const LIMIT_PRODUCT: Duration = Duration::from_secs(30);
const LIMIT_SYMMETRIZE: Duration = Duration::from_secs(60);
/// Exact rational comparison throughout.
const TOLERANCE: i64 = 0;

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mdrg(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_mdrg")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

fn mi(a: u32, b: u32) -> MultiIndex {
    MultiIndex::from([a, b])
}

fn idx(t: &IntersectionTensor, a: &MultiIndex) -> Option<usize> {
    t.index_of(&ClassLabel::Index(a.clone()))
}

fn certified(g: &ColoredGraph, order: &MonomialOrder) -> Result<IntersectionTensor, String> {
    let r = mdrg_check(g, order).map_err(|e| e.to_string())?;
    if !r.certificate.passed() {
        return Err(format!(
            "not m-distance-regular under {order}: {:?}",
            r.certificate.witness
        ));
    }
    Ok(r.tensor.unwrap())
}

fn tensor_file(path: &Path) -> Result<IntersectionTensor, String> {
    match scheme_from_json(&fs::read_to_string(path).map_err(|e| e.to_string())?) {
        Ok(SchemeFile::Tensor(t)) => Ok(t),
        other => Err(format!("expected a tensor file, got {other:?}")),
    }
}

fn criterion_1(dir: &Path) -> Outcome {
    let graph = dir.join("cell24.json");
    let (code, _) = mdrg(&["generate", "cell24", "-o", graph.to_str().unwrap()]);
    ensure(code == 0, || "generate cell24 failed".into())?;
    let reference = gen24cell(&int(2), &frac(1, 2)).map_err(|e| e.to_string())?;
    let cases = [
        (
            "deglex-sum",
            Labeling::ad2(),
            vec![mi(0, 0), mi(1, 0), mi(0, 1), mi(0, 2), mi(2, 0)],
            [1, 6, 8, 8, 1],
        ),
        (
            "deglex-y2",
            Labeling::ad1(),
            vec![mi(0, 0), mi(1, 0), mi(0, 1), mi(1, 1), mi(2, 0)],
            [1, 6, 8, 8, 1],
        ),
    ];
    for (order, labeling, domain, sizes) in cases {
        let tensor = dir.join(format!("cell24-{order}.tensor.json"));
        let (code, report) = mdrg(&[
            "certify-mdrg",
            graph.to_str().unwrap(),
            "--order",
            order,
            "--tensor",
            tensor.to_str().unwrap(),
        ]);
        ensure(code == 0, || format!("certify-mdrg --order {order} exited {code}"))?;
        let mut got: Vec<String> = report["labels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l.as_str().unwrap().into())
            .collect();
        got.sort();
        let mut want: Vec<String> = domain.iter().map(|d| d.to_string()).collect();
        want.sort();
        ensure(got == want, || format!("{order}: D = {got:?}, expected {want:?}"))?;
        for (d, k) in domain.iter().zip(sizes) {
            let n = &report["class_sizes"][d.to_string()];
            ensure(n == k, || format!("{order}: class {d} has {n} vertices, expected {k}"))?;
        }
        let graph_tensor = tensor_file(&tensor)?;
        let family = labeling.apply(&reference).map_err(|e| e.to_string())?;
        ensure(graph_tensor.same_as(&family), || {
            format!("{order}: tensor differs from gen24cell(2, 1/2) under {labeling}")
        })?;
    }
    Ok(())
}

/// `p_{ab}^c` of the cycle `C_n`, counted on the cycle itself.
fn cycle_p(n: u32, a: u32, b: u32, c: u32) -> Rational {
    let d = |x: u32, y: u32| {
        let k = (x + n - y) % n;
        k.min(n - k)
    };
    let Some(y) = (0..n).find(|&y| d(0, y) == c) else {
        return Rational::zero();
    };
    int((0..n).filter(|&z| d(0, z) == a && d(z, y) == b).count() as i64)
}

fn criterion_2() -> Outcome {
    let g = mdrg::generators::cartesian_product(&[cycle(14).unwrap(), cycle(9).unwrap()]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for order in [MonomialOrder::DegLexSum, MonomialOrder::DegLexY2, MonomialOrder::Lex] {
        let t = certified(&g, &order)?;
        ensure(t.len() == 40, || format!("{order}: {} classes", t.len()))?;
        for _ in 0..25 {
            let pick = |rng: &mut ChaCha8Rng| mi(rng.gen_range(0..=7), rng.gen_range(0..=4));
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let want = cycle_p(14, a.get(0), b.get(0), c.get(0)) * cycle_p(9, a.get(1), b.get(1), c.get(1));
            let got = t.p(idx(&t, &a).unwrap(), idx(&t, &b).unwrap(), idx(&t, &c).unwrap());
            ensure(got == want, || {
                format!("{order}: p[{a},{b}]^{c} = {got}, product gives {want}")
            })?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for k in [2, 3] {
        let s = symmetrize(&pauli_scheme4(), k).map_err(|e| e.to_string())?;
        let cert = verify_scheme_axioms(&s);
        ensure(cert.passed(), || format!("S^{k}: axioms fail {:?}", cert.witness))?;
        let gens: Vec<usize> = (0..2)
            .map(|i| s.index_of(&ClassLabel::Index(MultiIndex::unit(2, i))).unwrap())
            .collect();
        let g = union_graph(&s, &gens).map_err(|e| e.to_string())?;
        let h = hamming_graph(k, 4).unwrap();
        let plain = |g: &ColoredGraph| g.edges().iter().map(|&(u, v, _)| (u, v)).collect::<Vec<_>>();
        ensure(g.names() == h.names() && plain(&g) == plain(&h), || {
            format!("S^{k}: union graph is not H({k},4)")
        })?;
        let t = certified(&g, &MonomialOrder::DegLexSum)?;
        ensure(t.len() == s.num_classes(), || {
            format!("S^{k}: {} m-distance classes", t.len())
        })?;
    }
    Ok(())
}

fn criterion_4(dir: &Path) -> Outcome {
    let y2 = MonomialOrder::DegLexY2;
    let sum = MonomialOrder::DegLexSum;
    for ell in [int(2), int(3)] {
        for s in [frac(1, 2), frac(3, 4)] {
            let tag = format!("(l={ell}, s={s})");
            let base = gen24cell(&ell, &s).map_err(|e| e.to_string())?;
            let d1 = Labeling::ad1().apply(&base).map_err(|e| e.to_string())?;
            let d2 = Labeling::ad2().apply(&base).map_err(|e| e.to_string())?;
            let err = |e: mdrg::Error| e.to_string();

            ensure(certify_ppoly(&d1, &y2).map_err(err)?.passed(), || {
                format!("{tag} (a) D1 deglex-y2")
            })?;
            let p10 = PartialOrder::AlphaBeta(AlphaBeta::new(int(1), int(0)).unwrap());
            ensure(certify_ppoly_refined(&d1, &y2, &p10).map_err(err)?.passed(), || {
                format!("{tag} (a) D1 ab:1,0")
            })?;

            let cert = certify_ppoly(&d2, &y2).map_err(err)?;
            let named = matches!(&cert.witness, Some(Witness::IntersectionNumber { generator: 1, a, b, .. })
                if *a == mi(0, 1) && *b == mi(0, 2));
            ensure(!cert.passed() && named, || {
                format!("{tag} (b) witness {:?}", cert.witness)
            })?;

            ensure(certify_ppoly(&d2, &sum).map_err(err)?.passed(), || {
                format!("{tag} (c) D2 deglex-sum")
            })?;

            let c = (int(4) * &s - int(1)) * (int(4) * &s + int(1));
            let v11 = Polynomial::zero(2)
                .with_term(mi(1, 1), int(1) / &c)
                .with_term(mi(0, 1), int(-1));
            let v20 = Polynomial::zero(2)
                .with_term(mi(2, 0), int(1) / (int(2) * &c))
                .with_term(mi(1, 0), -(int(2) * (int(8) * &s * &s - int(1))) / &c)
                .with_term(mi(0, 0), int(-1));
            let den = int(2) * (&ell - int(1)) * &s * (int(4) * &s + int(1));
            let v02 = Polynomial::zero(2)
                .with_term(mi(0, 2), int(1) / &den)
                .with_term(
                    mi(0, 1),
                    -(int(2) * (&ell - int(1)) * &s * (int(4) * &s - int(1))) / &den,
                )
                .with_term(mi(1, 0), -(int(8) * &ell * &s * &s) / &den)
                .with_term(mi(0, 0), -(int(16) * &ell * &s * &s) / &den);
            let (p1, _) = extract_polynomials(&d1, &Dominance::Order(y2.clone())).map_err(err)?;
            let (p2, _) = extract_polynomials(&d2, &Dominance::Order(sum.clone())).map_err(err)?;
            for (name, got, want) in [
                ("v11", p1.get(&mi(1, 1)), &v11),
                ("v20", p1.get(&mi(2, 0)), &v20),
                ("v02", p2.get(&mi(0, 2)), &v02),
                ("v20 on D2", p2.get(&mi(2, 0)), &v20),
            ] {
                ensure(got == Some(want), || {
                    format!("{tag} (d) {name} = {got:?}, expected {want}")
                })?;
            }

            let file = dir.join(format!("gen24cell-{ell}-{}.json", s.to_string().replace('/', "_")));
            let spec = format!("gen24cell:{ell},{s}");
            let (code, _) = mdrg(&["generate", &spec, "-o", file.to_str().unwrap()]);
            ensure(code == 0, || format!("generate {spec} failed"))?;
            for (lab, want) in [
                ("ad2", "alpha: [1/2, 1), beta: [0, 1)"),
                ("ad1", "alpha: [0, 1], beta: [0, 1)"),
            ] {
                let (code, v) = mdrg(&["type-ab", file.to_str().unwrap(), "--labeling", lab, "--region"]);
                ensure(code == 0 && v["region"] == want, || {
                    format!("{tag} (e) {lab}: {}", v["region"])
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let lex = MonomialOrder::Lex;
    for (name, g) in [
        ("C6", cycle(6).unwrap()),
        ("K5", complete(5).unwrap()),
        ("H(3,2)", hamming_graph(3, 2).unwrap()),
    ] {
        let t = certified(&g, &lex)?;
        let (polys, cert) = extract_polynomials(&t, &Dominance::Order(lex.clone())).map_err(|e| e.to_string())?;
        ensure(cert.passed(), || format!("{name}: extraction failed"))?;
        let rec = verify_recurrences(&polys, &t, None).map_err(|e| e.to_string())?;
        ensure(rec.passed(), || format!("{name}: recurrence {:?}", rec.witness))?;
    }
    let found = discover_labelings(&cell24_scheme(), 1, &lex).map_err(|e| e.to_string())?;
    ensure(found.is_empty(), || {
        format!("24-cell scheme has {} univariate labelings", found.len())
    })
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, m: usize) -> ColoredGraph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let mut pairs: Vec<(usize, usize)> = (1..n).map(|k| (rng.gen_range(0..k), k)).collect();
        for x in 0..n {
            for y in x + 1..n {
                if !pairs.contains(&(x, y)) && rng.gen_bool(0.3) {
                    pairs.push((x, y));
                }
            }
        }
        if pairs.len() < m {
            continue;
        }
        pairs.shuffle(rng);
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| (x, y, if k < m { k + 1 } else { rng.gen_range(1..=m) }))
            .collect();
        return ColoredGraph::from_indices(m, (0..n).map(|i| i.to_string()).collect(), &edges).unwrap();
    }
}

fn path_minimum(g: &ColoredGraph, order: &MonomialOrder, x: usize) -> Vec<Option<MultiIndex>> {
    fn go(
        g: &ColoredGraph,
        o: &MonomialOrder,
        v: usize,
        len: MultiIndex,
        seen: &mut [bool],
        best: &mut [Option<MultiIndex>],
    ) {
        if best[v].as_ref().is_none_or(|b| o.cmp(&len, b) == Ordering::Less) {
            best[v] = Some(len.clone());
        }
        for &(w, c) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                go(g, o, w, len.bump(c - 1), seen, best);
                seen[w] = false;
            }
        }
    }
    let mut best = vec![None; g.len()];
    let mut seen = vec![false; g.len()];
    seen[x] = true;
    go(g, order, x, MultiIndex::zero(g.m()), &mut seen, &mut best);
    best
}

fn criterion_6() -> Outcome {
    for m in [1, 2] {
        for o in MonomialOrder::builtins(m) {
            let cert = validate_monomial_order(&o, m, 4).map_err(|e| e.to_string())?;
            ensure(cert.passed(), || format!("(i) {o} fails on box 4: {:?}", cert.witness))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pts = MultiIndex::box_points(2, 4);
    for _ in 0..5 {
        let (p, q) = (
            pts[rng.gen_range(0..pts.len())].clone(),
            pts[rng.gen_range(0..pts.len())].clone(),
        );
        if p == q {
            continue;
        }
        let broken = |a: &MultiIndex, b: &MultiIndex| {
            let c = MonomialOrder::DegLexSum.cmp(a, b);
            if (*a == p && *b == q) || (*a == q && *b == p) {
                c.reverse()
            } else {
                c
            }
        };
        let cert = validate_order_fn(broken, 2, 4);
        ensure(!cert.passed(), || {
            format!("(i) comparator swapping {p} and {q} validated")
        })?;
    }

    let certified_graphs = [
        (mdrg::generators::cell24(), MonomialOrder::DegLexSum),
        (mdrg::generators::cell24(), MonomialOrder::DegLexY2),
        (
            mdrg::generators::cartesian_product(&[cycle(5).unwrap(), complete(3).unwrap()]).unwrap(),
            MonomialOrder::Lex,
        ),
        (hamming_graph(3, 2).unwrap(), MonomialOrder::Lex),
        (cycle(7).unwrap(), MonomialOrder::Lex),
    ];
    for (g, order) in &certified_graphs {
        let r = mdrg_check(g, order).map_err(|e| e.to_string())?;
        ensure(r.certificate.passed(), || format!("(ii) {order}: graph not certified"))?;
        for lemma in ["triangle", "sum-realized", "decomposition", "walk-permutation"] {
            let check = r.certificate.checks.iter().find(|c| c.name == lemma);
            ensure(check.is_some_and(|c| c.passed), || {
                format!("(ii) lemma {lemma} missing or failed")
            })?;
        }
        let t = r.tensor.unwrap();
        for ((a, b, c), _) in t.entries() {
            let l = |k: usize| t.labels()[k].as_index().unwrap().clone();
            let add = |x: MultiIndex, y: MultiIndex| {
                MultiIndex::new(x.entries().iter().zip(y.entries()).map(|(u, v)| u + v).collect())
            };
            let tri = order.le(&l(a), &add(l(b), l(c)))
                && order.le(&l(b), &add(l(a), l(c)))
                && order.le(&l(c), &add(l(a), l(b)));
            ensure(tri, || format!("(ii) triangle fails at ({}, {}, {})", l(a), l(b), l(c)))?;
        }
        if g.m() == 2 {
            for _ in 0..20 {
                let (x, y) = (rng.gen_range(0..g.len()), rng.gen_range(0..g.len()));
                let w12 = count_walks_by_type(g, x, y, &[1, 2, 2]).map_err(|e| e.to_string())?;
                let w21 = count_walks_by_type(g, x, y, &[2, 2, 1]).map_err(|e| e.to_string())?;
                ensure(w12 == w21, || format!("(ii) walk counts differ between {x} and {y}"))?;
            }
        }
    }

    for k in 0..50 {
        let m = 1 + k % 3;
        let g = random_graph(&mut rng, 10, m);
        for order in MonomialOrder::builtins(m) {
            let table = m_distance_table(&g, &order).map_err(|e| e.to_string())?;
            for x in 0..g.len() {
                let oracle = path_minimum(&g, &order, x);
                for (y, want) in oracle.iter().enumerate() {
                    ensure(Some(table.distance(x, y)) == want.as_ref(), || {
                        format!("(iii) graph {k}, {order}, ({x},{y})")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().unwrap();
    let criteria: Vec<Criterion> = vec![
        (
            "1 24-cell end-to-end",
            Some(LIMIT_CELL24),
            Box::new(|| criterion_1(dir.path())),
        ),
        (
            "2 Cartesian product C14 x C9",
            Some(LIMIT_PRODUCT),
            Box::new(criterion_2),
        ),
        (
            "3 symmetrization S^2, S^3 of the Pauli scheme",
            Some(LIMIT_SYMMETRIZE),
            Box::new(criterion_3),
        ),
        ("4 generalized 24-cell", None, Box::new(|| criterion_4(dir.path()))),
        ("5 univariate regression", None, Box::new(criterion_5)),
        ("6 property suites", None, Box::new(criterion_6)),
    ];
    println!("acceptance (tolerance {TOLERANCE}: exact rational arithmetic)");
    let mut all = true;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(l)) if elapsed > l => {
                Err(format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), l.as_secs()))
            }
            (o, _) => o,
        };
        let limit_text = limit.map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({:.2} s{limit_text})", elapsed.as_secs_f64()),
            Err(e) => {
                all = false;
                println!(
                    "FAIL criterion {name} ({:.2} s{limit_text}): {e}",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
