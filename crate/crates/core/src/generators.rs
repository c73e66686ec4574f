//! Graph and scheme families used as fixtures and by the command line.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::multiindex::MultiIndex;
use crate::rational::{self, Rational};
use crate::scheme::{verify_scheme_axioms, ClassLabel, IntersectionTensor, SchemeClasses};

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn at_least(what: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::Parameter(format!("{what} must be at least {min}, got {value}")));
    }
    Ok(())
}

/// The cycle `C_n` with one color.
pub fn cycle(n: usize) -> Result<ColoredGraph> {
    at_least("cycle length", n, 3)?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
    ColoredGraph::from_indices(1, numbered(n), &edges)
}

/// The path `P_n` on `n` vertices with one color.
pub fn path(n: usize) -> Result<ColoredGraph> {
    at_least("path length", n, 2)?;
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
    ColoredGraph::from_indices(1, numbered(n), &edges)
}

/// The complete graph `K_n` with one color.
pub fn complete(n: usize) -> Result<ColoredGraph> {
    at_least("complete graph order", n, 2)?;
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, 1))).collect();
    ColoredGraph::from_indices(1, numbered(n), &edges)
}

fn word_name(word: &[usize], names: &[String]) -> String {
    let sep = if names.iter().all(|n| n.chars().count() == 1) {
        ""
    } else {
        "."
    };
    word.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(sep)
}

/// All words of length `k` over `0..q`, first letter most significant.
fn words(k: usize, q: usize) -> Vec<Vec<usize>> {
    MultiIndex::grid(&vec![q as u32 - 1; k])
        .into_iter()
        .map(|w| w.entries().iter().map(|&x| x as usize).collect())
        .collect()
}

/// `H(k, q)`: words of length `k` over `q` letters, adjacent when they differ
/// in exactly one position.
pub fn hamming_graph(k: usize, q: usize) -> Result<ColoredGraph> {
    at_least("word length", k, 1)?;
    at_least("alphabet size", q, 2)?;
    let letters = numbered(q);
    let ws = words(k, q);
    let names = ws.iter().map(|w| word_name(w, &letters)).collect();
    let mut edges = Vec::new();
    for (i, u) in ws.iter().enumerate() {
        for (j, v) in ws.iter().enumerate().skip(i + 1) {
            if u.iter().zip(v).filter(|(a, b)| a != b).count() == 1 {
                edges.push((i, j, 1));
            }
        }
    }
    ColoredGraph::from_indices(1, names, &edges)
}

/// Cartesian product; factor `j` keeps its colors shifted past the colors of
/// factors `0..j`. Vertices are named `(x1;x2;...)`.
pub fn cartesian_product(graphs: &[ColoredGraph]) -> Result<ColoredGraph> {
    if graphs.is_empty() {
        return Err(Error::Parameter("cartesian product needs at least one factor".into()));
    }
    if let Some(g) = graphs.iter().find(|g| !g.is_connected()) {
        return Err(Error::InvalidGraph(format!(
            "cartesian factor with {} vertices is disconnected",
            g.len()
        )));
    }
    let sizes: Vec<u32> = graphs.iter().map(|g| g.len() as u32 - 1).collect();
    let tuples = MultiIndex::grid(&sizes);
    let index: BTreeMap<&MultiIndex, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .entries()
                .iter()
                .zip(graphs)
                .map(|(&x, g)| g.name(x as usize))
                .collect();
            format!("({})", parts.join(";"))
        })
        .collect();
    let mut offset = 0;
    let mut edges = Vec::new();
    for (f, g) in graphs.iter().enumerate() {
        for (i, t) in tuples.iter().enumerate() {
            let x = t.get(f) as usize;
            for &(y, c) in g.neighbors(x) {
                if y > x {
                    let mut other = t.entries().to_vec();
                    other[f] = y as u32;
                    edges.push((i, index[&MultiIndex::new(other)], offset + c));
                }
            }
        }
        offset += g.m();
    }
    ColoredGraph::from_indices(offset, names, &edges)
}

/// The length-`k` symmetrization of a scheme. With the non-identity classes
/// of `base` taken in order as `e_1..e_m`, a pair of words lies in class
/// `n ∈ ℕ^m` when exactly `n_i` positions carry a pair from base class `i`.
/// This is the sum over distinct arrangements of the tensor factors.
pub fn symmetrize(base: &SchemeClasses, k: usize) -> Result<SchemeClasses> {
    at_least("symmetrization length", k, 1)?;
    let cert = verify_scheme_axioms(base);
    if !cert.passed() {
        return Err(Error::NotAScheme(Box::new(cert)));
    }
    let q = base.len();
    let class = base.partition().expect("axioms imply a partition");
    let identity = (0..base.num_classes())
        .find(|&c| (0..q).all(|x| class[x * q + x] == c as u32))
        .expect("axioms imply an identity class");
    // Base class -> generator position, identity excluded.
    let coord: Vec<Option<usize>> = (0..base.num_classes())
        .scan(0, |next, c| {
            Some((c != identity).then(|| {
                *next += 1;
                *next - 1
            }))
        })
        .collect();
    let m = base.num_classes() - 1;
    let mut labels: Vec<MultiIndex> = MultiIndex::box_points(m, k as u32)
        .into_iter()
        .filter(|n| n.degree() <= k as u64)
        .collect();
    labels.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    let label_index: BTreeMap<&MultiIndex, u32> = labels.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();

    let ws = words(k, q);
    let n = ws.len();
    let mut pairs = Vec::with_capacity(n * n);
    for u in &ws {
        for v in &ws {
            let mut counts = vec![0u32; m];
            for (&a, &b) in u.iter().zip(v) {
                if let Some(i) = coord[class[a * q + b] as usize] {
                    counts[i] += 1;
                }
            }
            pairs.push(label_index[&MultiIndex::new(counts)]);
        }
    }
    let names = ws.iter().map(|w| word_name(w, base.vertices())).collect();
    Ok(SchemeClasses::from_partition(
        names,
        labels.into_iter().map(ClassLabel::Index).collect(),
        &pairs,
    ))
}

/// The 24 vertices of the 24-cell: permutations of `(±1, ±1, 0, 0)`.
pub fn cell24_vertices() -> Vec<[i32; 4]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in i + 1..4 {
            for si in [1, -1] {
                for sj in [1, -1] {
                    let mut v = [0; 4];
                    v[i] = si;
                    v[j] = sj;
                    out.push(v);
                }
            }
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn cell24_name(v: &[i32; 4]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn squared_distance(a: &[i32; 4], b: &[i32; 4]) -> i32 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// The 24-cell graph: color 1 joins vertices at squared distance 4, color 2
/// at squared distance 6.
pub fn cell24() -> ColoredGraph {
    let vs = cell24_vertices();
    let mut edges = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            match squared_distance(&vs[i], &vs[j]) {
                4 => edges.push((i, j, 1)),
                6 => edges.push((i, j, 2)),
                _ => {}
            }
        }
    }
    ColoredGraph::from_indices(2, vs.iter().map(cell24_name).collect(), &edges)
        .expect("24-cell is a valid colored graph")
}

/// The 24-cell scheme by squared distance, tags `d0, d2, d4, d6, d8`.
pub fn cell24_scheme() -> SchemeClasses {
    let vs = cell24_vertices();
    let classes = [0, 2, 4, 6, 8];
    let class: Vec<u32> = vs
        .iter()
        .flat_map(|a| vs.iter().map(move |b| (squared_distance(a, b) / 2) as u32))
        .collect();
    SchemeClasses::from_partition(
        vs.iter().map(cell24_name).collect(),
        classes.iter().map(|d| ClassLabel::Tag(format!("d{d}"))).collect(),
        &class,
    )
}

/// Intersection matrices `L_0..L_4` of the generalized 24-cell family, with
/// `(L_i)_{kj} = p[i,j]^k`.
pub fn gen24cell_matrices(ell: &Rational, s: &Rational) -> [[[Rational; 5]; 5]; 5] {
    let r = |n: i64| rational::int(n);
    let z = r(0);
    let o = r(1);
    let c = (r(4) * s - r(1)) * (r(4) * s + r(1));
    let k1 = r(16) * ell * s * s;
    let h = r(8) * ell * s * s;
    let plus = r(2) * (ell - r(1)) * s * (r(4) * s + r(1));
    let minus = r(2) * (ell - r(1)) * s * (r(4) * s - r(1));
    let mid = r(32) * s * s - r(4);
    let two_c = r(2) * &c;
    let l0 = std::array::from_fn(|k| std::array::from_fn(|j| if k == j { o.clone() } else { z.clone() }));
    let l1 = [
        [z.clone(), k1.clone(), z.clone(), z.clone(), z.clone()],
        [o.clone(), plus.clone(), c.clone(), minus.clone(), z.clone()],
        [z.clone(), h.clone(), z.clone(), h.clone(), z.clone()],
        [z.clone(), minus.clone(), c.clone(), plus.clone(), o.clone()],
        [z.clone(), z.clone(), z.clone(), k1.clone(), z.clone()],
    ];
    let l2 = [
        [z.clone(), z.clone(), two_c.clone(), z.clone(), z.clone()],
        [z.clone(), c.clone(), z.clone(), c.clone(), z.clone()],
        [o.clone(), z.clone(), mid, z.clone(), o.clone()],
        [z.clone(), c.clone(), z.clone(), c.clone(), z.clone()],
        [z.clone(), z.clone(), two_c, z.clone(), z.clone()],
    ];
    let l3 = [
        [z.clone(), z.clone(), z.clone(), k1.clone(), z.clone()],
        [z.clone(), minus.clone(), c.clone(), plus.clone(), o.clone()],
        [z.clone(), h.clone(), z.clone(), h, z.clone()],
        [o.clone(), plus, c.clone(), minus, z.clone()],
        [z.clone(), k1, z.clone(), z.clone(), z.clone()],
    ];
    let l4 = std::array::from_fn(|k| std::array::from_fn(|j| if k + j == 4 { o.clone() } else { z.clone() }));
    [l0, l1, l2, l3, l4]
}

/// The generalized 24-cell tensor with class tags `A0..A4`. Entries may be
/// non-integral; negative entries are rejected.
pub fn gen24cell(ell: &Rational, s: &Rational) -> Result<IntersectionTensor> {
    let ls = gen24cell_matrices(ell, s);
    let tags: Vec<ClassLabel> = (0..5).map(|i| ClassLabel::Tag(format!("A{i}"))).collect();
    let mut entries = Vec::new();
    for (i, l) in ls.iter().enumerate() {
        for (k, row) in l.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Err(Error::NegativeEntry {
                        a: tags[i].to_string(),
                        b: tags[j].to_string(),
                        c: tags[k].to_string(),
                        value: rational::format(v),
                    });
                }
                entries.push((tags[i].clone(), tags[j].clone(), tags[k].clone(), v.clone()));
            }
        }
    }
    let t = IntersectionTensor::new(tags, entries)?;
    let cert = t.validate();
    if !cert.passed() {
        return Err(Error::Parameter(format!(
            "generalized 24-cell at ell = {}, s = {} is degenerate: {}",
            rational::format(ell),
            rational::format(s),
            serde_json::to_string(&cert.witness)?
        )));
    }
    Ok(t)
}

/// `{I⊗I, I⊗σ_x + σ_x⊗I, σ_x⊗σ_x}` on the 4 vertices `0..3` (binary words).
pub fn pauli_scheme4() -> SchemeClasses {
    let class: Vec<u32> = (0..4u32)
        .flat_map(|x| (0..4u32).map(move |y| (x ^ y).count_ones()))
        .collect();
    SchemeClasses::from_partition(
        numbered(4),
        ["II", "IX+XI", "XX"]
            .iter()
            .map(|&t| ClassLabel::Tag(t.into()))
            .collect(),
        &class,
    )
}

/// `{I, J - I}` on `q` vertices, tags `I` and `J-I`.
pub fn one_class_scheme(q: usize) -> Result<SchemeClasses> {
    at_least("vertex count", q, 2)?;
    let class: Vec<u32> = (0..q).flat_map(|x| (0..q).map(move |y| (x != y) as u32)).collect();
    Ok(SchemeClasses::from_partition(
        numbered(q),
        vec![ClassLabel::Tag("I".into()), ClassLabel::Tag("J-I".into())],
        &class,
    ))
}
