//! Association schemes, intersection tensors and m-distance-regularity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::graph::{m_distance_table, ColoredGraph, DistanceTable};
use crate::lemmas;
use crate::multiindex::MultiIndex;
use crate::order::MonomialOrder;
use crate::rational::{self, Rational};

/// Name of a scheme class: a multi-index once labeled, an opaque tag before.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Index(MultiIndex),
    Tag(String),
}

impl ClassLabel {
    pub fn as_index(&self) -> Option<&MultiIndex> {
        match self {
            ClassLabel::Index(a) => Some(a),
            ClassLabel::Tag(_) => None,
        }
    }
}

impl From<MultiIndex> for ClassLabel {
    fn from(a: MultiIndex) -> Self {
        ClassLabel::Index(a)
    }
}

impl From<&str> for ClassLabel {
    fn from(s: &str) -> Self {
        s.parse().expect("label parsing is infallible")
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Index(a) => write!(f, "{a}"),
            ClassLabel::Tag(t) => f.write_str(t),
        }
    }
}

/// Strings of digits and commas become indices; anything else is a tag.
impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        let numeric = !inner.is_empty()
            && inner
                .split(',')
                .all(|p| !p.trim().is_empty() && p.trim().bytes().all(|b| b.is_ascii_digit()));
        if numeric {
            Ok(ClassLabel::Index(inner.parse()?))
        } else {
            Ok(ClassLabel::Tag(t.to_string()))
        }
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Multi-indices of a label list, all of one dimension.
pub fn index_labels(labels: &[ClassLabel]) -> Result<Vec<MultiIndex>> {
    let out: Vec<MultiIndex> = labels
        .iter()
        .map(|l| {
            l.as_index()
                .cloned()
                .ok_or_else(|| Error::InvalidScheme(format!("class `{l}` has no multi-index label")))
        })
        .collect::<Result<_>>()?;
    if let Some(first) = out.first() {
        if let Some(bad) = out.iter().find(|a| a.dim() != first.dim()) {
            return Err(Error::Dimension {
                expected: first.dim(),
                found: bad.dim(),
            });
        }
    }
    Ok(out)
}

/// A family of 0/1 matrices over a common vertex set, one per label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeClasses {
    vertices: Vec<String>,
    labels: Vec<ClassLabel>,
    /// Row-major `n × n` supports.
    matrices: Vec<Vec<bool>>,
}

impl SchemeClasses {
    /// Checks shapes only; the axioms are checked by [`verify_scheme_axioms`].
    pub fn new(vertices: Vec<String>, labels: Vec<ClassLabel>, matrices: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        let n = vertices.len();
        if labels.len() != matrices.len() {
            return Err(Error::InvalidScheme(format!(
                "{} labels but {} matrices",
                labels.len(),
                matrices.len()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidScheme(format!("duplicate label `{}`", w[0])));
        }
        let mut flat = Vec::with_capacity(matrices.len());
        for (l, mat) in labels.iter().zip(matrices) {
            if mat.len() != n || mat.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidScheme(format!("matrix `{l}` is not {n}×{n}")));
            }
            let mut bits = Vec::with_capacity(n * n);
            for row in mat {
                for v in row {
                    match v {
                        0 => bits.push(false),
                        1 => bits.push(true),
                        _ => {
                            return Err(Error::InvalidScheme(format!(
                                "matrix `{l}` has entry {v} outside {{0,1}}"
                            )))
                        }
                    }
                }
            }
            flat.push(bits);
        }
        Ok(SchemeClasses {
            vertices,
            labels,
            matrices: flat,
        })
    }

    /// Builds the classes of a partition given as a row-major class-index matrix.
    pub fn from_partition(vertices: Vec<String>, labels: Vec<ClassLabel>, class: &[u32]) -> Self {
        let n = vertices.len();
        assert_eq!(class.len(), n * n);
        let mut matrices = vec![vec![false; n * n]; labels.len()];
        for (k, &c) in class.iter().enumerate() {
            matrices[c as usize][k] = true;
        }
        SchemeClasses {
            vertices,
            labels,
            matrices,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: &ClassLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, class: usize, x: usize, y: usize) -> bool {
        self.matrices[class][x * self.len() + y]
    }

    pub fn matrix(&self, class: usize) -> Vec<Vec<u8>> {
        let n = self.len();
        self.matrices[class]
            .chunks(n.max(1))
            .take(n)
            .map(|r| r.iter().map(|&b| b as u8).collect())
            .collect()
    }

    /// Number of `y` with `(x, y)` in each class.
    pub fn row_sizes(&self, x: usize) -> Vec<usize> {
        let n = self.len();
        self.matrices
            .iter()
            .map(|m| m[x * n..(x + 1) * n].iter().filter(|&&b| b).count())
            .collect()
    }

    /// The class index of every pair, when the supports partition all pairs.
    pub fn partition(&self) -> Option<Vec<u32>> {
        let n = self.len();
        let mut class = vec![u32::MAX; n * n];
        for (c, m) in self.matrices.iter().enumerate() {
            for (k, &b) in m.iter().enumerate() {
                if b {
                    if class[k] != u32::MAX {
                        return None;
                    }
                    class[k] = c as u32;
                }
            }
        }
        class.iter().all(|&c| c != u32::MAX).then_some(class)
    }

    pub fn with_labels(mut self, labels: Vec<ClassLabel>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::InvalidScheme("relabeling changes the number of classes".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Vertex `i` of the result is vertex `perm[i]` of `self`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let mut out = vec![false; n * n];
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = m[perm[i] * n + perm[j]];
                    }
                }
                out
            })
            .collect();
        SchemeClasses {
            vertices: perm.iter().map(|&i| self.vertices[i].clone()).collect(),
            labels: self.labels.clone(),
            matrices,
        }
    }
}

/// Counts `#{z : class(x,z) = a, class(z,y) = b}` for every pair, requiring
/// the counts to depend only on `class(x,y)`.
pub(crate) struct Closure {
    r: usize,
    /// `counts[(a * r + b) * r + c]`
    counts: Vec<u64>,
}

pub(crate) struct ClosureFailure {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub pair: (usize, usize),
    pub reference: (usize, usize),
    pub counts: [u64; 2],
}

fn pair_counts(class: &[u32], n: usize, r: usize, x: usize, y: usize, buf: &mut [u64], touched: &mut Vec<usize>) {
    for &k in touched.iter() {
        buf[k] = 0;
    }
    touched.clear();
    for z in 0..n {
        let k = class[x * n + z] as usize * r + class[z * n + y] as usize;
        if buf[k] == 0 {
            touched.push(k);
        }
        buf[k] += 1;
    }
}

pub(crate) fn closure(class: &[u32], n: usize, r: usize) -> std::result::Result<Closure, ClosureFailure> {
    let mut first: Vec<Option<(usize, usize)>> = vec![None; r];
    for (k, &c) in class.iter().enumerate() {
        first[c as usize].get_or_insert((k / n, k % n));
    }
    let mut reference = vec![vec![0u64; r * r]; r];
    let mut touched = Vec::new();
    for (c, f) in first.iter().enumerate() {
        if let Some((x, y)) = *f {
            let buf = &mut reference[c];
            pair_counts(class, n, r, x, y, buf, &mut touched);
            touched.clear();
        }
    }
    let failure = (0..n).into_par_iter().find_map_first(|x| {
        let mut buf = vec![0u64; r * r];
        let mut touched = Vec::new();
        for y in 0..n {
            let c = class[x * n + y] as usize;
            pair_counts(class, n, r, x, y, &mut buf, &mut touched);
            let refc = &reference[c];
            if touched.iter().any(|&k| buf[k] != refc[k]) {
                let k = (0..r * r).find(|&k| buf[k] != refc[k]).unwrap();
                return Some(ClosureFailure {
                    a: k / r,
                    b: k % r,
                    c,
                    pair: (x, y),
                    reference: first[c].unwrap(),
                    counts: [buf[k], refc[k]],
                });
            }
        }
        None
    });
    if let Some(f) = failure {
        return Err(f);
    }
    let mut counts = vec![0u64; r * r * r];
    for (c, refc) in reference.iter().enumerate() {
        for (k, &v) in refc.iter().enumerate() {
            counts[k * r + c] = v;
        }
    }
    Ok(Closure { r, counts })
}

impl Closure {
    fn into_entries(self) -> BTreeMap<(usize, usize, usize), Rational> {
        let r = self.r;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| ((k / (r * r), (k / r) % r, k % r), rational::int(v as i64)))
            .collect()
    }
}

/// Checks identity, partition of `J`, symmetry and closure under products.
pub fn verify_scheme_axioms(s: &SchemeClasses) -> Certificate {
    let n = s.len();
    let mut cert = Certificate::new("scheme-axioms");
    let lbl = |c: usize| s.labels[c].to_string();
    let v = |x: usize| s.vertices[x].clone();

    let identity = (0..s.num_classes()).find(|&c| (0..n * n).all(|k| s.matrices[c][k] == (k / n == k % n)));
    cert.record(
        "identity",
        match identity {
            Some(_) => Ok(()),
            None => Err(Witness::SchemeAxiom {
                axiom: "identity".into(),
                classes: vec![],
                vertices: vec![],
                counts: vec![],
            }),
        },
    );

    let empty = (0..s.num_classes()).find(|&c| !s.matrices[c].iter().any(|&b| b));
    cert.record(
        "nonempty",
        empty.map_or(Ok(()), |c| {
            Err(Witness::SchemeAxiom {
                axiom: "nonempty".into(),
                classes: vec![lbl(c)],
                vertices: vec![],
                counts: vec![0],
            })
        }),
    );

    let cover = (0..n * n).find_map(|k| {
        let hits: Vec<usize> = (0..s.num_classes()).filter(|&c| s.matrices[c][k]).collect();
        (hits.len() != 1).then(|| Witness::SchemeAxiom {
            axiom: "partition".into(),
            classes: hits.iter().map(|&c| lbl(c)).collect(),
            vertices: vec![v(k / n), v(k % n)],
            counts: vec![hits.len() as u64],
        })
    });
    cert.record("partition", cover.map_or(Ok(()), Err));

    let asym = (0..s.num_classes()).find_map(|c| {
        (0..n * n)
            .find(|&k| s.matrices[c][k] != s.matrices[c][(k % n) * n + k / n])
            .map(|k| Witness::SchemeAxiom {
                axiom: "symmetry".into(),
                classes: vec![lbl(c)],
                vertices: vec![v(k / n), v(k % n)],
                counts: vec![],
            })
    });
    cert.record("symmetry", asym.map_or(Ok(()), Err));

    match s.partition() {
        Some(class) => {
            let outcome = closure(&class, n, s.num_classes())
                .map(|_| ())
                .map_err(|f| Witness::SchemeAxiom {
                    axiom: "closure".into(),
                    classes: vec![lbl(f.a), lbl(f.b), lbl(f.c)],
                    vertices: vec![v(f.pair.0), v(f.pair.1), v(f.reference.0), v(f.reference.1)],
                    counts: f.counts.to_vec(),
                });
            cert.record("closure", outcome);
        }
        None => {
            cert.note("closure", false, "skipped: classes do not partition the pairs");
        }
    }
    cert
}

/// Structure constants `p[a,b]^c` of a commutative scheme, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTensor {
    labels: Vec<ClassLabel>,
    identity: usize,
    entries: BTreeMap<(usize, usize, usize), Rational>,
}

impl IntersectionTensor {
    /// Builds a tensor from labeled entries; zero values are dropped. The
    /// identity class is the unique `o` with `p[o,a]^c = δ(a,c)`.
    pub fn new(labels: Vec<ClassLabel>, entries: Vec<(ClassLabel, ClassLabel, ClassLabel, Rational)>) -> Result<Self> {
        let index: HashMap<&ClassLabel, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        if index.len() != labels.len() {
            return Err(Error::InvalidScheme("duplicate class label".into()));
        }
        let find = |l: &ClassLabel| index.get(l).copied().ok_or_else(|| Error::UnknownLabel(l.to_string()));
        let mut map = BTreeMap::new();
        for (a, b, c, v) in entries {
            let key = (find(&a)?, find(&b)?, find(&c)?);
            if map.insert(key, v).is_some() {
                return Err(Error::InvalidScheme(format!("duplicate entry p[{a},{b}]^{c}")));
            }
        }
        map.retain(|_, v: &mut Rational| !v.is_zero());
        Self::from_indexed(labels, map)
    }

    pub(crate) fn from_indexed(
        labels: Vec<ClassLabel>,
        entries: BTreeMap<(usize, usize, usize), Rational>,
    ) -> Result<Self> {
        let r = labels.len();
        let is_identity = |o: usize| {
            entries
                .range((o, 0, 0)..(o + 1, 0, 0))
                .all(|(&(_, a, c), v)| a == c && v.is_one())
                && (0..r).all(|a| entries.get(&(o, a, a)).is_some_and(|v| v.is_one()))
        };
        let identity = (0..r)
            .find(|&o| is_identity(o))
            .ok_or_else(|| Error::InvalidScheme("no class acts as the identity".into()))?;
        Ok(IntersectionTensor {
            labels,
            identity,
            entries,
        })
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, label: &ClassLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn require(&self, label: &ClassLabel) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `p[a,b]^c` by class index.
    pub fn p(&self, a: usize, b: usize, c: usize) -> Rational {
        self.entries.get(&(a, b, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn p_label(&self, a: &ClassLabel, b: &ClassLabel, c: &ClassLabel) -> Result<Rational> {
        Ok(self.p(self.require(a)?, self.require(b)?, self.require(c)?))
    }

    /// Nonzero `(c, p[a,b]^c)`.
    pub fn product(&self, a: usize, b: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries
            .range((a, b, 0)..(a, b + 1, 0))
            .map(|(&(_, _, c), v)| (c, v))
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Rational)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// `k_a = p[a,a]^o`.
    pub fn valency(&self, a: usize) -> Rational {
        self.p(a, a, self.identity)
    }

    pub fn valencies(&self) -> Vec<Rational> {
        (0..self.len()).map(|a| self.valency(a)).collect()
    }

    /// The same numbers under new labels, given position by position.
    pub fn with_labels(&self, labels: Vec<ClassLabel>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidScheme("relabeling changes the number of classes".into()));
        }
        Ok(IntersectionTensor {
            labels,
            identity: self.identity,
            entries: self.entries.clone(),
        })
    }

    /// Renames classes through `map`; every label must be mapped.
    pub fn relabel(&self, map: &BTreeMap<ClassLabel, ClassLabel>) -> Result<Self> {
        let labels = self
            .labels
            .iter()
            .map(|l| map.get(l).cloned().ok_or_else(|| Error::MissingLabel(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let tensor = self.with_labels(labels)?;
        let mut seen: Vec<_> = tensor.labels.iter().collect();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidScheme("relabeling is not injective".into()));
        }
        Ok(tensor)
    }

    /// Entries keyed by labels, independent of class order.
    pub fn by_label(&self) -> BTreeMap<(ClassLabel, ClassLabel, ClassLabel), Rational> {
        self.entries
            .iter()
            .map(|(&(a, b, c), v)| {
                (
                    (self.labels[a].clone(), self.labels[b].clone(), self.labels[c].clone()),
                    v.clone(),
                )
            })
            .collect()
    }

    /// Same label set and same numbers, in any class order.
    pub fn same_as(&self, other: &IntersectionTensor) -> bool {
        let mut a = self.labels.clone();
        let mut b = other.labels.clone();
        a.sort();
        b.sort();
        a == b && self.by_label() == other.by_label()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(rational::is_integer)
    }

    /// Checks the algebraic identities every commutative symmetric scheme
    /// satisfies. Integrality is reported without affecting the verdict.
    pub fn validate(&self) -> Certificate {
        let r = self.len();
        let o = self.identity;
        let mut cert = Certificate::new("tensor");
        let entry = |(a, b, c): (usize, usize, usize), v: &Rational, reason: &str| Witness::TensorEntry {
            a: self.labels[a].to_string(),
            b: self.labels[b].to_string(),
            c: self.labels[c].to_string(),
            value: rational::format(v),
            reason: reason.into(),
        };

        let neg = self.entries.iter().find(|(_, v)| v.is_negative());
        cert.record(
            "nonnegative",
            neg.map_or(Ok(()), |(&k, v)| Err(entry(k, v, "negative"))),
        );

        let delta = (0..r).flat_map(|a| (0..r).map(move |c| (a, c))).find_map(|(a, c)| {
            let want = if a == c { Rational::one() } else { Rational::zero() };
            [(o, a, c), (a, o, c)]
                .into_iter()
                .find(|&k| self.p(k.0, k.1, k.2) != want)
                .map(|k| entry(k, &self.p(k.0, k.1, k.2), "identity class must act as δ"))
        });
        cert.record("identity", delta.map_or(Ok(()), Err));

        let comm = self
            .entries
            .iter()
            .find(|(&(a, b, c), v)| self.p(b, a, c) != **v)
            .map(|(&k, v)| entry(k, v, "p[a,b]^c differs from p[b,a]^c"));
        cert.record("commutative", comm.map_or(Ok(()), Err));

        let vals = self.valencies();
        let bad_val = (0..r).find(|&a| !vals[a].is_positive());
        let sums = (0..r).flat_map(|a| (0..r).map(move |c| (a, c))).find_map(|(a, c)| {
            let sum: Rational = (0..r).map(|b| self.p(a, b, c)).sum();
            (sum != vals[a]).then(|| entry((a, a, c), &sum, "row sum over b differs from the valency k_a"))
        });
        let row_sums = match bad_val {
            Some(a) => Err(entry((a, a, o), &vals[a], "valency must be positive")),
            None => sums.map_or(Ok(()), Err),
        };
        cert.record("row-sums", row_sums);

        cert.record("associative", self.associativity());

        if self.is_integral() {
            cert.note("integrality", true, "integral");
        } else {
            cert.note("integrality", false, "formal: some entries are not integers");
        }
        cert
    }

    /// `(A_a A_b) A_c = A_a (A_b A_c)` in the class basis.
    fn associativity(&self) -> std::result::Result<(), Witness> {
        let r = self.len();
        let failure = (0..r).into_par_iter().find_map_first(|a| {
            for b in 0..r {
                for c in 0..r {
                    let mut lhs: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (e, v) in self.product(a, b) {
                        for (d, w) in self.product(e, c) {
                            *lhs.entry(d).or_insert_with(Rational::zero) += v * w;
                        }
                    }
                    let mut rhs: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (f, v) in self.product(b, c) {
                        for (d, w) in self.product(a, f) {
                            *rhs.entry(d).or_insert_with(Rational::zero) += v * w;
                        }
                    }
                    lhs.retain(|_, v| !v.is_zero());
                    rhs.retain(|_, v| !v.is_zero());
                    if lhs != rhs {
                        let d = lhs
                            .keys()
                            .chain(rhs.keys())
                            .copied()
                            .find(|d| lhs.get(d) != rhs.get(d))
                            .unwrap();
                        let l = lhs.get(&d).cloned().unwrap_or_else(Rational::zero);
                        let rr = rhs.get(&d).cloned().unwrap_or_else(Rational::zero);
                        return Some(Witness::TensorEntry {
                            a: self.labels[a].to_string(),
                            b: self.labels[b].to_string(),
                            c: self.labels[c].to_string(),
                            value: rational::format(&(l - rr)),
                            reason: format!("(A_a A_b) A_c - A_a (A_b A_c) at class {}", self.labels[d]),
                        });
                    }
                }
            }
            None
        });
        failure.map_or(Ok(()), Err)
    }
}

/// Reads `p[a,b]^c` off a scheme whose axioms hold.
pub fn intersection_tensor(s: &SchemeClasses) -> Result<IntersectionTensor> {
    let cert = verify_scheme_axioms(s);
    if !cert.passed() {
        return Err(Error::NotAScheme(Box::new(cert)));
    }
    let class = s.partition().expect("axioms imply a partition");
    let entries = closure(&class, s.len(), s.num_classes())
        .map_err(|_| Error::Consistency("closure changed between checks".into()))?
        .into_entries();
    IntersectionTensor::from_indexed(s.labels.clone(), entries)
}

/// One matrix per generator with entry `(b, a) = p[g,a]^b`.
pub fn regular_representation(t: &IntersectionTensor, generators: &[ClassLabel]) -> Result<Vec<Vec<Vec<Rational>>>> {
    let r = t.len();
    generators
        .iter()
        .map(|g| {
            let g = t.require(g)?;
            let mut m = vec![vec![Rational::zero(); r]; r];
            for a in 0..r {
                for (b, v) in t.product(g, a) {
                    m[b][a] = v.clone();
                }
            }
            Ok(m)
        })
        .collect()
}

/// The action of generator classes `A_{e_1}, ..., A_{e_m}` on the class basis.
#[derive(Clone, Debug)]
pub struct Generators {
    dim: usize,
    identity: usize,
    /// Per generator, `(a, b, p[g,a]^b)`.
    action: Vec<Vec<(usize, usize, Rational)>>,
}

impl Generators {
    /// Fails with [`Error::NonCommutative`] when two generators do not commute.
    pub fn new(t: &IntersectionTensor, generators: &[ClassLabel]) -> Result<Self> {
        let mats = regular_representation(t, generators)?;
        for i in 0..mats.len() {
            for j in 0..i {
                if mat_mul(&mats[i], &mats[j]) != mat_mul(&mats[j], &mats[i]) {
                    return Err(Error::NonCommutative);
                }
            }
        }
        let action = generators
            .iter()
            .map(|g| {
                let g = t.require(g).expect("checked above");
                (0..t.len())
                    .flat_map(|a| t.product(g, a).map(move |(b, v)| (a, b, v.clone())))
                    .collect()
            })
            .collect();
        Ok(Generators {
            dim: t.len(),
            identity: t.identity(),
            action,
        })
    }

    pub fn m(&self) -> usize {
        self.action.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `A_{e_i} · v`.
    pub fn apply(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (a, b, p) in &self.action[i] {
            if !v[*a].is_zero() {
                out[*b] += p * &v[*a];
            }
        }
        out
    }

    pub fn unit(&self, c: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[c] = Rational::one();
        v
    }

    /// Coordinates of `∏ A_{e_i}^{a_i}`.
    pub fn monomial(&self, a: &MultiIndex) -> Result<Vec<Rational>> {
        if a.dim() != self.m() {
            return Err(Error::Dimension {
                expected: self.m(),
                found: a.dim(),
            });
        }
        let mut v = self.unit(self.identity);
        for i in 0..self.m() {
            for _ in 0..a.get(i) {
                v = self.apply(i, &v);
            }
        }
        Ok(v)
    }
}

fn mat_mul(x: &[Vec<Rational>], y: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = x.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[k][j].is_zero() {
                    out[i][j] += &x[i][k] * &y[k][j];
                }
            }
        }
    }
    out
}

/// Coordinates of `∏ A_{e_i}^{a_i}` in the class basis.
pub fn monomial_coeffs(t: &IntersectionTensor, generators: &[ClassLabel], a: &MultiIndex) -> Result<Vec<Rational>> {
    Generators::new(t, generators)?.monomial(a)
}

/// The m-distance matrices of a distance table.
pub fn distance_matrices(t: &DistanceTable) -> SchemeClasses {
    SchemeClasses::from_partition(
        t.names.clone(),
        t.labels.iter().cloned().map(ClassLabel::Index).collect(),
        t.class_matrix(),
    )
}

/// Outcome of [`mdrg_check`]; scheme and tensor are present on a pass.
#[derive(Clone, Debug)]
pub struct MdrgReport {
    pub certificate: Certificate,
    pub table: DistanceTable,
    pub scheme: Option<SchemeClasses>,
    pub tensor: Option<IntersectionTensor>,
}

/// Decides m-distance-regularity of `g` under `order`.
pub fn mdrg_check(g: &ColoredGraph, order: &MonomialOrder) -> Result<MdrgReport> {
    let table = m_distance_table(g, order)?;
    let m = g.m();
    let n = g.len();
    let r = table.labels.len();
    let mut cert = Certificate::new("m-distance-regular");

    let missing = (0..m)
        .map(|i| MultiIndex::unit(m, i))
        .find(|e| table.label_index(e).is_none());
    cert.record(
        "generators-in-D",
        missing.map_or(Ok(()), |generator| Err(Witness::MissingGenerator { generator })),
    );

    let closure = closure(table.class_matrix(), n, r);
    let closure = match closure {
        Ok(c) => {
            cert.record("regularity", Ok(()));
            Some(c)
        }
        Err(f) => {
            let name = |x: usize| g.name(x).to_string();
            cert.record(
                "regularity",
                Err(Witness::Regularity {
                    a: table.labels[f.a].clone(),
                    b: table.labels[f.b].clone(),
                    c: table.labels[f.c].clone(),
                    pair: [name(f.pair.0), name(f.pair.1)],
                    other_pair: [name(f.reference.0), name(f.reference.1)],
                    counts: f.counts,
                }),
            );
            None
        }
    };

    let (scheme, tensor) = match closure {
        Some(c) if cert.passed() => {
            let scheme = distance_matrices(&table);
            let tensor = IntersectionTensor::from_indexed(scheme.labels().to_vec(), c.into_entries())?;
            let implied = lemmas::mdrg_lemmas(g, &table, &tensor);
            if !implied.passed() {
                return Err(Error::Consistency(format!(
                    "a property implied by m-distance-regularity failed: {}",
                    serde_json::to_string(&implied)?
                )));
            }
            cert.checks.extend(implied.checks);
            (Some(scheme), Some(tensor))
        }
        _ => (None, None),
    };
    Ok(MdrgReport {
        certificate: cert,
        table,
        scheme,
        tensor,
    })
}
