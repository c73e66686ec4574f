//! Edge-colored graphs and their m-distances.
//!
//! The m-length of a walk counts its edges per color; the m-distance between
//! two vertices is the minimum m-length over all walks, taken under a
//! monomial order. Because every edge contributes some `e_c > o` and the
//! order is translation invariant, a label-setting search finalizes each
//! vertex once and optimal walks are simple paths.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::order::{MonomialOrder, PartialOrder};

/// An undirected simple graph whose edge set is partitioned into `m`
/// nonempty color classes `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    m: usize,
    names: Vec<String>,
    /// `adj[x]` lists `(y, color)` with 1-based colors.
    adj: Vec<Vec<(usize, usize)>>,
}

impl ColoredGraph {
    /// Builds a graph from vertex names and `(u, v, color)` edges.
    pub fn new(m: usize, vertices: Vec<String>, edges: &[(String, String, usize)]) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::InvalidGraph("duplicate vertex name".into()));
        }
        let lookup = |v: &str| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{v}` in edge list")))
        };
        let mut indexed = Vec::with_capacity(edges.len());
        for (u, v, c) in edges {
            indexed.push((lookup(u)?, lookup(v)?, *c));
        }
        Self::from_indices(m, vertices, &indexed)
    }

    pub fn from_indices(m: usize, names: Vec<String>, edges: &[(usize, usize, usize)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGraph("m must be at least 1".into()));
        }
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut used = vec![false; m];
        for &(u, v, c) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "vertex index out of range in edge ({u},{v})"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at `{}`", names[u])));
            }
            if c == 0 || c > m {
                return Err(Error::InvalidGraph(format!("color {c} outside 1..={m}")));
            }
            let key = (u.min(v), u.max(v));
            if let Some(prev) = seen.insert(key, c) {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge `{}`-`{}` (colors {prev} and {c})",
                    names[u], names[v]
                )));
            }
            used[c - 1] = true;
            adj[u].push((v, c));
            adj[v].push((u, c));
        }
        if let Some(c) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidGraph(format!("color class {} is empty", c + 1)));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(ColoredGraph { m, names, adj })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn neighbors(&self, x: usize) -> &[(usize, usize)] {
        &self.adj[x]
    }

    pub fn color(&self, x: usize, y: usize) -> Option<usize> {
        self.adj[x]
            .binary_search_by(|&(z, _)| z.cmp(&y))
            .ok()
            .map(|k| self.adj[x][k].1)
    }

    /// Edges `(u, v, color)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&(v, _)| u < v).map(move |&(v, c)| (u, v, c)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree_in_color(&self, x: usize, color: usize) -> usize {
        self.adj[x].iter().filter(|&&(_, c)| c == color).count()
    }

    pub fn is_connected(&self) -> bool {
        self.unreachable_from(0).is_none()
    }

    fn unreachable_from(&self, s: usize) -> Option<usize> {
        if self.names.is_empty() {
            return None;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }
}

struct Entry<'a> {
    label: MultiIndex,
    vertex: usize,
    order: &'a MonomialOrder,
}

impl PartialEq for Entry<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry<'_> {}

impl PartialOrd for Entry<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&self.label, &other.label)
            .then(self.vertex.cmp(&other.vertex))
    }
}

/// m-distances from `source` to every vertex.
pub fn m_distance_from(g: &ColoredGraph, order: &MonomialOrder, source: usize) -> Result<Vec<MultiIndex>> {
    order.check_dim(g.m)?;
    let n = g.len();
    let mut best: Vec<Option<MultiIndex>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    best[source] = Some(MultiIndex::zero(g.m));
    heap.push(Reverse(Entry {
        label: MultiIndex::zero(g.m),
        vertex: source,
        order,
    }));
    while let Some(Reverse(Entry { label, vertex: x, .. })) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        for &(y, c) in &g.adj[x] {
            if done[y] {
                continue;
            }
            let cand = label.bump(c - 1);
            let better = best[y].as_ref().is_none_or(|cur| order.lt(&cand, cur));
            if better {
                best[y] = Some(cand.clone());
                heap.push(Reverse(Entry {
                    label: cand,
                    vertex: y,
                    order,
                }));
            }
        }
    }
    best.into_iter()
        .enumerate()
        .map(|(y, d)| {
            d.ok_or_else(|| Error::Disconnected {
                from: g.names[source].clone(),
                unreachable: g.names[y].clone(),
            })
        })
        .collect()
}

/// All pairwise m-distances with the distinct values `D` sorted by the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    pub m: usize,
    pub order: MonomialOrder,
    pub names: Vec<String>,
    /// Distinct m-distances, increasing under `order`.
    pub labels: Vec<MultiIndex>,
    /// Row-major `n × n` indices into `labels`.
    class: Vec<u32>,
}

impl DistanceTable {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn class_of(&self, x: usize, y: usize) -> usize {
        self.class[x * self.len() + y] as usize
    }

    pub fn distance(&self, x: usize, y: usize) -> &MultiIndex {
        &self.labels[self.class_of(x, y)]
    }

    pub fn label_index(&self, l: &MultiIndex) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn domain(&self) -> BTreeSet<MultiIndex> {
        self.labels.iter().cloned().collect()
    }

    pub(crate) fn class_matrix(&self) -> &[u32] {
        &self.class
    }

    /// Per-label count of vertices at that distance from `x`.
    pub fn row_counts(&self, x: usize) -> BTreeMap<MultiIndex, usize> {
        let mut out = BTreeMap::new();
        for y in 0..self.len() {
            *out.entry(self.distance(x, y).clone()).or_insert(0) += 1;
        }
        out
    }

    /// `"x|y" -> [d_1, ..., d_m]` for every ordered pair.
    pub fn to_map(&self) -> BTreeMap<String, Vec<u32>> {
        let n = self.len();
        let mut out = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                out.insert(
                    format!("{}|{}", self.names[x], self.names[y]),
                    self.distance(x, y).entries().to_vec(),
                );
            }
        }
        out
    }
}

/// Runs [`m_distance_from`] from every vertex and collects `D`.
pub fn m_distance_table(g: &ColoredGraph, order: &MonomialOrder) -> Result<DistanceTable> {
    order.check_dim(g.m)?;
    let n = g.len();
    let rows: Vec<Vec<MultiIndex>> = (0..n)
        .into_par_iter()
        .map(|s| m_distance_from(g, order, s))
        .collect::<Result<_>>()?;
    for x in 0..n {
        for y in 0..x {
            if rows[x][y] != rows[y][x] {
                return Err(Error::Consistency(format!(
                    "asymmetric m-distance between `{}` and `{}`: {} vs {}",
                    g.names[x], g.names[y], rows[x][y], rows[y][x]
                )));
            }
        }
    }
    let mut labels: Vec<MultiIndex> = rows
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    order.sort(&mut labels);
    let pos: HashMap<&MultiIndex, u32> = labels.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();
    let class = rows.iter().flatten().map(|d| pos[d]).collect();
    Ok(DistanceTable {
        m: g.m,
        order: order.clone(),
        names: g.names.clone(),
        labels,
        class,
    })
}

/// Number of walks `x → y` whose k-th edge has color `colors[k]`.
pub fn count_walks_by_type(g: &ColoredGraph, x: usize, y: usize, colors: &[usize]) -> Result<BigUint> {
    if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > g.m) {
        return Err(Error::InvalidGraph(format!("color {c} outside 1..={}", g.m)));
    }
    let n = g.len();
    let mut v = vec![BigUint::zero(); n];
    v[x] = BigUint::from(1u8);
    for &c in colors {
        let mut next = vec![BigUint::zero(); n];
        for (u, val) in v.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            for &(w, col) in &g.adj[u] {
                if col == c {
                    next[w] += val;
                }
            }
        }
        v = next;
    }
    Ok(std::mem::take(&mut v[y]))
}

/// Checks `d(x,z) ≼ d(x,y) + e_i` for all `x` and every edge `y ~ z` of
/// color `i`. By induction along walks this is equivalent to
/// `d(x,y) ≼ ℓ` for every walk of m-length `ℓ` between `x` and `y`.
pub fn check_precompat_graph(g: &ColoredGraph, order: &MonomialOrder, p: &PartialOrder) -> Result<Certificate> {
    p.check_dim(g.m)?;
    let t = m_distance_table(g, order)?;
    let n = g.len();
    let outcome = (0..n)
        .into_par_iter()
        .find_map_first(|x| {
            for y in 0..n {
                let dxy = t.distance(x, y);
                for &(z, c) in &g.adj[y] {
                    let bound = dxy.bump(c - 1);
                    let dxz = t.distance(x, z);
                    if !p.leq(dxz, &bound) {
                        return Some(Witness::GraphCompat {
                            x: g.names[x].clone(),
                            y: g.names[y].clone(),
                            z: g.names[z].clone(),
                            color: c,
                            d_xy: dxy.clone(),
                            d_xz: dxz.clone(),
                        });
                    }
                }
            }
            None
        })
        .map_or(Ok(()), Err);
    let mut cert = Certificate::new("graph-compat");
    cert.record(format!("local-compat[{p}]"), outcome);
    Ok(cert)
}
