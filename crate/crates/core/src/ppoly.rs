//! Certificates for the multivariate P-polynomial property, its refinement
//! by a partial order and the bivariate type-(α,β) variant, together with
//! polynomial extraction and generator discovery.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::linalg::{in_span, solve_columns, SolveError};
use crate::multiindex::MultiIndex;
use crate::order::{check_domain, validate_pair_compat, AlphaBeta, DomainMode, MonomialOrder, PartialOrder};
use crate::poly::{Polynomial, PolynomialExpansion};
use crate::rational::{self, Rational};
use crate::region::{AbConstraints, AbRegion};
use crate::scheme::{mdrg_check, verify_scheme_axioms, ClassLabel, Generators, IntersectionTensor, SchemeClasses};

/// The comparison bounding expansions: a monomial order `≤` or a partial
/// order `≼`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dominance {
    Order(MonomialOrder),
    Partial(PartialOrder),
}

impl Dominance {
    pub fn leq(&self, a: &MultiIndex, b: &MultiIndex) -> bool {
        match self {
            Dominance::Order(o) => o.le(a, b),
            Dominance::Partial(p) => p.leq(a, b),
        }
    }

    pub fn check_dim(&self, m: usize) -> Result<()> {
        match self {
            Dominance::Order(o) => o.check_dim(m),
            Dominance::Partial(p) => p.check_dim(m),
        }
    }
}

impl fmt::Display for Dominance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dominance::Order(o) => write!(f, "{o}"),
            Dominance::Partial(p) => write!(f, "{p}"),
        }
    }
}

/// A bijection from class names to multi-indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    map: BTreeMap<ClassLabel, MultiIndex>,
}

impl Labeling {
    pub fn new(map: BTreeMap<ClassLabel, MultiIndex>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let m = map.values().next().map_or(0, MultiIndex::dim);
        for (k, v) in &map {
            if v.dim() != m {
                return Err(Error::Dimension {
                    expected: m,
                    found: v.dim(),
                });
            }
            if !seen.insert(v) {
                return Err(Error::Parse(format!(
                    "labeling sends two classes to {v} (second: `{k}`)"
                )));
            }
        }
        Ok(Labeling { map })
    }

    fn preset(pairs: &[(&str, [u32; 2])]) -> Self {
        let map = pairs
            .iter()
            .map(|&(t, a)| (ClassLabel::Tag(t.into()), MultiIndex::from(a)))
            .collect();
        Labeling::new(map).expect("preset labelings are bijective")
    }

    /// Generalized 24-cell tags onto `D_1 = {00, 10, 01, 20, 11}`.
    pub fn ad1() -> Self {
        Self::preset(&[
            ("A0", [0, 0]),
            ("A2", [1, 0]),
            ("A3", [0, 1]),
            ("A1", [1, 1]),
            ("A4", [2, 0]),
        ])
    }

    /// Generalized 24-cell tags onto `D_2 = {00, 10, 01, 20, 02}`.
    pub fn ad2() -> Self {
        Self::preset(&[
            ("A0", [0, 0]),
            ("A2", [1, 0]),
            ("A3", [0, 1]),
            ("A1", [0, 2]),
            ("A4", [2, 0]),
        ])
    }

    /// The labeling of a tensor whose classes already carry multi-indices.
    pub fn from_index_labels(t: &IntersectionTensor) -> Result<Self> {
        let map = t
            .labels()
            .iter()
            .map(|l| match l {
                ClassLabel::Index(a) => Ok((l.clone(), a.clone())),
                ClassLabel::Tag(_) => Err(Error::MissingLabel(l.to_string())),
            })
            .collect::<Result<_>>()?;
        Labeling::new(map)
    }

    pub fn map(&self) -> &BTreeMap<ClassLabel, MultiIndex> {
        &self.map
    }

    pub fn get(&self, l: &ClassLabel) -> Option<&MultiIndex> {
        self.map.get(l)
    }

    pub fn domain(&self) -> BTreeSet<MultiIndex> {
        self.map.values().cloned().collect()
    }

    /// The tensor with each class renamed to its multi-index.
    pub fn apply(&self, t: &IntersectionTensor) -> Result<IntersectionTensor> {
        let map = self
            .map
            .iter()
            .map(|(k, v)| (k.clone(), ClassLabel::Index(v.clone())))
            .collect();
        if let Some(extra) = self.map.keys().find(|k| t.index_of(k).is_none()) {
            return Err(Error::UnknownLabel(extra.to_string()));
        }
        let out = t.relabel(&map)?;
        Labeled::new(&out)?;
        Ok(out)
    }
}

/// `tag=i,j;tag=i,j;...`
impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for Labeling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ad1" => return Ok(Self::ad1()),
            "ad2" => return Ok(Self::ad2()),
            _ => {}
        }
        let mut map = BTreeMap::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("labeling entry `{part}` lacks `=`")))?;
            let key: ClassLabel = k.trim().parse()?;
            if map.insert(key, v.trim().parse()?).is_some() {
                return Err(Error::Parse(format!("class `{}` labeled twice", k.trim())));
            }
        }
        if map.is_empty() {
            return Err(Error::Parse("empty labeling".into()));
        }
        Labeling::new(map)
    }
}

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self.map.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Labeling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (k, v) in raw {
            let key: ClassLabel = k.parse().map_err(serde::de::Error::custom)?;
            map.insert(key, v.parse().map_err(serde::de::Error::custom)?);
        }
        Labeling::new(map).map_err(serde::de::Error::custom)
    }
}

/// A tensor whose classes are labeled by a domain `D ⊂ ℕ^m` containing
/// `o` (the identity class) and every `e_i`.
struct Labeled<'a> {
    t: &'a IntersectionTensor,
    m: usize,
    labels: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    gens: Vec<usize>,
}

impl<'a> Labeled<'a> {
    fn new(t: &'a IntersectionTensor) -> Result<Self> {
        let labels = crate::scheme::index_labels(t.labels())?;
        let m = labels.first().map_or(0, MultiIndex::dim);
        if m == 0 {
            return Err(Error::InvalidScheme("labels must lie in ℕ^m with m ≥ 1".into()));
        }
        let index: HashMap<MultiIndex, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let o = MultiIndex::zero(m);
        let oi = *index.get(&o).ok_or_else(|| Error::MissingLabel(o.to_string()))?;
        if oi != t.identity() {
            return Err(Error::InvalidScheme(format!(
                "label {o} must name the identity class, which is `{}`",
                t.labels()[t.identity()]
            )));
        }
        let gens = (0..m)
            .map(|i| {
                let e = MultiIndex::unit(m, i);
                index.get(&e).copied().ok_or_else(|| Error::MissingLabel(e.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok(Labeled {
            t,
            m,
            labels,
            index,
            gens,
        })
    }

    fn domain(&self) -> BTreeSet<MultiIndex> {
        self.labels.iter().cloned().collect()
    }

    /// Class indices sorted by `order` (derived order when none is given).
    fn sorted(&self, order: Option<&MonomialOrder>) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.labels.len()).collect();
        match order {
            Some(o) => v.sort_by(|&a, &b| o.cmp(&self.labels[a], &self.labels[b])),
            None => v.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b])),
        }
        v
    }

    fn generators(&self) -> Result<Generators> {
        let gens: Vec<ClassLabel> = self.gens.iter().map(|&g| self.t.labels()[g].clone()).collect();
        Generators::new(self.t, &gens)
    }

    fn intersection_witness(&self, i: usize, a: usize, b: usize, reason: &str) -> Witness {
        Witness::IntersectionNumber {
            generator: i + 1,
            a: self.labels[a].clone(),
            b: self.labels[b].clone(),
            value: rational::format(&self.t.p(self.gens[i], a, b)),
            reason: reason.into(),
        }
    }
}

fn domain_check(cert: &mut Certificate, domain: &BTreeSet<MultiIndex>, mode: &DomainMode) -> Result<()> {
    let sub = check_domain(domain, mode)?;
    let name = sub.checks[0].name.clone();
    cert.record(name, sub.witness.map_or(Ok(()), Err));
    Ok(())
}

/// The expansion-support and leading-term conditions on `p[e_i,a]^b`.
fn expansion_checks(lab: &Labeled, cmp: &Dominance, order: &MonomialOrder, cert: &mut Certificate) {
    let sorted = lab.sorted(Some(order));
    let mut support = Ok(());
    let mut leading = Ok(());
    for i in 0..lab.m {
        for &a in &sorted {
            let top = lab.labels[a].bump(i);
            if support.is_ok() {
                let mut bs: Vec<usize> = lab.t.product(lab.gens[i], a).map(|(b, _)| b).collect();
                bs.sort_by(|&x, &y| order.cmp(&lab.labels[x], &lab.labels[y]));
                if let Some(&b) = bs.iter().find(|&&b| !cmp.leq(&lab.labels[b], &top)) {
                    support = Err(lab.intersection_witness(i, a, b, &format!("b is not {cmp}-below a + e_i")));
                }
            }
            if leading.is_ok() {
                if let Some(&c) = lab.index.get(&top) {
                    if lab.t.p(lab.gens[i], a, c).is_zero() {
                        leading = Err(lab.intersection_witness(i, a, c, "a + e_i lies in D but p[e_i,a]^(a+e_i) = 0"));
                    }
                }
            }
        }
    }
    cert.record(format!("expansion-support[{cmp}]"), support);
    cert.record("leading-term", leading);
}

/// Decides the m-variate P-polynomial property of an index-labeled tensor
/// under a monomial order from its intersection numbers.
pub fn certify_ppoly(t: &IntersectionTensor, order: &MonomialOrder) -> Result<Certificate> {
    let lab = Labeled::new(t)?;
    order.check_dim(lab.m)?;
    let mut cert = Certificate::new(format!("p-polynomial[{order}]"));
    domain_check(&mut cert, &lab.domain(), &DomainMode::BoxClosure)?;
    expansion_checks(&lab, &Dominance::Order(order.clone()), order, &mut cert);
    Ok(cert)
}

fn pair_compat_bound(lab: &Labeled) -> u32 {
    lab.labels
        .iter()
        .flat_map(|a| a.entries().iter().copied())
        .max()
        .unwrap_or(0)
        + 1
}

/// The refinement of [`certify_ppoly`] in which `p[e_i,a]^b ≠ 0` requires
/// `b ≼ a + e_i`. The pair `(≼, ≤)` is validated on a box covering `D + e_i`.
pub fn certify_ppoly_refined(t: &IntersectionTensor, order: &MonomialOrder, p: &PartialOrder) -> Result<Certificate> {
    let lab = Labeled::new(t)?;
    order.check_dim(lab.m)?;
    p.check_dim(lab.m)?;
    let compat = validate_pair_compat(p, order, lab.m, pair_compat_bound(&lab))?;
    if !compat.passed() {
        return Err(Error::IncompatibleOrders(Box::new(compat)));
    }
    let mut cert = Certificate::new(format!("p-polynomial[{order}; {p}]"));
    domain_check(&mut cert, &lab.domain(), &DomainMode::BoxClosure)?;
    expansion_checks(&lab, &Dominance::Partial(p.clone()), order, &mut cert);
    Ok(cert)
}

/// For each `a ∈ D` with `a + e_i ∉ D`, tests whether `A_{e_i} A^a` lies in
/// the span of the monomials `A^b` with `b ∈ D` dominated by `a + e_i`.
pub fn boundary_check(t: &IntersectionTensor, cmp: &Dominance) -> Result<Certificate> {
    let lab = Labeled::new(t)?;
    cmp.check_dim(lab.m)?;
    let g = lab.generators()?;
    let monomials: Vec<Vec<Rational>> = lab.labels.iter().map(|a| g.monomial(a)).collect::<Result<_>>()?;
    let order = match cmp {
        Dominance::Order(o) => Some(o),
        Dominance::Partial(_) => None,
    };
    let mut outcome = Ok(());
    'outer: for i in 0..lab.m {
        for a in lab.sorted(order) {
            let top = lab.labels[a].bump(i);
            if lab.index.contains_key(&top) {
                continue;
            }
            let target = g.apply(i, &monomials[a]);
            let span: Vec<Vec<Rational>> = (0..lab.labels.len())
                .filter(|&b| cmp.leq(&lab.labels[b], &top))
                .map(|b| monomials[b].clone())
                .collect();
            if !in_span(&span, &target) {
                outcome = Err(Witness::Boundary {
                    generator: i + 1,
                    a: lab.labels[a].clone(),
                });
                break 'outer;
            }
        }
    }
    let mut cert = Certificate::new(format!("boundary[{cmp}]"));
    cert.record("boundary-span", outcome);
    Ok(cert)
}

/// Solves `Σ f_a A^a = A_n` over the monomials `a ∈ D` dominated by `n`.
/// Polynomials are returned for every `n` that succeeds.
pub fn extract_polynomials(t: &IntersectionTensor, cmp: &Dominance) -> Result<(PolynomialExpansion, Certificate)> {
    let lab = Labeled::new(t)?;
    cmp.check_dim(lab.m)?;
    let g = lab.generators()?;
    let monomials: Vec<Vec<Rational>> = lab.labels.iter().map(|a| g.monomial(a)).collect::<Result<_>>()?;
    let order = match cmp {
        Dominance::Order(o) => Some(o),
        Dominance::Partial(_) => None,
    };
    let mut out = PolynomialExpansion::default();
    let mut outcome = Ok(());
    for n in lab.sorted(order) {
        let allowed: Vec<usize> = lab
            .sorted(order)
            .into_iter()
            .filter(|&a| cmp.leq(&lab.labels[a], &lab.labels[n]))
            .collect();
        let cols: Vec<Vec<Rational>> = allowed.iter().map(|&a| monomials[a].clone()).collect();
        let fail = |reason: &str| Witness::Extraction {
            n: lab.labels[n].clone(),
            reason: reason.into(),
        };
        match solve_columns(&cols, &g.unit(n)) {
            Ok(f) => {
                let mut p = Polynomial::zero(lab.m);
                for (&a, c) in allowed.iter().zip(f) {
                    p.add_term(lab.labels[a].clone(), c);
                }
                if p.coef(&lab.labels[n]).is_zero() {
                    if outcome.is_ok() {
                        outcome = Err(fail("leading coefficient f_n vanishes"));
                    }
                } else {
                    out.polys.insert(lab.labels[n].clone(), p);
                }
            }
            Err(e) => {
                if outcome.is_ok() {
                    outcome = Err(fail(match e {
                        SolveError::Inconsistent => "A_n is not in the span of the dominated monomials",
                        SolveError::Underdetermined => "the dominated monomials are linearly dependent",
                    }));
                }
            }
        }
    }
    let mut cert = Certificate::new(format!("extraction[{cmp}]"));
    cert.record("polynomials", outcome);
    Ok((out, cert))
}

/// Checks `x_i v_a = Σ_b p[e_i,a]^b v_b` coefficientwise whenever
/// `a + e_i ∈ D`. With a partial order, also checks `b ≼ a + e_i` for each
/// `b` in the sum.
pub fn verify_recurrences(
    polys: &PolynomialExpansion,
    t: &IntersectionTensor,
    p: Option<&PartialOrder>,
) -> Result<Certificate> {
    let lab = Labeled::new(t)?;
    if let Some(p) = p {
        p.check_dim(lab.m)?;
    }
    let v = |c: usize| {
        polys
            .get(&lab.labels[c])
            .ok_or_else(|| Error::MissingLabel(format!("polynomial for {}", lab.labels[c])))
    };
    let mut rec = Ok(());
    let mut dom = Ok(());
    for i in 0..lab.m {
        for a in lab.sorted(None) {
            let top = lab.labels[a].bump(i);
            if !lab.index.contains_key(&top) {
                continue;
            }
            let lhs = v(a)?.mul_var(i);
            let mut rhs = Polynomial::zero(lab.m);
            for (b, c) in t.product(lab.gens[i], a) {
                rhs = &rhs + &v(b)?.scale(c);
                if let Some(p) = p {
                    if dom.is_ok() && !p.leq(&lab.labels[b], &top) {
                        dom = Err(lab.intersection_witness(i, a, b, &format!("b is not {p}-below a + e_i")));
                    }
                }
            }
            if rec.is_ok() {
                let diff = &lhs - &rhs;
                let first = diff.support().next().cloned();
                if let Some(mono) = first {
                    rec = Err(Witness::Recurrence {
                        generator: i + 1,
                        a: lab.labels[a].clone(),
                        monomial: mono.clone(),
                        lhs: rational::format(&lhs.coef(&mono)),
                        rhs: rational::format(&rhs.coef(&mono)),
                    });
                }
            }
        }
    }
    let mut cert = Certificate::new("recurrences");
    cert.record("three-term", rec);
    if let Some(p) = p {
        cert.record(format!("recurrence-support[{p}]"), dom);
    }
    Ok(cert)
}

fn nonzero_conditions(lab: &Labeled) -> std::result::Result<(), Witness> {
    for i in 0..lab.m {
        for a in lab.sorted(None) {
            if let Some(&c) = lab.index.get(&lab.labels[a].bump(i)) {
                if lab.t.p(lab.gens[i], a, c).is_zero() {
                    return Err(lab.intersection_witness(i, a, c, "p[e_i,a]^(a+e_i) = 0"));
                }
                if lab.t.p(lab.gens[i], c, a).is_zero() {
                    return Err(Witness::IntersectionNumber {
                        generator: i + 1,
                        a: lab.labels[c].clone(),
                        b: lab.labels[a].clone(),
                        value: "0".into(),
                        reason: "p[e_i,a+e_i]^a = 0".into(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Bivariate type-(α,β) test: `D` is a `≼_(α,β)`-downset, and for
/// `a, a+e_i ∈ D` both `p[e_i,a]^(a+e_i)` and `p[e_i,a+e_i]^a` are nonzero
/// and every `b` with `p[e_i,a]^b ≠ 0` satisfies `b ≼ a + e_i`.
pub fn certify_type_ab(t: &IntersectionTensor, ab: &AlphaBeta) -> Result<Certificate> {
    let lab = Labeled::new(t)?;
    let p = PartialOrder::AlphaBeta(ab.clone());
    p.check_dim(lab.m)?;
    let mut cert = Certificate::new(format!("type-ab[{p}]"));
    domain_check(&mut cert, &lab.domain(), &DomainMode::Downset(p.clone()))?;
    cert.record("nonzero-neighbors", nonzero_conditions(&lab));
    let mut outcome = Ok(());
    'outer: for i in 0..lab.m {
        for a in lab.sorted(None) {
            let top = lab.labels[a].bump(i);
            if !lab.index.contains_key(&top) {
                continue;
            }
            for (b, _) in lab.t.product(lab.gens[i], a) {
                if !p.leq(&lab.labels[b], &top) {
                    outcome = Err(lab.intersection_witness(i, a, b, "b is not below a + e_i"));
                    break 'outer;
                }
            }
        }
    }
    cert.record("expansion-support", outcome);
    Ok(cert)
}

/// All `(α, β)` for which [`certify_type_ab`] passes.
pub fn ab_region_for_scheme(t: &IntersectionTensor) -> Result<AbRegion> {
    let lab = Labeled::new(t)?;
    if lab.m != 2 {
        return Err(Error::NotBivariate("type-(α,β) region".into()));
    }
    if nonzero_conditions(&lab).is_err() {
        return Ok(AbRegion { rects: vec![] });
    }
    let mut cs = AbConstraints::new();
    let domain = lab.domain();
    for a in &domain {
        let s = a.get(0) + a.get(1);
        for c in MultiIndex::box_points(2, s) {
            if !domain.contains(&c) {
                cs.exclude(c, a.clone());
            }
        }
    }
    for i in 0..2 {
        for a in 0..lab.labels.len() {
            let top = lab.labels[a].bump(i);
            if !lab.index.contains_key(&top) {
                continue;
            }
            for (b, _) in lab.t.product(lab.gens[i], a) {
                cs.require(lab.labels[b].clone(), top.clone());
            }
        }
    }
    cs.solve()
}

/// A generator tuple whose union graph reproduces the scheme.
#[derive(Clone, Debug, Serialize)]
pub struct Discovered {
    pub generators: Vec<ClassLabel>,
    pub labeling: Labeling,
    pub certificate: Certificate,
}

fn ordered_tuples(items: &[usize], m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut t in ordered_tuples(&rest, m - 1) {
            t.insert(0, x);
            out.push(t);
        }
    }
    out
}

fn union_connected(class: &[u32], n: usize, gens: &[usize]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if !seen[y] && gens.contains(&(class[x * n + y] as usize)) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// The graph on the scheme's vertices whose color-`k` edges are the pairs in
/// class `gens[k-1]`.
pub fn union_graph(s: &SchemeClasses, gens: &[usize]) -> Result<ColoredGraph> {
    let n = s.len();
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for (k, &c) in gens.iter().enumerate() {
                if s.contains(c, x, y) {
                    edges.push((x, y, k + 1));
                }
            }
        }
    }
    ColoredGraph::from_indices(gens.len(), s.vertices().to_vec(), &edges)
}

/// Tries every ordered `m`-tuple of non-identity classes as generators and
/// keeps those whose union graph is m-distance-regular with m-distance
/// classes equal to the scheme's classes.
pub fn discover_labelings(s: &SchemeClasses, m: usize, order: &MonomialOrder) -> Result<Vec<Discovered>> {
    order.check_dim(m)?;
    let cert = verify_scheme_axioms(s);
    if !cert.passed() {
        return Err(Error::NotAScheme(Box::new(cert)));
    }
    let n = s.len();
    let class = s.partition().expect("axioms imply a partition");
    let identity = class[0] as usize;
    let others: Vec<usize> = (0..s.num_classes()).filter(|&c| c != identity).collect();
    if m == 0 || m > others.len() {
        return Ok(vec![]);
    }
    let tuples: Vec<Vec<usize>> = ordered_tuples(&others, m)
        .into_iter()
        .filter(|t| union_connected(&class, n, t))
        .collect();
    let found: Vec<Option<Discovered>> = tuples
        .par_iter()
        .map(|gens| -> Result<Option<Discovered>> {
            let g = union_graph(s, gens)?;
            let report = mdrg_check(&g, order)?;
            if !report.certificate.passed() || report.table.labels.len() != s.num_classes() {
                return Ok(None);
            }
            let mut map: BTreeMap<ClassLabel, MultiIndex> = BTreeMap::new();
            for k in 0..n * n {
                let d = report.table.distance(k / n, k % n);
                let label = &s.labels()[class[k] as usize];
                match map.get(label) {
                    Some(prev) if prev != d => return Ok(None),
                    Some(_) => {}
                    None => {
                        map.insert(label.clone(), d.clone());
                    }
                }
            }
            let Ok(labeling) = Labeling::new(map) else {
                return Ok(None);
            };
            Ok(Some(Discovered {
                generators: gens.iter().map(|&c| s.labels()[c].clone()).collect(),
                labeling,
                certificate: report.certificate,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}
