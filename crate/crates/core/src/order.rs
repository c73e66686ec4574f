//! Monomial orders and compatible partial orders on ℕ^m.
//!
//! All parameters are exact rationals, so boundary cases such as `α = 1/2`
//! are decided exactly.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::rational::{self, Rational};

/// A total monomial order on ℕ^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded, ties broken by the leftmost nonzero entry of `a - b` being
    /// negative (graded lex with `x1 > x2 > ...`).
    DegLexSum,
    /// Graded, ties broken by comparing entries from the last one backwards.
    /// For m = 2 this is `x^i y^j ≤ x^i' y^j'` iff `i+j < i'+j'`, or
    /// `i+j = i'+j'` and `j ≤ j'`.
    DegLexY2,
    /// Leftmost differing entry decides.
    Lex,
    /// Weighted degree `Σ w_i a_i`, ties broken by [`MonomialOrder::Lex`].
    /// Weights must be positive; well-ordering is the caller's obligation.
    WeightedDegLex(Vec<Rational>),
}

impl MonomialOrder {
    pub fn check_dim(&self, m: usize) -> Result<()> {
        if m == 0 {
            return Err(Error::OrderNotDefined {
                order: self.to_string(),
                m,
            });
        }
        if let MonomialOrder::WeightedDegLex(w) = self {
            if w.len() != m {
                return Err(Error::Dimension {
                    expected: w.len(),
                    found: m,
                });
            }
        }
        Ok(())
    }

    /// Compares two indices of the same dimension. Callers are expected to
    /// have checked dimensions; see [`compare_monomial`] for the checked form.
    pub fn cmp(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        match self {
            MonomialOrder::DegLexSum => a.degree().cmp(&b.degree()).then_with(|| a.entries().cmp(b.entries())),
            MonomialOrder::DegLexY2 => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.entries().iter().rev().cmp(b.entries().iter().rev())),
            MonomialOrder::Lex => a.entries().cmp(b.entries()),
            MonomialOrder::WeightedDegLex(w) => {
                let wa = weighted(w, a);
                let wb = weighted(w, b);
                wa.cmp(&wb).then_with(|| a.entries().cmp(b.entries()))
            }
        }
    }

    pub fn le(&self, a: &MultiIndex, b: &MultiIndex) -> bool {
        self.cmp(a, b) != Ordering::Greater
    }

    pub fn lt(&self, a: &MultiIndex, b: &MultiIndex) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    /// Sorts indices increasingly under this order.
    pub fn sort(&self, v: &mut [MultiIndex]) {
        v.sort_by(|a, b| self.cmp(a, b));
    }

    pub fn builtins(m: usize) -> Vec<MonomialOrder> {
        let mut v = vec![MonomialOrder::DegLexSum, MonomialOrder::DegLexY2, MonomialOrder::Lex];
        v.push(MonomialOrder::WeightedDegLex(
            (1..=m as i64).map(|k| rational::frac(k + 1, k)).collect(),
        ));
        v
    }
}

fn weighted(w: &[Rational], a: &MultiIndex) -> Rational {
    w.iter()
        .zip(a.entries())
        .fold(Rational::zero(), |acc, (wi, &ai)| acc + wi * rational::int(ai as i64))
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegLexSum => f.write_str("deglex-sum"),
            MonomialOrder::DegLexY2 => f.write_str("deglex-y2"),
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::WeightedDegLex(w) => {
                let parts: Vec<String> = w.iter().map(rational::format).collect();
                write!(f, "wdeglex:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "deglex-sum" => Ok(MonomialOrder::DegLexSum),
            "deglex-y2" => Ok(MonomialOrder::DegLexY2),
            "lex" => Ok(MonomialOrder::Lex),
            t => {
                let Some(rest) = t.strip_prefix("wdeglex:") else {
                    return Err(Error::Parse(format!("unknown monomial order `{s}`")));
                };
                let w = rest.split(',').map(rational::parse).collect::<Result<Vec<_>>>()?;
                if w.is_empty() || w.iter().any(|x| !x.is_positive()) {
                    return Err(Error::Parameter(format!("weights must be positive in `{s}`")));
                }
                Ok(MonomialOrder::WeightedDegLex(w))
            }
        }
    }
}

/// Checked comparison under a monomial order.
pub fn compare_monomial(order: &MonomialOrder, a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    order.check_dim(a.dim())?;
    Ok(order.cmp(a, b))
}

/// Parameters of `≼_(α,β)`: `0 ≤ α ≤ 1`, `0 ≤ β < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBeta {
    alpha: Rational,
    beta: Rational,
}

impl AlphaBeta {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        let unit = rational::one();
        if alpha.is_negative() || alpha > unit {
            return Err(Error::Parameter(format!(
                "alpha = {} not in [0,1]",
                rational::format(&alpha)
            )));
        }
        if beta.is_negative() || beta >= unit {
            return Err(Error::Parameter(format!(
                "beta = {} not in [0,1)",
                rational::format(&beta)
            )));
        }
        Ok(AlphaBeta { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// `a ≼ b` iff `a1 + α a2 ≤ b1 + α b2` and `β a1 + a2 ≤ β b1 + b2`.
    pub fn leq(&self, a: &MultiIndex, b: &MultiIndex) -> bool {
        let (a1, a2) = (rational::int(a.get(0) as i64), rational::int(a.get(1) as i64));
        let (b1, b2) = (rational::int(b.get(0) as i64), rational::int(b.get(1) as i64));
        &a1 + &self.alpha * &a2 <= &b1 + &self.alpha * &b2 && &self.beta * a1 + a2 <= &self.beta * b1 + b2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialCmp {
    Less,
    Equal,
    Greater,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartialOrder {
    AlphaBeta(AlphaBeta),
    /// `b ≼ a` iff `b_i ≤ a_i` for all `i`.
    Componentwise,
}

impl PartialOrder {
    pub fn check_dim(&self, m: usize) -> Result<()> {
        match self {
            PartialOrder::AlphaBeta(_) if m != 2 => Err(Error::NotBivariate(self.to_string())),
            _ => Ok(()),
        }
    }

    /// `a ≼ b`, dimensions assumed checked.
    pub fn leq(&self, a: &MultiIndex, b: &MultiIndex) -> bool {
        match self {
            PartialOrder::AlphaBeta(ab) => ab.leq(a, b),
            PartialOrder::Componentwise => a.divides(b),
        }
    }

    pub fn cmp(&self, a: &MultiIndex, b: &MultiIndex) -> PartialCmp {
        if a == b {
            return PartialCmp::Equal;
        }
        match (self.leq(a, b), self.leq(b, a)) {
            (true, _) => PartialCmp::Less,
            (false, true) => PartialCmp::Greater,
            (false, false) => PartialCmp::Incomparable,
        }
    }

    /// Upper bounds for the entries of any `b ≼ a`.
    fn downset_bounds(&self, a: &MultiIndex) -> Vec<u32> {
        match self {
            PartialOrder::Componentwise => a.entries().to_vec(),
            PartialOrder::AlphaBeta(ab) => {
                let (a1, a2) = (rational::int(a.get(0) as i64), rational::int(a.get(1) as i64));
                let b1 = (&a1 + ab.alpha() * &a2).floor();
                let b2 = (ab.beta() * &a1 + &a2).floor();
                vec![
                    b1.to_integer().to_u32().expect("bound fits"),
                    b2.to_integer().to_u32().expect("bound fits"),
                ]
            }
        }
    }
}

impl fmt::Display for PartialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartialOrder::AlphaBeta(ab) => {
                write!(f, "ab:{},{}", rational::format(ab.alpha()), rational::format(ab.beta()))
            }
            PartialOrder::Componentwise => f.write_str("componentwise"),
        }
    }
}

impl FromStr for PartialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "componentwise" {
            return Ok(PartialOrder::Componentwise);
        }
        let Some(rest) = t.strip_prefix("ab:") else {
            return Err(Error::Parse(format!("unknown partial order `{s}`")));
        };
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected ab:alpha,beta, got `{s}`")))?;
        Ok(PartialOrder::AlphaBeta(AlphaBeta::new(
            rational::parse(a)?,
            rational::parse(b)?,
        )?))
    }
}

/// Checked comparison under a partial order.
pub fn compare_partial(p: &PartialOrder, a: &MultiIndex, b: &MultiIndex) -> Result<PartialCmp> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    p.check_dim(a.dim())?;
    Ok(p.cmp(a, b))
}

/// Exhaustively checks the monomial-order axioms of a comparator on the box
/// `[0, bound]^m`: totality and antisymmetry, transitivity, translation
/// invariance and `o` being the unique minimum.
pub fn validate_order_fn<F>(cmp: F, m: usize, bound: u32) -> Certificate
where
    F: Fn(&MultiIndex, &MultiIndex) -> Ordering,
{
    let pts = MultiIndex::box_points(m, bound);
    let mut cert = Certificate::new("monomial-order");

    let antisym = (|| {
        for a in &pts {
            for b in &pts {
                let ab = cmp(a, b);
                if ab != cmp(b, a).reverse() || (ab == Ordering::Equal) != (a == b) {
                    return Err(Witness::OrderAxiom {
                        axiom: "totality/antisymmetry".into(),
                        points: vec![a.clone(), b.clone()],
                    });
                }
            }
        }
        Ok(())
    })();
    cert.record("totality/antisymmetry", antisym);

    let trans = (|| {
        for a in &pts {
            for b in &pts {
                if cmp(a, b) != Ordering::Less {
                    continue;
                }
                for c in &pts {
                    if cmp(b, c) == Ordering::Less && cmp(a, c) != Ordering::Less {
                        return Err(Witness::OrderAxiom {
                            axiom: "transitivity".into(),
                            points: vec![a.clone(), b.clone(), c.clone()],
                        });
                    }
                }
            }
        }
        Ok(())
    })();
    cert.record("transitivity", trans);

    let transl = (|| {
        for a in &pts {
            for b in &pts {
                let ab = cmp(a, b);
                for c in &pts {
                    if cmp(&(a + c), &(b + c)) != ab {
                        return Err(Witness::OrderAxiom {
                            axiom: "translation-invariance".into(),
                            points: vec![a.clone(), b.clone(), c.clone()],
                        });
                    }
                }
            }
        }
        Ok(())
    })();
    cert.record("translation-invariance", transl);

    let o = MultiIndex::zero(m);
    let minimum = pts
        .iter()
        .filter(|a| **a != o)
        .find(|a| cmp(&o, a) != Ordering::Less)
        .map_or(Ok(()), |a| {
            Err(Witness::OrderAxiom {
                axiom: "origin-minimum".into(),
                points: vec![o.clone(), a.clone()],
            })
        });
    cert.record("origin-minimum", minimum);
    cert
}

pub fn validate_monomial_order(order: &MonomialOrder, m: usize, bound: u32) -> Result<Certificate> {
    order.check_dim(m)?;
    Ok(validate_order_fn(|a, b| order.cmp(a, b), m, bound))
}

/// Checks on `[0, bound]^m` that `≤` linearly extends `≼`, that `≼` is
/// translation invariant and that `o ≼ a`.
pub fn validate_pair_compat(p: &PartialOrder, order: &MonomialOrder, m: usize, bound: u32) -> Result<Certificate> {
    p.check_dim(m)?;
    order.check_dim(m)?;
    let pts = MultiIndex::box_points(m, bound);
    let mut cert = Certificate::new("order-pair");

    let ext = pts
        .iter()
        .flat_map(|a| pts.iter().map(move |b| (a, b)))
        .find(|(a, b)| p.leq(a, b) && !order.le(a, b))
        .map_or(Ok(()), |(a, b)| {
            Err(Witness::PairCompat {
                property: "linear-extension".into(),
                points: vec![a.clone(), b.clone()],
            })
        });
    cert.record("linear-extension", ext);

    let transl = (|| {
        for a in &pts {
            for b in &pts {
                if !p.leq(a, b) {
                    continue;
                }
                for c in &pts {
                    if !p.leq(&(a + c), &(b + c)) {
                        return Err(Witness::PairCompat {
                            property: "translation-invariance".into(),
                            points: vec![a.clone(), b.clone(), c.clone()],
                        });
                    }
                }
            }
        }
        Ok(())
    })();
    cert.record("translation-invariance", transl);

    let o = MultiIndex::zero(m);
    let bottom = pts.iter().find(|a| !p.leq(&o, a)).map_or(Ok(()), |a| {
        Err(Witness::PairCompat {
            property: "origin-bottom".into(),
            points: vec![a.clone()],
        })
    });
    cert.record("origin-bottom", bottom);
    Ok(cert)
}

/// `{ b ∈ ℕ^m : b ≼ a }`.
pub fn downset_enum(a: &MultiIndex, p: &PartialOrder) -> Result<BTreeSet<MultiIndex>> {
    p.check_dim(a.dim())?;
    Ok(MultiIndex::grid(&p.downset_bounds(a))
        .into_iter()
        .filter(|b| p.leq(b, a))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainMode {
    /// Componentwise downward closure.
    BoxClosure,
    /// Downward closure under a partial order.
    Downset(PartialOrder),
}

pub fn check_domain(domain: &BTreeSet<MultiIndex>, mode: &DomainMode) -> Result<Certificate> {
    let p = match mode {
        DomainMode::BoxClosure => PartialOrder::Componentwise,
        DomainMode::Downset(p) => p.clone(),
    };
    let name = match mode {
        DomainMode::BoxClosure => "box-closure".to_string(),
        DomainMode::Downset(p) => format!("downset[{p}]"),
    };
    let mut outcome = Ok(());
    'outer: for a in domain {
        for b in downset_enum(a, &p)? {
            if !domain.contains(&b) {
                outcome = Err(Witness::DomainClosure {
                    missing: b,
                    above: a.clone(),
                });
                break 'outer;
            }
        }
    }
    let mut cert = Certificate::new("domain");
    cert.record(name, outcome);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn ab(a: Rational, b: Rational) -> PartialOrder {
        PartialOrder::AlphaBeta(AlphaBeta::new(a, b).unwrap())
    }

    #[test]
    fn monomial_examples() {
        let y2 = MonomialOrder::DegLexY2;
        let sum = MonomialOrder::DegLexSum;
        assert_eq!(
            compare_monomial(&y2, &mi(&[0, 2]), &mi(&[1, 1])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            compare_monomial(&sum, &mi(&[0, 2]), &mi(&[1, 1])).unwrap(),
            Ordering::Less
        );
        for o in MonomialOrder::builtins(2) {
            assert_eq!(
                compare_monomial(&o, &mi(&[3, 1]), &mi(&[3, 1])).unwrap(),
                Ordering::Equal
            );
        }
        assert!(matches!(
            compare_monomial(&sum, &mi(&[1]), &mi(&[1, 0])),
            Err(Error::Dimension { .. })
        ));
        let w = MonomialOrder::WeightedDegLex(vec![frac(1, 1), frac(1, 2), frac(3, 1)]);
        assert!(compare_monomial(&w, &mi(&[1, 0]), &mi(&[0, 1])).is_err());
    }

    #[test]
    fn partial_examples() {
        let half = ab(frac(1, 2), frac(0, 1));
        assert_eq!(
            compare_partial(&half, &mi(&[1, 0]), &mi(&[0, 2])).unwrap(),
            PartialCmp::Less
        );
        for (a, b) in [(0, 0), (1, 2), (1, 3), (2, 3), (0, 3)] {
            let p = ab(frac(a, 3), frac(b, 4));
            assert_eq!(p.cmp(&mi(&[0, 2]), &mi(&[1, 1])), PartialCmp::Incomparable);
        }
        assert_eq!(
            ab(frac(1, 1), frac(0, 1)).cmp(&mi(&[0, 2]), &mi(&[1, 1])),
            PartialCmp::Greater
        );
        assert_eq!(half.cmp(&mi(&[0, 0]), &mi(&[3, 1])), PartialCmp::Less);
        assert!(matches!(
            compare_partial(&half, &mi(&[1, 0, 0]), &mi(&[0, 0, 1])),
            Err(Error::NotBivariate(_))
        ));
    }

    #[test]
    fn alpha_beta_bounds() {
        assert!(AlphaBeta::new(frac(1, 1), frac(0, 1)).is_ok());
        assert!(AlphaBeta::new(frac(2, 1), frac(0, 1)).is_err());
        assert!(AlphaBeta::new(frac(1, 2), frac(1, 1)).is_err());
        assert!(AlphaBeta::new(frac(-1, 2), frac(0, 1)).is_err());
    }

    #[test]
    fn parse_specs() {
        for s in ["deglex-sum", "deglex-y2", "lex", "wdeglex:1,2/3"] {
            assert_eq!(s.parse::<MonomialOrder>().unwrap().to_string(), s);
        }
        assert!("wdeglex:1,0".parse::<MonomialOrder>().is_err());
        assert!("grevlex".parse::<MonomialOrder>().is_err());
        assert_eq!("ab:1/2,0".parse::<PartialOrder>().unwrap(), ab(frac(1, 2), frac(0, 1)));
        assert!("ab:2,0".parse::<PartialOrder>().is_err());
        assert_eq!(
            "componentwise".parse::<PartialOrder>().unwrap(),
            PartialOrder::Componentwise
        );
    }

    #[test]
    fn validators() {
        assert!(validate_monomial_order(&MonomialOrder::DegLexSum, 2, 3)
            .unwrap()
            .passed());
        assert!(validate_monomial_order(&MonomialOrder::DegLexY2, 2, 3)
            .unwrap()
            .passed());
        let broken = validate_order_fn(|a, b| a.get(1).cmp(&b.get(1)), 2, 3);
        assert!(!broken.passed());
        match broken.witness.unwrap() {
            Witness::OrderAxiom { axiom, points } => {
                assert_eq!(axiom, "totality/antisymmetry");
                assert_eq!(points[0].get(1), points[1].get(1));
                assert_ne!(points[0], points[1]);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn pair_compat() {
        let y2 = MonomialOrder::DegLexY2;
        assert!(validate_pair_compat(&ab(frac(0, 1), frac(0, 1)), &y2, 2, 4)
            .unwrap()
            .passed());
        assert!(
            validate_pair_compat(&PartialOrder::Componentwise, &MonomialOrder::Lex, 2, 3)
                .unwrap()
                .passed()
        );
        // Graded lex extends ≼_(α,β) exactly when α < 1.
        let sum = MonomialOrder::DegLexSum;
        assert!(validate_pair_compat(&ab(frac(1, 2), frac(0, 1)), &sum, 2, 4)
            .unwrap()
            .passed());
        let c = validate_pair_compat(&ab(frac(1, 1), frac(0, 1)), &sum, 2, 4).unwrap();
        assert_eq!(
            c.witness,
            Some(Witness::PairCompat {
                property: "linear-extension".into(),
                points: vec![mi(&[1, 0]), mi(&[0, 1])],
            })
        );
    }

    #[test]
    fn downsets() {
        let d = downset_enum(&mi(&[2, 0]), &ab(frac(0, 1), frac(0, 1))).unwrap();
        assert_eq!(d, [mi(&[0, 0]), mi(&[1, 0]), mi(&[2, 0])].into_iter().collect());
        let d = downset_enum(&mi(&[1, 1]), &ab(frac(1, 1), frac(1, 2))).unwrap();
        assert!(!d.contains(&mi(&[0, 2])));
        assert!(d.contains(&mi(&[2, 0])) == ab(frac(1, 1), frac(1, 2)).leq(&mi(&[2, 0]), &mi(&[1, 1])));
        let d = downset_enum(&mi(&[1, 1]), &PartialOrder::Componentwise).unwrap();
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn domains() {
        let d1: BTreeSet<_> = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1]]
            .into_iter()
            .map(MultiIndex::from)
            .collect();
        let d2: BTreeSet<_> = [[0, 0], [1, 0], [0, 1], [2, 0], [0, 2]]
            .into_iter()
            .map(MultiIndex::from)
            .collect();
        for a in 0..=4 {
            for b in 0..4 {
                let mode = DomainMode::Downset(ab(frac(a, 4), frac(b, 4)));
                assert!(check_domain(&d1, &mode).unwrap().passed(), "a={a}/4 b={b}/4");
            }
        }
        let c = check_domain(&d2, &DomainMode::Downset(ab(frac(1, 1), frac(0, 1)))).unwrap();
        assert_eq!(
            c.witness,
            Some(Witness::DomainClosure {
                missing: mi(&[1, 1]),
                above: mi(&[0, 2])
            })
        );
        assert!(check_domain(&d2, &DomainMode::BoxClosure).unwrap().passed());
    }
}
