//! Multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::order::MonomialOrder;
use crate::rational::{self, Rational};

/// `Σ f_a x^a` over `a ∈ ℕ^m`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    m: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(m: usize) -> Self {
        Polynomial {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        Self::zero(m).with_term(MultiIndex::zero(m), c)
    }

    /// The variable `x_i`, 0-based.
    pub fn var(m: usize, i: usize) -> Self {
        Self::zero(m).with_term(MultiIndex::unit(m, i), Rational::one())
    }

    pub fn with_term(mut self, a: MultiIndex, c: Rational) -> Self {
        self.add_term(a, c);
        self
    }

    pub fn add_term(&mut self, a: MultiIndex, c: Rational) {
        assert_eq!(a.dim(), self.m, "monomial dimension");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(a).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, a: &MultiIndex) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    /// The largest monomial under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&MultiIndex> {
        self.terms.keys().max_by(|a, b| order.cmp(a, b))
    }

    /// `x_i · self`.
    pub fn mul_var(&self, i: usize) -> Self {
        Polynomial {
            m: self.m,
            terms: self.terms.iter().map(|(a, c)| (a.bump(i), c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.m);
        }
        Polynomial {
            m: self.m,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c * k)).collect(),
        }
    }

    /// Evaluates at commuting values given by `mul(i, v) = x_i · v`,
    /// starting from `one`.
    pub fn eval_with<T, F>(&self, one: &T, zero: T, mut mul: F, mut add: impl FnMut(T, &T, &Rational) -> T) -> T
    where
        T: Clone,
        F: FnMut(usize, &T) -> T,
    {
        let mut acc = zero;
        for (a, c) in &self.terms {
            let mut v = one.clone();
            for i in 0..self.m {
                for _ in 0..a.get(i) {
                    v = mul(i, &v);
                }
            }
            acc = add(acc, &v, c);
        }
        acc
    }

    fn var_names(&self) -> Vec<String> {
        match self.m {
            1 => vec!["x".into()],
            2 => vec!["x".into(), "y".into()],
            3 => vec!["x".into(), "y".into(), "z".into()],
            m => (1..=m).map(|i| format!("x{i}")).collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.m);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

/// Terms in decreasing degree, e.g. `1/6 x^2 - 2/3 x - 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.var_names();
        let mut keys: Vec<&MultiIndex> = self.terms.keys().collect();
        keys.sort_by(|a, b| MonomialOrder::DegLexSum.cmp(b, a));
        for (k, a) in keys.into_iter().enumerate() {
            let c = &self.terms[a];
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let mono: Vec<String> = (0..self.m)
                .filter(|&i| a.get(i) > 0)
                .map(|i| match a.get(i) {
                    1 => names[i].clone(),
                    e => format!("{}^{e}", names[i]),
                })
                .collect();
            if mono.is_empty() {
                f.write_str(&rational::format(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono.join(" "))?;
            } else {
                write!(f, "{} {}", rational::format(&abs), mono.join(" "))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    a: MultiIndex,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: MultiIndex,
    terms: Vec<TermJson>,
}

/// The polynomials `v_n` with `A_n = v_n(A_{e_1}, ..., A_{e_m})`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolynomialExpansion {
    pub polys: BTreeMap<MultiIndex, Polynomial>,
}

impl PolynomialExpansion {
    pub fn get(&self, n: &MultiIndex) -> Option<&Polynomial> {
        self.polys.get(n)
    }

    /// `[{"n": "1,1", "terms": [{"a": "1,1", "coef": "1/3"}, ...]}, ...]`
    pub fn to_json(&self) -> serde_json::Value {
        let out: Vec<PolyJson> = self
            .polys
            .iter()
            .map(|(n, p)| PolyJson {
                n: n.clone(),
                terms: p
                    .terms()
                    .map(|(a, c)| TermJson {
                        a: a.clone(),
                        coef: rational::format(c),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(out).expect("plain data serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let items: Vec<PolyJson> = serde_json::from_value(v.clone())?;
        let mut polys = BTreeMap::new();
        for item in items {
            let m = item.n.dim();
            let mut p = Polynomial::zero(m);
            for t in item.terms {
                if t.a.dim() != m {
                    return Err(Error::Dimension {
                        expected: m,
                        found: t.a.dim(),
                    });
                }
                p.add_term(t.a, rational::parse(&t.coef)?);
            }
            polys.insert(item.n, p);
        }
        Ok(PolynomialExpansion { polys })
    }
}
