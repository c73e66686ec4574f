//! Elements of ℕ^m.
//!
//! A [`MultiIndex`] stands for an exponent vector, an m-length of a walk, an
//! m-distance or the label of a scheme class. The derived `Ord` is plain
//! lexicographic storage order used for deterministic maps; monomial orders
//! live in [`crate::order`].

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// The origin `o` of ℕ^m.
    pub fn zero(m: usize) -> Self {
        MultiIndex(vec![0; m])
    }

    /// The unit vector `e_i`; `i` is 0-based.
    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Total degree `|a|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// `self + e_i`.
    pub fn bump(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    /// `self - other`, or `None` when the result leaves ℕ^m.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All points of the box `[0, bound]^m`.
    pub fn box_points(m: usize, bound: u32) -> Vec<MultiIndex> {
        Self::grid(&vec![bound; m])
    }

    /// All points `b` with `b_i ≤ upper_i`.
    pub fn grid(upper: &[u32]) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::with_capacity(upper.len()))];
        for &u in upper {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=u).map(move |x| {
                        let mut q = p.0.clone();
                        q.push(x);
                        MultiIndex(q)
                    })
                })
                .collect();
        }
        out
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), rhs.dim());
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Parses `"1,0"`, with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Err(Error::Parse(format!("empty multi-index `{s}`")));
        }
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multi-index `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(MultiIndex)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
