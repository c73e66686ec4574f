//! Exact feasible regions for the parameters of `≼_(α,β)`.
//!
//! A constraint `b ≼_(α,β) c` splits into `α (b2 - c2) ≤ c1 - b1` and
//! `β (b1 - c1) ≤ c2 - b2`, so conjunctions of such constraints give a
//! product of intervals. Negated constraints (used for downset conditions)
//! are disjunctions, so a general region is a finite union of rectangles.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    pub closed: bool,
}

/// A nonempty-or-empty interval of the real line with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool) -> Self {
        Interval {
            lo: Bound {
                value: lo,
                closed: lo_closed,
            },
            hi: Bound {
                value: hi,
                closed: hi_closed,
            },
        }
    }

    pub fn alpha_range() -> Self {
        Interval::new(rational::zero(), true, rational::one(), true)
    }

    pub fn beta_range() -> Self {
        Interval::new(rational::zero(), true, rational::one(), false)
    }

    pub fn is_empty(&self) -> bool {
        self.lo.value > self.hi.value || (self.lo.value == self.hi.value && !(self.lo.closed && self.hi.closed))
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = if self.lo.closed {
            *t >= self.lo.value
        } else {
            *t > self.lo.value
        };
        let below = if self.hi.closed {
            *t <= self.hi.value
        } else {
            *t < self.hi.value
        };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = match self.lo.value.cmp(&other.lo.value) {
            std::cmp::Ordering::Greater => self.lo.clone(),
            std::cmp::Ordering::Less => other.lo.clone(),
            std::cmp::Ordering::Equal => Bound {
                value: self.lo.value.clone(),
                closed: self.lo.closed && other.lo.closed,
            },
        };
        let hi = match self.hi.value.cmp(&other.hi.value) {
            std::cmp::Ordering::Less => self.hi.clone(),
            std::cmp::Ordering::Greater => other.hi.clone(),
            std::cmp::Ordering::Equal => Bound {
                value: self.hi.value.clone(),
                closed: self.hi.closed && other.hi.closed,
            },
        };
        Interval { lo, hi }
    }

    fn contains_interval(&self, other: &Interval) -> bool {
        other.is_empty() || self.intersect(other) == *other
    }

    /// Union when it is again an interval.
    fn union(&self, other: &Interval) -> Option<Interval> {
        let (first, second) = if self.lo.value <= other.lo.value {
            (self, other)
        } else {
            (other, self)
        };
        let touches = second.lo.value < first.hi.value
            || (second.lo.value == first.hi.value && (second.lo.closed || first.hi.closed));
        if !touches {
            return None;
        }
        let lo = if first.lo.value == second.lo.value {
            Bound {
                value: first.lo.value.clone(),
                closed: first.lo.closed || second.lo.closed,
            }
        } else {
            first.lo.clone()
        };
        let hi = match first.hi.value.cmp(&second.hi.value) {
            std::cmp::Ordering::Greater => first.hi.clone(),
            std::cmp::Ordering::Less => second.hi.clone(),
            std::cmp::Ordering::Equal => Bound {
                value: first.hi.value.clone(),
                closed: first.hi.closed || second.hi.closed,
            },
        };
        Some(Interval { lo, hi })
    }

    /// Solutions of `k t ≤ r` (or `k t > r` when `negated`).
    fn linear(k: &Rational, r: &Rational, negated: bool) -> Interval {
        let everything = Interval::new(rational::int(-1), true, rational::int(2), true);
        let nothing = Interval::new(rational::one(), false, rational::one(), false);
        if k.is_zero() {
            let holds = if negated { r.is_negative() } else { !r.is_negative() };
            return if holds { everything } else { nothing };
        }
        let t = r / k;
        match (k.is_positive(), negated) {
            (true, false) => Interval::new(rational::int(-1), true, t, true),
            (false, false) => Interval::new(t, true, rational::int(2), true),
            (true, true) => Interval::new(t, false, rational::int(2), true),
            (false, true) => Interval::new(rational::int(-1), true, t, false),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo.closed { '[' } else { '(' },
            rational::format(&self.lo.value),
            rational::format(&self.hi.value),
            if self.hi.closed { ']' } else { ')' }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub alpha: Interval,
    pub beta: Interval,
}

impl Rect {
    pub fn full() -> Self {
        Rect {
            alpha: Interval::alpha_range(),
            beta: Interval::beta_range(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty() || self.beta.is_empty()
    }

    pub fn contains(&self, alpha: &Rational, beta: &Rational) -> bool {
        self.alpha.contains(alpha) && self.beta.contains(beta)
    }

    fn restrict(&self, c: &Side) -> Rect {
        match c {
            Side::Alpha(i) => Rect {
                alpha: self.alpha.intersect(i),
                beta: self.beta.clone(),
            },
            Side::Beta(i) => Rect {
                alpha: self.alpha.clone(),
                beta: self.beta.intersect(i),
            },
        }
    }

    fn contains_rect(&self, other: &Rect) -> bool {
        other.is_empty() || (self.alpha.contains_interval(&other.alpha) && self.beta.contains_interval(&other.beta))
    }
}

/// A finite union of rectangles in `[0,1] × [0,1)`; no rectangles means empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbRegion {
    pub rects: Vec<Rect>,
}

impl AbRegion {
    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn contains(&self, alpha: &Rational, beta: &Rational) -> bool {
        self.rects.iter().any(|r| r.contains(alpha, beta))
    }

    /// The region when it is a single rectangle.
    pub fn as_rect(&self) -> Option<&Rect> {
        match self.rects.as_slice() {
            [r] => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for AbRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rects.is_empty() {
            return f.write_str("empty");
        }
        for (k, r) in self.rects.iter().enumerate() {
            if k > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "alpha: {}, beta: {}", r.alpha, r.beta)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Side {
    Alpha(Interval),
    Beta(Interval),
}

/// The two one-parameter halves of `b ≼_(α,β) c`, or of its negation.
fn split(b: &MultiIndex, c: &MultiIndex, negated: bool) -> (Side, Side) {
    let r = |x: u32| rational::int(x as i64);
    let alpha = Interval::linear(&(r(b.get(1)) - r(c.get(1))), &(r(c.get(0)) - r(b.get(0))), negated);
    let beta = Interval::linear(&(r(b.get(0)) - r(c.get(0))), &(r(c.get(1)) - r(b.get(1))), negated);
    (Side::Alpha(alpha), Side::Beta(beta))
}

/// Accumulates `b ≼ c` requirements and `b ⋠ c` exclusions.
#[derive(Clone, Debug, Default)]
pub struct AbConstraints {
    required: Vec<(MultiIndex, MultiIndex)>,
    excluded: Vec<(MultiIndex, MultiIndex)>,
}

impl AbConstraints {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn require(&mut self, b: MultiIndex, c: MultiIndex) {
        self.required.push((b, c));
    }

    pub fn exclude(&mut self, b: MultiIndex, c: MultiIndex) {
        self.excluded.push((b, c));
    }

    pub fn solve(&self) -> Result<AbRegion> {
        for (b, c) in self.required.iter().chain(&self.excluded) {
            if b.dim() != 2 || c.dim() != 2 {
                return Err(Error::NotBivariate("ab".into()));
            }
        }
        let mut base = Rect::full();
        for (b, c) in &self.required {
            let (a, bb) = split(b, c, false);
            base = base.restrict(&a).restrict(&bb);
        }
        if base.is_empty() {
            return Ok(AbRegion { rects: vec![] });
        }
        let disjunctions: Vec<(Side, Side)> = self.excluded.iter().map(|(b, c)| split(b, c, true)).collect();
        let mut out = Vec::new();
        branch(base, &disjunctions, &mut out);
        Ok(AbRegion { rects: normalize(out) })
    }
}

fn branch(rect: Rect, rest: &[(Side, Side)], out: &mut Vec<Rect>) {
    let Some(((left, right), tail)) = rest.split_first() else {
        out.push(rect);
        return;
    };
    let l = rect.restrict(left);
    let r = rect.restrict(right);
    if l == rect || r == rect {
        branch(rect, tail, out);
        return;
    }
    if !l.is_empty() {
        branch(l, tail, out);
    }
    if !r.is_empty() {
        branch(r, tail, out);
    }
}

fn normalize(mut rects: Vec<Rect>) -> Vec<Rect> {
    rects.retain(|r| !r.is_empty());
    loop {
        let mut changed = false;
        'search: for i in 0..rects.len() {
            for j in 0..rects.len() {
                if i == j {
                    continue;
                }
                if rects[i].contains_rect(&rects[j]) {
                    rects.remove(j);
                    changed = true;
                    break 'search;
                }
                let merged = if rects[i].alpha == rects[j].alpha {
                    rects[i].beta.union(&rects[j].beta).map(|beta| Rect {
                        alpha: rects[i].alpha.clone(),
                        beta,
                    })
                } else if rects[i].beta == rects[j].beta {
                    rects[i].alpha.union(&rects[j].alpha).map(|alpha| Rect {
                        alpha,
                        beta: rects[i].beta.clone(),
                    })
                } else {
                    None
                };
                if let Some(m) = merged {
                    let (hi, lo) = (i.max(j), i.min(j));
                    rects.remove(hi);
                    rects.remove(lo);
                    rects.push(m);
                    changed = true;
                    break 'search;
                }
            }
        }
        if !changed {
            break;
        }
    }
    rects.sort_by(|a, b| (&a.alpha.lo.value, &a.beta.lo.value).cmp(&(&b.alpha.lo.value, &b.beta.lo.value)));
    rects
}

/// Feasible `(α, β)` for a list of `b ≼_(α,β) c` requirements.
pub fn ab_feasible_region(constraints: &[(MultiIndex, MultiIndex)]) -> Result<AbRegion> {
    let mut c = AbConstraints::new();
    for (b, cc) in constraints {
        c.require(b.clone(), cc.clone());
    }
    c.solve()
}
