//! Pass/fail verdicts with machine-readable counterexamples.
//!
//! Every failing [`Certificate`] carries a [`Witness`] naming the exact
//! objects (multi-indices, vertices, counts) that violate the property, so a
//! failure can be re-checked without trusting the code that produced it.

use serde::{Deserialize, Serialize};

use crate::multiindex::MultiIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A monomial-order axiom fails on the listed points.
    OrderAxiom {
        axiom: String,
        points: Vec<MultiIndex>,
    },
    /// A property of a (partial order, monomial order) pair fails.
    PairCompat {
        property: String,
        points: Vec<MultiIndex>,
    },
    /// `missing` lies below `above` but is not in the domain.
    DomainClosure {
        missing: MultiIndex,
        above: MultiIndex,
    },
    /// `d(x,z)` is not below `d(x,y) + e_color` although `y ~ z` has that color.
    GraphCompat {
        x: String,
        y: String,
        z: String,
        color: usize,
        d_xy: MultiIndex,
        d_xz: MultiIndex,
    },
    SchemeAxiom {
        axiom: String,
        classes: Vec<String>,
        vertices: Vec<String>,
        counts: Vec<u64>,
    },
    MissingGenerator {
        generator: MultiIndex,
    },
    /// Two pairs at the same m-distance `c` with different counts of `z`.
    Regularity {
        a: MultiIndex,
        b: MultiIndex,
        c: MultiIndex,
        pair: [String; 2],
        other_pair: [String; 2],
        counts: [u64; 2],
    },
    /// An intersection number `p[e_generator, a]^b` violates a condition.
    IntersectionNumber {
        generator: usize,
        a: MultiIndex,
        b: MultiIndex,
        value: String,
        reason: String,
    },
    /// `A_{e_generator} A^a` is not in the span of the allowed monomials.
    Boundary {
        generator: usize,
        a: MultiIndex,
    },
    Recurrence {
        generator: usize,
        a: MultiIndex,
        monomial: MultiIndex,
        lhs: String,
        rhs: String,
    },
    TensorEntry {
        a: String,
        b: String,
        c: String,
        value: String,
        reason: String,
    },
    Extraction {
        n: MultiIndex,
        reason: String,
    },
    Lemma {
        lemma: String,
        labels: Vec<MultiIndex>,
        vertices: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn new(name: impl Into<String>) -> Self {
        Certificate {
            name: name.into(),
            verdict: Verdict::Pass,
            checks: Vec::new(),
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Records a sub-check. The first failing sub-check supplies the witness.
    pub fn record(&mut self, name: impl Into<String>, outcome: Result<(), Witness>) -> &mut Self {
        let passed = outcome.is_ok();
        self.checks.push(Check {
            name: name.into(),
            passed,
            note: None,
        });
        if let Err(w) = outcome {
            self.verdict = Verdict::Fail;
            if self.witness.is_none() {
                self.witness = Some(w);
            }
        }
        self
    }

    /// Records a sub-check that does not affect the verdict.
    pub fn note(&mut self, name: impl Into<String>, passed: bool, note: impl Into<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
            note: Some(note.into()),
        });
        self
    }

    pub fn with(mut self, name: impl Into<String>, outcome: Result<(), Witness>) -> Self {
        self.record(name, outcome);
        self
    }
}
