//! Three-valued predicate results.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::elem::{Elem, ElemSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Inapplicable => "Inapplicable",
        })
    }
}

/// One candidate of an existential predicate together with the multiset that
/// rules it out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateFailure {
    pub candidate: Elem,
    pub tuple: Vec<Elem>,
}

/// Why a universal condition failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// The set does not contain the zero.
    ZeroMissing,
    /// `f(tuple)` leaves the set; `escaped` lists the outside elements.
    FClosure { tuple: Vec<Elem>, escaped: ElemSet },
    /// `g(tuple)` leaves the set although some argument lies in it.
    GAbsorption { tuple: Vec<Elem>, image: Elem },
    /// `target` in `f(fixed, x)` has no solution `x` inside the set.
    Solvability { fixed: Vec<Elem>, target: Elem },
    /// `g(tuple) = image` violates the predicate.
    Product { tuple: Vec<Elem>, image: Elem },
    /// A tuple of hyperideals violating an ideal-wise condition.
    Ideals { ideals: Vec<ElemSet> },
    /// A map breaks an operation on `tuple`; `op` is `"f"` or `"g"`.
    Operation { op: String, tuple: Vec<Elem> },
    /// Every candidate of an existential predicate fails.
    PerCandidate { failures: Vec<CandidateFailure> },
}

impl Counterexample {
    /// The offending tuple, when the counterexample has one.
    pub fn tuple(&self) -> Option<&[Elem]> {
        match self {
            Counterexample::FClosure { tuple, .. }
            | Counterexample::GAbsorption { tuple, .. }
            | Counterexample::Product { tuple, .. }
            | Counterexample::Operation { tuple, .. } => Some(tuple),
            Counterexample::Solvability { fixed, .. } => Some(fixed),
            _ => None,
        }
    }
}

/// Result of a predicate: a verdict, the witnesses of an existential
/// quantifier, a counterexample for a failed universal one, or the reason the
/// predicate does not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateOutcome {
    pub verdict: Verdict,
    pub witnesses: ElemSet,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl PredicateOutcome {
    pub fn holds_plain() -> Self {
        PredicateOutcome {
            verdict: Verdict::Holds,
            witnesses: ElemSet::EMPTY,
            counterexample: None,
            reason: None,
        }
    }

    pub fn holds_with(witnesses: ElemSet) -> Self {
        PredicateOutcome {
            witnesses,
            ..Self::holds_plain()
        }
    }

    pub fn fails(counterexample: Counterexample) -> Self {
        PredicateOutcome {
            verdict: Verdict::Fails,
            witnesses: ElemSet::EMPTY,
            counterexample: Some(counterexample),
            reason: None,
        }
    }

    pub fn inapplicable(reason: impl Into<String>) -> Self {
        PredicateOutcome {
            verdict: Verdict::Inapplicable,
            witnesses: ElemSet::EMPTY,
            counterexample: None,
            reason: Some(reason.into()),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    pub fn is_inapplicable(&self) -> bool {
        self.verdict == Verdict::Inapplicable
    }

    /// Build from a universal check's first counterexample.
    pub fn from_check(first: Option<Counterexample>) -> Self {
        match first {
            None => Self::holds_plain(),
            Some(c) => Self::fails(c),
        }
    }
}
