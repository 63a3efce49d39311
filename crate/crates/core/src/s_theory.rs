//! Multiplicative subsets and the S-prime and S-primary predicates.
//!
//! Both predicates have the shape "some `s` in `S` works for every n-multiset
//! with product in `I`". For a fixed `I` the set of elements that work (the
//! witness universe) does not depend on `S`, so it is computed once and every
//! `S` is answered by an intersection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::elem::{Elem, ElemSet};
use crate::error::{Error, Result};
use crate::ideals::{self, colon_with, hyperideal_gate, radical_powers_with, subsets_with, Mode};
use crate::outcome::{CandidateFailure, Counterexample, PredicateOutcome};
use crate::structure::KrasnerStructure;
use crate::table::{Multisets, MAX_ARITY};
use crate::Limits;

/// How the index in the S-primary condition is quantified.
///
/// For a multiset `x` with `g(x) in I` and a candidate `s`:
///
/// * `PerCoordinate`: every coordinate `i` has `g(s, x_i, 1^(n-2)) in I` or
///   `g(x with x_i replaced by s) in rad I`. With `S = {1}` this is exactly the
///   primary condition.
/// * `Existential`: some coordinate satisfies the first alternative or some
///   coordinate satisfies the second. Once `n >= 3` any multiset containing
///   `s` itself passes trivially, so with `S = {1}` it is weaker than primary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SPrimaryReading {
    #[default]
    PerCoordinate,
    Existential,
}

impl fmt::Display for SPrimaryReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SPrimaryReading::PerCoordinate => "per-coordinate",
            SPrimaryReading::Existential => "existential",
        })
    }
}

impl FromStr for SPrimaryReading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-coordinate" => Ok(SPrimaryReading::PerCoordinate),
            "existential" => Ok(SPrimaryReading::Existential),
            other => Err(Error::InvalidParameters(format!("unknown reading {other:?}"))),
        }
    }
}

/// A nonempty subset closed under `g`.
#[derive(Clone, Copy, Debug)]
pub struct MultiplicativeSubset<'a> {
    structure: &'a KrasnerStructure,
    members: ElemSet,
}

impl<'a> MultiplicativeSubset<'a> {
    pub fn new(structure: &'a KrasnerStructure, members: ElemSet) -> Option<Self> {
        is_multiplicative(structure, members)
            .holds()
            .then_some(MultiplicativeSubset { structure, members })
    }

    pub fn structure(&self) -> &'a KrasnerStructure {
        self.structure
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }
}

fn first_g_escape_within(s: &KrasnerStructure, members: ElemSet) -> Option<(Vec<Elem>, Elem)> {
    let mut cursor = Multisets::over(members, s.n());
    while let Some(ms) = cursor.next() {
        let v = s.g_sorted(ms);
        if !members.contains(v) {
            return Some((ms.to_vec(), v));
        }
    }
    None
}

pub fn is_multiplicative(s: &KrasnerStructure, members: ElemSet) -> PredicateOutcome {
    if members.is_empty() {
        return PredicateOutcome::inapplicable("the set is empty");
    }
    if !members.is_subset(s.carrier()) {
        return PredicateOutcome::inapplicable("set is not inside the carrier");
    }
    PredicateOutcome::from_check(
        first_g_escape_within(s, members).map(|(tuple, image)| Counterexample::Product { tuple, image }),
    )
}

/// Nonempty `g`-closed subsets in mask order, optionally only those avoiding
/// the zero.
pub fn enumerate_multiplicative_subsets(s: &KrasnerStructure, exclude_zero: bool) -> Result<Vec<ElemSet>> {
    enumerate_multiplicative_subsets_with(s, exclude_zero, &Limits::default())
}

pub fn enumerate_multiplicative_subsets_with(
    s: &KrasnerStructure,
    exclude_zero: bool,
    limits: &Limits,
) -> Result<Vec<ElemSet>> {
    ideals::check_enumeration_bound(s, limits)?;
    let pool = if exclude_zero {
        s.carrier().difference(ElemSet::singleton(s.zero()))
    } else {
        s.carrier()
    };
    // Walk the subsets of `pool` via the zero-free enumeration helper.
    let mut out = Vec::new();
    for c in subsets_with(s.size(), ElemSet::EMPTY) {
        if c.is_empty() || !c.is_subset(pool) {
            continue;
        }
        if first_g_escape_within(s, c).is_none() {
            out.push(c);
        }
    }
    Ok(out)
}

/// Shared preconditions of the S-predicates. Returns the identity or the
/// reason the predicate does not apply.
fn s_gate(s: &KrasnerStructure, ideal: ElemSet, mult: ElemSet, mode: Mode) -> Result<Elem, PredicateOutcome> {
    let Some(one) = s.one() else {
        return Err(PredicateOutcome::inapplicable("no designated scalar identity"));
    };
    if let Some(out) = hyperideal_gate(s, ideal, mode) {
        return Err(out);
    }
    let m = is_multiplicative(s, mult);
    if !m.holds() {
        return Err(PredicateOutcome::inapplicable(match m.reason {
            Some(r) => format!("S: {r}"),
            None => "S is not multiplicative".to_string(),
        }));
    }
    let shared = ideal.intersection(mult);
    if !shared.is_empty() {
        return Err(PredicateOutcome::inapplicable(format!(
            "disjointness: I and S share {}",
            s.fmt_set(shared)
        )));
    }
    Ok(one)
}

/// `table[y] = (I : y)`.
fn colon_table(s: &KrasnerStructure, one: Elem, ideal: ElemSet) -> Vec<ElemSet> {
    (0..s.size()).map(|y| colon_with(s, one, ideal, y)).collect()
}

/// Every multiset with product in `I`, in lexicographic order.
fn for_each_in_ideal(s: &KrasnerStructure, ideal: ElemSet, mut visit: impl FnMut(&[Elem])) {
    let mut cursor = Multisets::new(s.size(), s.n());
    while let Some(ms) = cursor.next() {
        if ideal.contains(s.g_sorted(ms)) {
            visit(ms);
        }
    }
}

/// Elements `s` such that every `x` with `g(x) in I` has some coordinate with
/// `g(s, x_i, 1^(n-2)) in I`. No precondition is checked.
pub fn s_prime_universe(s: &KrasnerStructure, one: Elem, ideal: ElemSet) -> ElemSet {
    let colons = colon_table(s, one, ideal);
    let mut universe = s.carrier();
    for_each_in_ideal(s, ideal, |ms| {
        let good = ms.iter().fold(ElemSet::EMPTY, |acc, &x| acc.union(colons[x]));
        universe = universe.intersection(good);
    });
    universe
}

/// Candidates `t` with `g(x with coordinate i replaced by t) in target`.
fn replacement_hits(s: &KrasnerStructure, ms: &[Elem], i: usize, target: ElemSet) -> ElemSet {
    let len = ms.len();
    let mut buf = [0; MAX_ARITY];
    buf[..len].copy_from_slice(ms);
    let mut out = ElemSet::EMPTY;
    for t in 0..s.size() {
        buf[i] = t;
        if target.contains(s.g(&buf[..len])) {
            out.insert(t);
        }
    }
    out
}

fn s_primary_good(
    s: &KrasnerStructure,
    colons: &[ElemSet],
    radical: ElemSet,
    ms: &[Elem],
    reading: SPrimaryReading,
) -> ElemSet {
    match reading {
        SPrimaryReading::PerCoordinate => (0..ms.len()).fold(s.carrier(), |acc, i| {
            acc.intersection(colons[ms[i]].union(replacement_hits(s, ms, i, radical)))
        }),
        SPrimaryReading::Existential => (0..ms.len()).fold(ElemSet::EMPTY, |acc, i| {
            acc.union(colons[ms[i]]).union(replacement_hits(s, ms, i, radical))
        }),
    }
}

/// Witness universe of the S-primary condition. No precondition is checked.
pub fn s_primary_universe(s: &KrasnerStructure, one: Elem, ideal: ElemSet, reading: SPrimaryReading) -> ElemSet {
    let colons = colon_table(s, one, ideal);
    let radical = radical_powers_with(s, one, ideal);
    let mut universe = s.carrier();
    for_each_in_ideal(s, ideal, |ms| {
        universe = universe.intersection(s_primary_good(s, &colons, radical, ms, reading));
    });
    universe
}

/// For each candidate outside the universe, the first multiset ruling it out.
fn candidate_failures(
    s: &KrasnerStructure,
    ideal: ElemSet,
    candidates: ElemSet,
    mut good: impl FnMut(&[Elem]) -> ElemSet,
) -> Vec<CandidateFailure> {
    let mut pending = candidates;
    let mut out = Vec::new();
    let mut cursor = Multisets::new(s.size(), s.n());
    while let Some(ms) = cursor.next() {
        if pending.is_empty() {
            break;
        }
        if !ideal.contains(s.g_sorted(ms)) {
            continue;
        }
        let bad = pending.difference(good(ms));
        for c in bad {
            out.push(CandidateFailure {
                candidate: c,
                tuple: ms.to_vec(),
            });
        }
        pending = pending.difference(bad);
    }
    out.sort_by_key(|f| f.candidate);
    out
}

fn existential_outcome(witnesses: ElemSet, failures: impl FnOnce() -> Vec<CandidateFailure>) -> PredicateOutcome {
    if witnesses.is_empty() {
        PredicateOutcome::fails(Counterexample::PerCandidate { failures: failures() })
    } else {
        PredicateOutcome::holds_with(witnesses)
    }
}

/// Some `s` in `S` such that `g(x) in I` always gives a coordinate with
/// `g(s, x_i, 1^(n-2)) in I`. Witnesses are all such `s`.
pub fn is_s_prime(s: &KrasnerStructure, ideal: ElemSet, mult: ElemSet, mode: Mode) -> PredicateOutcome {
    let one = match s_gate(s, ideal, mult, mode) {
        Ok(one) => one,
        Err(out) => return out,
    };
    let witnesses = s_prime_universe(s, one, ideal).intersection(mult);
    existential_outcome(witnesses, || {
        let colons = colon_table(s, one, ideal);
        candidate_failures(s, ideal, mult, |ms| {
            ms.iter().fold(ElemSet::EMPTY, |acc, &x| acc.union(colons[x]))
        })
    })
}

/// The S-primary predicate under the default reading.
pub fn is_s_primary(s: &KrasnerStructure, ideal: ElemSet, mult: ElemSet, mode: Mode) -> PredicateOutcome {
    is_s_primary_with(s, ideal, mult, mode, SPrimaryReading::default())
}

pub fn is_s_primary_with(
    s: &KrasnerStructure,
    ideal: ElemSet,
    mult: ElemSet,
    mode: Mode,
    reading: SPrimaryReading,
) -> PredicateOutcome {
    let one = match s_gate(s, ideal, mult, mode) {
        Ok(one) => one,
        Err(out) => return out,
    };
    let witnesses = s_primary_universe(s, one, ideal, reading).intersection(mult);
    existential_outcome(witnesses, || {
        let colons = colon_table(s, one, ideal);
        let radical = radical_powers_with(s, one, ideal);
        candidate_failures(s, ideal, mult, |ms| s_primary_good(s, &colons, radical, ms, reading))
    })
}

/// Both sides of a colon characterization, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonCheck {
    /// The S-predicate on `I`.
    pub left: PredicateOutcome,
    /// `s` in `S` whose colon `(I : s)` satisfies the plain predicate.
    pub right_witnesses: ElemSet,
    /// `None` when the left side is inapplicable.
    pub agree: Option<bool>,
}

fn colon_check(
    s: &KrasnerStructure,
    ideal: ElemSet,
    mult: ElemSet,
    left: PredicateOutcome,
    plain: impl Fn(ElemSet) -> bool,
) -> ColonCheck {
    if left.is_inapplicable() {
        return ColonCheck {
            left,
            right_witnesses: ElemSet::EMPTY,
            agree: None,
        };
    }
    let one = s.one().expect("gate passed");
    let right_witnesses: ElemSet = mult
        .iter()
        .filter(|&a| plain(colon_with(s, one, ideal, a)))
        .collect();
    let agree = Some(left.holds() == !right_witnesses.is_empty());
    ColonCheck {
        left,
        right_witnesses,
        agree,
    }
}

/// `I` is S-prime iff `(I : s)` is a prime hyperideal for some `s` in `S`.
pub fn s_prime_colon_equiv(s: &KrasnerStructure, ideal: ElemSet, mult: ElemSet, mode: Mode) -> ColonCheck {
    let left = is_s_prime(s, ideal, mult, mode);
    colon_check(s, ideal, mult, left, |c| ideals::is_prime(s, c, mode).holds())
}

/// `I` is S-primary iff `(I : s)` is a primary hyperideal for some `s` in `S`.
pub fn s_primary_colon_equiv(
    s: &KrasnerStructure,
    ideal: ElemSet,
    mult: ElemSet,
    mode: Mode,
    reading: SPrimaryReading,
) -> ColonCheck {
    let left = is_s_primary_with(s, ideal, mult, mode, reading);
    colon_check(s, ideal, mult, left, |c| ideals::is_primary(s, c, mode).holds())
}
