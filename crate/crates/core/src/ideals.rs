//! Hyperideals, radicals, and the prime and primary predicates.
//!
//! Universal quantifiers over n-tuples run over sorted n-multisets: `g` is
//! commutative and every tested conclusion is symmetric in the coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::elem::{Elem, ElemSet};
use crate::error::{Error, Result};
use crate::outcome::{Counterexample, PredicateOutcome};
use crate::structure::KrasnerStructure;
use crate::table::{Choices, Multisets, MAX_ARITY};
use crate::Limits;

/// Which hyperideal definition to apply.
///
/// `Strict` requires `(I, f)` to be a subhypergroup, including solvability of
/// `b in f(b_1, .., x, .., b_m)` inside `I`. `Weak` keeps only the zero,
/// closure under `f` and absorption under `g`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Strict,
    #[default]
    Weak,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Weak => "weak",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "weak" => Ok(Mode::Weak),
            other => Err(Error::InvalidParameters(format!("unknown mode {other:?}"))),
        }
    }
}

/// A member set known to be a hyperideal of `structure` under `mode`.
#[derive(Clone, Copy, Debug)]
pub struct Hyperideal<'a> {
    structure: &'a KrasnerStructure,
    members: ElemSet,
    mode: Mode,
}

impl<'a> Hyperideal<'a> {
    /// `None` unless `members` passes [`is_hyperideal`] under `mode`.
    pub fn new(structure: &'a KrasnerStructure, members: ElemSet, mode: Mode) -> Option<Self> {
        is_hyperideal(structure, members, mode).holds().then_some(Hyperideal {
            structure,
            members,
            mode,
        })
    }

    pub fn structure(&self) -> &'a KrasnerStructure {
        self.structure
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_proper(&self) -> bool {
        self.members != self.structure.carrier()
    }
}

/// For every element `a`, the set of values `g` takes with `a` among its
/// arguments. A set `I` absorbs `g` iff `images[a] ⊆ I` for each `a` in `I`.
pub(crate) fn absorption_images(s: &KrasnerStructure) -> Vec<ElemSet> {
    let mut images = vec![ElemSet::EMPTY; s.size()];
    s.g_table().for_each(|ms, &v| {
        for &a in ms {
            images[a].insert(v);
        }
    });
    images
}

fn first_f_escape(s: &KrasnerStructure, members: ElemSet) -> Option<Counterexample> {
    let mut cursor = Multisets::over(members, s.m());
    while let Some(ms) = cursor.next() {
        let v = s.f_sorted(ms);
        if !v.is_subset(members) {
            return Some(Counterexample::FClosure {
                tuple: ms.to_vec(),
                escaped: v.difference(members),
            });
        }
    }
    None
}

fn first_g_escape(s: &KrasnerStructure, members: ElemSet) -> Option<Counterexample> {
    let mut cursor = Multisets::new(s.size(), s.n());
    while let Some(ms) = cursor.next() {
        if ms.iter().any(|&x| members.contains(x)) {
            let v = s.g_sorted(ms);
            if !members.contains(v) {
                return Some(Counterexample::GAbsorption {
                    tuple: ms.to_vec(),
                    image: v,
                });
            }
        }
    }
    None
}

/// Every `(fixed, target)` with `target` not in `f(fixed, x)` for any `x` in
/// `members`; `fixed` ranges over (m-1)-multisets of members, in
/// lexicographic order, then `target` in increasing order.
pub fn solvability_violations(s: &KrasnerStructure, members: ElemSet) -> Vec<(Vec<Elem>, Elem)> {
    let mut out = Vec::new();
    each_solvability_violation(s, members, |fixed, target| {
        out.push((fixed.to_vec(), target));
        true
    });
    out
}

/// Calls `visit` per violation until it returns false.
fn each_solvability_violation(
    s: &KrasnerStructure,
    members: ElemSet,
    mut visit: impl FnMut(&[Elem], Elem) -> bool,
) {
    let m = s.m();
    let mut buf = [0; MAX_ARITY];
    let mut cursor = Multisets::over(members, m - 1);
    while let Some(fixed) = cursor.next() {
        buf[..m - 1].copy_from_slice(fixed);
        let mut reachable = ElemSet::EMPTY;
        for x in members {
            buf[m - 1] = x;
            reachable = reachable.union(s.f(&buf[..m]));
        }
        for target in members.difference(reachable) {
            if !visit(fixed, target) {
                return;
            }
        }
    }
}

fn first_solvability_violation(s: &KrasnerStructure, members: ElemSet) -> Option<Counterexample> {
    let mut found = None;
    each_solvability_violation(s, members, |fixed, target| {
        found = Some(Counterexample::Solvability {
            fixed: fixed.to_vec(),
            target,
        });
        false
    });
    found
}

/// First reason `members` is not a hyperideal, checking in order: zero,
/// closure under `f`, solvability (strict only), absorption under `g`.
pub fn hyperideal_violation(
    s: &KrasnerStructure,
    members: ElemSet,
    mode: Mode,
) -> Option<Counterexample> {
    if !members.contains(s.zero()) {
        return Some(Counterexample::ZeroMissing);
    }
    first_f_escape(s, members)
        .or_else(|| match mode {
            Mode::Strict => first_solvability_violation(s, members),
            Mode::Weak => None,
        })
        .or_else(|| first_g_escape(s, members))
}

pub fn is_hyperideal(s: &KrasnerStructure, members: ElemSet, mode: Mode) -> PredicateOutcome {
    if !members.is_subset(s.carrier()) {
        return PredicateOutcome::inapplicable("set is not inside the carrier");
    }
    PredicateOutcome::from_check(hyperideal_violation(s, members, mode))
}

/// Fast membership test used by the enumerations.
pub(crate) struct IdealTester<'a> {
    s: &'a KrasnerStructure,
    images: Vec<ElemSet>,
    mode: Mode,
}

impl<'a> IdealTester<'a> {
    pub(crate) fn new(s: &'a KrasnerStructure, mode: Mode) -> Self {
        IdealTester {
            s,
            images: absorption_images(s),
            mode,
        }
    }

    pub(crate) fn test(&self, members: ElemSet) -> bool {
        members.contains(self.s.zero())
            && members.iter().all(|a| self.images[a].is_subset(members))
            && first_f_escape(self.s, members).is_none()
            && (self.mode == Mode::Weak || first_solvability_violation(self.s, members).is_none())
    }
}

pub(crate) fn check_enumeration_bound(s: &KrasnerStructure, limits: &Limits) -> Result<()> {
    if s.size() > limits.max_enumeration_size {
        Err(Error::BoundExceeded {
            size: s.size(),
            bound: limits.max_enumeration_size,
        })
    } else {
        Ok(())
    }
}

/// Every subset containing the zero, in increasing mask order.
pub(crate) fn subsets_with(size: usize, must: ElemSet) -> impl Iterator<Item = ElemSet> {
    let full = ElemSet::full(size).bits();
    let must = must.bits();
    let free = full & !must;
    // Walk the submasks of `free` upwards.
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == free { None } else { Some(((cur | !free).wrapping_add(1)) & free) };
        Some(ElemSet::from_bits(cur | must))
    })
}

/// All hyperideals under `mode`, ordered by bit mask (so `{0,2}` precedes
/// `{0,1,2}`).
pub fn enumerate_hyperideals(s: &KrasnerStructure, mode: Mode, proper_only: bool) -> Result<Vec<ElemSet>> {
    enumerate_hyperideals_with(s, mode, proper_only, &Limits::default())
}

pub fn enumerate_hyperideals_with(
    s: &KrasnerStructure,
    mode: Mode,
    proper_only: bool,
    limits: &Limits,
) -> Result<Vec<ElemSet>> {
    check_enumeration_bound(s, limits)?;
    let tester = IdealTester::new(s, mode);
    let full = s.carrier();
    Ok(subsets_with(s.size(), ElemSet::singleton(s.zero()))
        .filter(|&c| !(proper_only && c == full))
        .filter(|&c| tester.test(c))
        .collect())
}

fn require_one(s: &KrasnerStructure) -> Result<Elem> {
    s.one().ok_or(Error::MissingIdentity)
}

fn require_subset(s: &KrasnerStructure, set: ElemSet) -> Result<()> {
    match set.difference(s.carrier()).first() {
        Some(index) => Err(Error::IndexOutOfRange { index, size: s.size() }),
        None => Ok(()),
    }
}

/// `<x> = { g(r, x, 1^(n-2)) : r in R }`.
pub fn generated_hyperideal(s: &KrasnerStructure, x: Elem) -> Result<ElemSet> {
    let one = require_one(s)?;
    require_subset(s, ElemSet::singleton(x))?;
    Ok((0..s.size()).map(|r| s.mul_with(one, r, x)).collect())
}

/// `(I : a) = { r : g(r, a, 1^(n-2)) in I }`.
pub fn colon(s: &KrasnerStructure, ideal: ElemSet, a: Elem) -> Result<ElemSet> {
    let one = require_one(s)?;
    require_subset(s, ideal.with(a))?;
    Ok(colon_with(s, one, ideal, a))
}

pub(crate) fn colon_with(s: &KrasnerStructure, one: Elem, ideal: ElemSet, a: Elem) -> ElemSet {
    (0..s.size())
        .filter(|&r| ideal.contains(s.mul_with(one, r, a)))
        .collect()
}

/// Elements with a power in `I`: `g(x^(t), 1^(n-t))` for `t <= n`, or the
/// iterated `g_(l)(x, .., x)`, followed until the sequence repeats.
pub fn radical_powers(s: &KrasnerStructure, ideal: ElemSet) -> Result<ElemSet> {
    let one = require_one(s)?;
    require_subset(s, ideal)?;
    Ok(radical_powers_with(s, one, ideal))
}

pub(crate) fn radical_powers_with(s: &KrasnerStructure, one: Elem, ideal: ElemSet) -> ElemSet {
    (0..s.size())
        .filter(|&x| has_power_in(s, one, ideal, x))
        .collect()
}

fn has_power_in(s: &KrasnerStructure, one: Elem, ideal: ElemSet, x: Elem) -> bool {
    let n = s.n();
    if (1..=n).any(|t| ideal.contains(s.power_with(one, x, t))) {
        return true;
    }
    // g_(1)(x^n), g_(2)(x^(2n-1)), ..: each term is g(previous, x^(n-1)).
    let mut buf = [x; MAX_ARITY];
    let mut p = s.power_with(one, x, n);
    let mut seen = ElemSet::EMPTY;
    while !seen.contains(p) {
        if ideal.contains(p) {
            return true;
        }
        seen.insert(p);
        buf[0] = p;
        p = s.g(&buf[..n]);
    }
    false
}

/// Intersection of the proper hyperideals (under `mode`) that contain `I` and
/// are prime; the whole carrier when there are none.
pub fn radical_primes(s: &KrasnerStructure, ideal: ElemSet, mode: Mode) -> Result<ElemSet> {
    radical_primes_with(s, ideal, mode, &Limits::default())
}

pub fn radical_primes_with(
    s: &KrasnerStructure,
    ideal: ElemSet,
    mode: Mode,
    limits: &Limits,
) -> Result<ElemSet> {
    require_subset(s, ideal)?;
    let primes = prime_hyperideals_with(s, mode, limits)?;
    Ok(primes
        .into_iter()
        .filter(|p| ideal.is_subset(*p))
        .fold(s.carrier(), ElemSet::intersection))
}

/// Proper hyperideals under `mode` that satisfy the elementwise prime test.
pub fn prime_hyperideals_with(s: &KrasnerStructure, mode: Mode, limits: &Limits) -> Result<Vec<ElemSet>> {
    Ok(enumerate_hyperideals_with(s, mode, true, limits)?
        .into_iter()
        .filter(|&p| first_prime_violation(s, p).is_none())
        .collect())
}

/// Inapplicable outcome unless `I` is a proper hyperideal under `mode`.
pub(crate) fn proper_gate(s: &KrasnerStructure, ideal: ElemSet, mode: Mode) -> Option<PredicateOutcome> {
    if !ideal.is_subset(s.carrier()) {
        return Some(PredicateOutcome::inapplicable("set is not inside the carrier"));
    }
    if ideal == s.carrier() {
        return Some(PredicateOutcome::inapplicable("the hyperideal is the whole carrier"));
    }
    hyperideal_gate(s, ideal, mode)
}

pub(crate) fn hyperideal_gate(s: &KrasnerStructure, ideal: ElemSet, mode: Mode) -> Option<PredicateOutcome> {
    if !ideal.is_subset(s.carrier()) {
        return Some(PredicateOutcome::inapplicable("set is not inside the carrier"));
    }
    hyperideal_violation(s, ideal, mode)
        .map(|_| PredicateOutcome::inapplicable(format!("not a {mode} hyperideal")))
}

fn first_prime_violation(s: &KrasnerStructure, ideal: ElemSet) -> Option<Vec<Elem>> {
    let mut cursor = Multisets::over(s.carrier().difference(ideal), s.n());
    while let Some(ms) = cursor.next() {
        if ideal.contains(s.g_sorted(ms)) {
            return Some(ms.to_vec());
        }
    }
    None
}

/// Every n-multiset with product in `I` and no coordinate in `I`.
pub fn prime_violations(s: &KrasnerStructure, ideal: ElemSet) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut cursor = Multisets::over(s.carrier().difference(ideal), s.n());
    while let Some(ms) = cursor.next() {
        if ideal.contains(s.g_sorted(ms)) {
            out.push(ms.to_vec());
        }
    }
    out
}

/// Elementwise primeness: `g(x_1..x_n) in I` forces some `x_i in I`.
pub fn is_prime(s: &KrasnerStructure, ideal: ElemSet, mode: Mode) -> PredicateOutcome {
    if let Some(out) = proper_gate(s, ideal, mode) {
        return out;
    }
    PredicateOutcome::from_check(first_prime_violation(s, ideal).map(|tuple| {
        let image = s.g_sorted(&tuple);
        Counterexample::Product { tuple, image }
    }))
}

/// Ideal-wise primeness: for hyperideals `U_1..U_n` (under `mode`) with
/// `g(U_1, .., U_n) ⊆ I`, some `U_i ⊆ I`.
pub fn is_prime_idealwise(s: &KrasnerStructure, ideal: ElemSet, mode: Mode) -> Result<PredicateOutcome> {
    is_prime_idealwise_with(s, ideal, mode, &Limits::default())
}

pub fn is_prime_idealwise_with(
    s: &KrasnerStructure,
    ideal: ElemSet,
    mode: Mode,
    limits: &Limits,
) -> Result<PredicateOutcome> {
    if let Some(out) = proper_gate(s, ideal, mode) {
        return Ok(out);
    }
    let outside: Vec<ElemSet> = enumerate_hyperideals_with(s, mode, false, limits)?
        .into_iter()
        .filter(|u| !u.is_subset(ideal))
        .collect();
    Ok(PredicateOutcome::from_check(
        first_ideal_tuple_into(s, &outside, ideal).map(|ideals| Counterexample::Ideals { ideals }),
    ))
}

/// First n-multiset of `candidates` whose elementwise product lies in `target`.
pub(crate) fn first_ideal_tuple_into(
    s: &KrasnerStructure,
    candidates: &[ElemSet],
    target: ElemSet,
) -> Option<Vec<ElemSet>> {
    let mut cursor = Multisets::new(candidates.len(), s.n());
    while let Some(ms) = cursor.next() {
        let sets: Vec<ElemSet> = ms.iter().map(|&i| candidates[i]).collect();
        if g_image_within(s, &sets, target) {
            return Some(sets);
        }
    }
    None
}

/// Whether `g(A_1, .., A_n) ⊆ target`, stopping at the first escape.
pub(crate) fn g_image_within(s: &KrasnerStructure, sets: &[ElemSet], target: ElemSet) -> bool {
    let mut choices = Choices::new(sets);
    while let Some(args) = choices.next() {
        if !target.contains(s.g(args)) {
            return false;
        }
    }
    true
}

/// Primary: whenever `g(x) in I`, every coordinate `x_i` outside `I` has
/// `g(x with x_i replaced by 1)` in the radical of `I`.
pub fn is_primary(s: &KrasnerStructure, ideal: ElemSet, mode: Mode) -> PredicateOutcome {
    let Some(one) = s.one() else {
        return PredicateOutcome::inapplicable("no designated scalar identity");
    };
    if let Some(out) = proper_gate(s, ideal, mode) {
        return out;
    }
    let radical = radical_powers_with(s, one, ideal);
    PredicateOutcome::from_check(first_primary_violation(s, one, ideal, radical).map(|tuple| {
        let image = s.g_sorted(&tuple);
        Counterexample::Product { tuple, image }
    }))
}

pub(crate) fn first_primary_violation(
    s: &KrasnerStructure,
    one: Elem,
    ideal: ElemSet,
    radical: ElemSet,
) -> Option<Vec<Elem>> {
    let mut cursor = Multisets::new(s.size(), s.n());
    while let Some(ms) = cursor.next() {
        if !ideal.contains(s.g_sorted(ms)) {
            continue;
        }
        let bad = (0..ms.len())
            .any(|i| !ideal.contains(ms[i]) && !radical.contains(s.g_replacing(ms, i, one)));
        if bad {
            return Some(ms.to_vec());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_zk_ring, k24, k33};

    fn set<const K: usize>(xs: [Elem; K]) -> ElemSet {
        ElemSet::from(xs)
    }

    #[test]
    fn modes_differ_on_the_ternary_example() {
        let s = k33();
        assert!(is_hyperideal(&s, set([0, 2]), Mode::Weak).holds());
        let strict = is_hyperideal(&s, set([0, 2]), Mode::Strict);
        assert!(strict.failed());
        assert!(matches!(
            strict.counterexample,
            Some(Counterexample::Solvability { .. })
        ));
        assert!(solvability_violations(&s, set([0, 2])).contains(&(vec![2, 2], 0)));
        assert!(is_hyperideal(&k24(), set([0, 1]), Mode::Weak).holds());
    }

    #[test]
    fn enumeration_orders_by_mask() {
        let s = k33();
        assert_eq!(
            enumerate_hyperideals(&s, Mode::Weak, false).unwrap(),
            vec![set([0]), set([0, 2]), set([0, 1, 2])]
        );
        assert_eq!(
            enumerate_hyperideals(&s, Mode::Strict, false).unwrap(),
            vec![set([0]), set([0, 1, 2])]
        );
        assert_eq!(
            enumerate_hyperideals(&k24(), Mode::Weak, false).unwrap(),
            vec![set([0]), set([0, 1]), set([0, 2]), set([0, 1, 2, 3])]
        );
    }

    #[test]
    fn submask_walk_is_complete() {
        let all: Vec<ElemSet> = subsets_with(4, set([1])).collect();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|c| c.contains(1)));
        assert_eq!(subsets_with(1, set([0])).count(), 1);
    }

    #[test]
    fn generated_and_colon() {
        let s = k33();
        assert_eq!(generated_hyperideal(&s, 2).unwrap(), set([0, 2]));
        assert_eq!(generated_hyperideal(&s, 0).unwrap(), set([0]));
        assert_eq!(colon(&s, set([0, 2]), 1).unwrap(), set([0, 2]));
        assert_eq!(colon(&s, set([0, 2]), 2).unwrap(), set([0, 1, 2]));
        let z4 = build_zk_ring(4, 2, 2).unwrap();
        assert_eq!(generated_hyperideal(&z4, 2).unwrap(), set([0, 2]));
        let bare = z4.clone().with_one(None).unwrap();
        assert!(matches!(colon(&bare, set([0]), 1), Err(Error::MissingIdentity)));
    }

    #[test]
    fn radicals() {
        let z4 = build_zk_ring(4, 2, 2).unwrap();
        assert_eq!(radical_powers(&z4, set([0])).unwrap(), set([0, 2]));
        assert_eq!(radical_primes(&z4, set([0]), Mode::Weak).unwrap(), set([0, 2]));
        let s = k33();
        assert_eq!(radical_powers(&s, set([0])).unwrap(), set([0]));
        assert_eq!(radical_primes(&s, set([0]), Mode::Weak).unwrap(), set([0]));
        assert_eq!(radical_powers(&s, s.carrier()).unwrap(), s.carrier());
    }

    #[test]
    fn prime_and_primary() {
        let s = k33();
        assert!(is_prime(&s, set([0]), Mode::Weak).holds());
        assert!(is_prime(&s, set([0, 2]), Mode::Weak).holds());
        assert!(is_prime(&s, s.carrier(), Mode::Weak).is_inapplicable());
        let k = k24();
        let p = is_prime(&k, set([0]), Mode::Weak);
        assert!(p.failed());
        assert!(prime_violations(&k, set([0])).contains(&vec![1, 2, 2, 3]));

        let z4 = build_zk_ring(4, 2, 2).unwrap();
        assert!(is_primary(&z4, set([0]), Mode::Weak).holds());
        let z6 = build_zk_ring(6, 2, 2).unwrap();
        let q = is_primary(&z6, set([0]), Mode::Weak);
        assert_eq!(
            q.counterexample,
            Some(Counterexample::Product { tuple: vec![2, 3], image: 0 })
        );
    }

    #[test]
    fn idealwise_agrees_on_small_rings() {
        for k in 1..=8 {
            let z = build_zk_ring(k, 2, 2).unwrap();
            for i in enumerate_hyperideals(&z, Mode::Weak, true).unwrap() {
                let a = is_prime(&z, i, Mode::Weak).verdict;
                let b = is_prime_idealwise(&z, i, Mode::Weak).unwrap().verdict;
                assert_eq!(a, b, "z{k} {i}");
            }
        }
        let k = k24();
        assert!(is_prime_idealwise(&k, set([0]), Mode::Weak).unwrap().failed());
    }
}
