//! Exhaustive audit of the S-prime and S-primary theorems over a corpus.
//!
//! A structure is *eligible* when it is small enough to verify, has a
//! designated identity, and passes every axiom including the identity check.
//! Theorems are checked on eligible structures; a failed conclusion there is
//! a violation. Structures with an identity that fail some axiom are still
//! run, but only as exploration: their discrepancies are reported as findings
//! and never affect the status.
//!
//! Instances are evaluated in parallel and merged in corpus order, so the
//! report is deterministic.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::verify_axioms_with;
use crate::constructions::{
    enumerate_subhyperrings_with, lift_to_quotient, pair_index, preimage_ideal, product, product_set, quotient,
    restrict_ideal, search_homomorphisms, Homomorphism,
};
use crate::elem::{Elem, ElemSet};
use crate::error::{Error, Result};
use crate::ideals::{
    colon_with, enumerate_hyperideals_with, first_ideal_tuple_into, hyperideal_violation, is_prime,
    is_prime_idealwise_with, is_primary, radical_powers_with, Mode,
};
use crate::s_theory::{
    enumerate_multiplicative_subsets_with, is_multiplicative, is_s_prime, is_s_primary_with, s_primary_colon_equiv,
    s_prime_colon_equiv, s_prime_universe, s_primary_universe, SPrimaryReading,
};
use crate::structure::KrasnerStructure;
use crate::table::Multisets;
use crate::Limits;

/// At most this many violations and findings are listed per theorem; the
/// totals are always exact.
pub const LISTED_INSTANCES: usize = 25;

/// The audited statements, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    SPrimeColon,
    SPrimeExtension,
    SPrimeCovering,
    SPrimeIdealwise,
    PrimeIdealwise,
    SPrimeRadical,
    SPrimeRadicalIntersection,
    SPrimePreimage,
    SPrimeQuotient,
    SPrimeProduct,
    SPrimeProductFactor,
    SPrimaryUnits,
    SPrimaryColon,
    SPrimaryRadical,
    SPrimaryIntersection,
    SPrimaryProductIdeal,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::SPrimeColon,
        TheoremId::SPrimeExtension,
        TheoremId::SPrimeCovering,
        TheoremId::SPrimeIdealwise,
        TheoremId::PrimeIdealwise,
        TheoremId::SPrimeRadical,
        TheoremId::SPrimeRadicalIntersection,
        TheoremId::SPrimePreimage,
        TheoremId::SPrimeQuotient,
        TheoremId::SPrimeProduct,
        TheoremId::SPrimeProductFactor,
        TheoremId::SPrimaryUnits,
        TheoremId::SPrimaryColon,
        TheoremId::SPrimaryRadical,
        TheoremId::SPrimaryIntersection,
        TheoremId::SPrimaryProductIdeal,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            TheoremId::SPrimeColon => "s-prime-colon",
            TheoremId::SPrimeExtension => "s-prime-extension",
            TheoremId::SPrimeCovering => "s-prime-covering",
            TheoremId::SPrimeIdealwise => "s-prime-idealwise",
            TheoremId::PrimeIdealwise => "prime-idealwise",
            TheoremId::SPrimeRadical => "s-prime-radical",
            TheoremId::SPrimeRadicalIntersection => "s-prime-radical-intersection",
            TheoremId::SPrimePreimage => "s-prime-preimage",
            TheoremId::SPrimeQuotient => "s-prime-quotient",
            TheoremId::SPrimeProduct => "s-prime-product",
            TheoremId::SPrimeProductFactor => "s-prime-product-factor",
            TheoremId::SPrimaryUnits => "s-primary-units",
            TheoremId::SPrimaryColon => "s-primary-colon",
            TheoremId::SPrimaryRadical => "s-primary-radical",
            TheoremId::SPrimaryIntersection => "s-primary-intersection",
            TheoremId::SPrimaryProductIdeal => "s-primary-product-ideal",
        }
    }

    /// One-line statement of what is checked.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::SPrimeColon => "I is S-prime iff (I:s) is a prime hyperideal for some s in S",
            TheoremId::SPrimeExtension => "I S-prime in G and S inside a subhyperring R give I ∩ R S-prime in R",
            TheoremId::SPrimeCovering => {
                "I inside a union of n S-prime hyperideals P_i gives g(s, I, 1^(n-2)) ⊆ P_i for some s and i"
            }
            TheoremId::SPrimeIdealwise => {
                "I is S-prime iff some s in S has g(s, I_i, 1^(n-2)) ⊆ I for some i whenever g(I_1..I_n) ⊆ I"
            }
            TheoremId::PrimeIdealwise => "elementwise and ideal-wise primeness agree on proper hyperideals",
            TheoremId::SPrimeRadical => "J ⊆ I with I S-prime gives g(s, rad J, 1^(n-2)) ⊆ I for some s in S",
            TheoremId::SPrimeRadicalIntersection => {
                "n S-prime hyperideals give g(s, rad ∩I_i, 1^(n-2)) ⊆ ∩I_i for some s in S"
            }
            TheoremId::SPrimePreimage => "I_2 h(S)-prime with 0 outside h(S) gives h^-1(I_2) S-prime",
            TheoremId::SPrimeQuotient => "J ⊊ I with I S-prime gives I/J S̄-prime in R/J",
            TheoremId::SPrimeProduct => "I_1 is S_1-prime iff I_1 × R_2 is (S_1 × S_2)-prime",
            TheoremId::SPrimeProductFactor => "I_2 S_2-prime gives R_1 × I_2 (S_1 × S_2)-prime",
            TheoremId::SPrimaryUnits => "for S inside the units, S-primary iff primary",
            TheoremId::SPrimaryColon => "I is S-primary iff (I:s) is a primary hyperideal for some s in S",
            TheoremId::SPrimaryRadical => "I S-primary gives rad I S-prime",
            TheoremId::SPrimaryIntersection => {
                "n S-primary hyperideals with the same S-prime radical P meet in an S-primary hyperideal with radical P"
            }
            TheoremId::SPrimaryProductIdeal => {
                "I_1..I_(n-1) meeting S and I S-primary give the hyperideal generated by g(I_1..I_(n-1), I) S-primary"
            }
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.slug() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown theorem {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AuditStatus {
    Verified,
    HypothesisNotMet,
    Violated,
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditStatus::Verified => "Verified",
            AuditStatus::HypothesisNotMet => "HypothesisNotMet",
            AuditStatus::Violated => "Violated",
        })
    }
}

/// One concrete instance: the structures involved and what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub structures: Vec<String>,
    pub detail: String,
}

/// How the shared hypotheses were met across the corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub mode: Mode,
    pub reading: SPrimaryReading,
    /// Structures (or pairs) with a designated identity that were examined.
    pub with_identity: usize,
    /// Of those, the ones passing every axiom.
    pub eligible: usize,
    /// Candidate instances dropped because `I` and `S` meet.
    pub disjointness_skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub theorem: TheoremId,
    pub statement: String,
    pub hypotheses: Hypotheses,
    /// Instances on eligible structures where the hypotheses held.
    pub instantiations: usize,
    pub violation_count: usize,
    pub violations: Vec<Instance>,
    /// Instances on structures that fail some axiom.
    pub exploratory_instantiations: usize,
    pub finding_count: usize,
    pub findings: Vec<Instance>,
    pub status: AuditStatus,
}

/// Why a structure is or is not eligible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub name: String,
    pub size: usize,
    pub m: usize,
    pub n: usize,
    pub eligible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub mode: Mode,
    pub reading: SPrimaryReading,
    pub structures: Vec<StructureSummary>,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn entry(&self, theorem: TheoremId) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.theorem == theorem)
    }

    pub fn violated(&self) -> bool {
        self.entries.iter().any(|e| e.status == AuditStatus::Violated)
    }
}

// ------------------------------------------------------------ preparation

/// Everything the checks share about one structure.
struct Prepared<'a> {
    s: &'a KrasnerStructure,
    one: Elem,
    eligible: bool,
    mode: Mode,
    reading: SPrimaryReading,
    limits: Limits,
    /// Hyperideals under the audit mode, in mask order.
    ideals: Vec<ElemSet>,
    /// Zero-free multiplicative subsets.
    mult: Vec<ElemSet>,
    prime_universe: Vec<ElemSet>,
    primary_universe: Vec<ElemSet>,
    radicals: Vec<ElemSet>,
}

impl<'a> Prepared<'a> {
    fn new(s: &'a KrasnerStructure, eligible: bool, mode: Mode, reading: SPrimaryReading, limits: &Limits) -> Result<Self> {
        let one = s.one().ok_or(Error::MissingIdentity)?;
        let ideals = enumerate_hyperideals_with(s, mode, false, limits)?;
        let mult = enumerate_multiplicative_subsets_with(s, true, limits)?;
        let prime_universe = ideals.iter().map(|&i| s_prime_universe(s, one, i)).collect();
        let primary_universe = ideals.iter().map(|&i| s_primary_universe(s, one, i, reading)).collect();
        let radicals = ideals.iter().map(|&i| radical_powers_with(s, one, i)).collect();
        Ok(Prepared {
            s,
            one,
            eligible,
            mode,
            reading,
            limits: *limits,
            ideals,
            mult,
            prime_universe,
            primary_universe,
            radicals,
        })
    }

    fn name(&self) -> String {
        self.s.name().to_string()
    }

    fn set(&self, x: ElemSet) -> String {
        self.s.fmt_set(x)
    }

    fn colon(&self, ideal: ElemSet, a: Elem) -> ElemSet {
        colon_with(self.s, self.one, ideal, a)
    }

    /// `s` in `S` with `A ⊆ (I : s)`, that is `g(s, A, 1^(n-2)) ⊆ I`.
    fn multipliers_into(&self, mult: ElemSet, a: ElemSet, ideal: ElemSet) -> ElemSet {
        mult.iter().filter(|&x| a.is_subset(self.colon(ideal, x))).collect()
    }

    /// `(index, I)` of the S-prime hyperideals for `S`.
    fn s_primes(&self, mult: ElemSet) -> Vec<usize> {
        (0..self.ideals.len())
            .filter(|&i| self.ideals[i].is_disjoint(mult) && !self.prime_universe[i].is_disjoint(mult))
            .collect()
    }

    fn s_primary(&self, i: usize, mult: ElemSet) -> bool {
        self.ideals[i].is_disjoint(mult) && !self.primary_universe[i].is_disjoint(mult)
    }

    /// Smallest hyperideal (under the mode) containing `set`.
    fn closure(&self, set: ElemSet) -> ElemSet {
        self.ideals
            .iter()
            .filter(|i| set.is_subset(**i))
            .fold(self.s.carrier(), |acc, &i| acc.intersection(i))
    }
}

/// Outcome of running one theorem on one structure or pair.
#[derive(Default)]
struct Tally {
    instantiations: usize,
    skipped: usize,
    discrepancies: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.instantiations += 1;
        if !ok {
            self.discrepancies.push(detail());
        }
    }
}

// ------------------------------------------------------------------ checks

fn colon_equivalence(p: &Prepared<'_>, primary: bool) -> Tally {
    let mut t = Tally::default();
    for &ideal in &p.ideals {
        for &mult in &p.mult {
            let check = if primary {
                s_primary_colon_equiv(p.s, ideal, mult, p.mode, p.reading)
            } else {
                s_prime_colon_equiv(p.s, ideal, mult, p.mode)
            };
            match check.agree {
                None => t.skipped += 1,
                Some(ok) => t.check(ok, || {
                    format!(
                        "I={} S={}: predicate {}, colon witnesses {}",
                        p.set(ideal),
                        p.set(mult),
                        check.left.verdict,
                        p.set(check.right_witnesses)
                    )
                }),
            }
        }
    }
    t
}

fn extension(p: &Prepared<'_>) -> Result<Tally> {
    let mut t = Tally::default();
    for e in enumerate_subhyperrings_with(p.s, &p.limits)? {
        let sub = &e.structure;
        if sub.one().is_none() || !verify_axioms_with(sub, true, &p.limits)?.passes() {
            continue;
        }
        for (k, &ideal) in p.ideals.iter().enumerate() {
            for &mult in p.mult.iter().filter(|m| m.is_subset(e.members)) {
                if !ideal.is_disjoint(mult) {
                    t.skipped += 1;
                    continue;
                }
                if p.prime_universe[k].is_disjoint(mult) {
                    continue;
                }
                let (meet, as_ideal) = restrict_ideal(&e, ideal, p.mode);
                let out = is_s_prime(sub, e.to_local(meet), e.to_local(mult), p.mode);
                t.check(as_ideal.holds() && out.holds(), || {
                    format!(
                        "R={} I={} S={}: I ∩ R={} is {}",
                        p.set(e.members),
                        p.set(ideal),
                        p.set(mult),
                        p.set(meet),
                        if as_ideal.holds() { out.verdict.to_string() } else { "not a hyperideal".into() }
                    )
                });
            }
        }
    }
    Ok(t)
}

fn covering(p: &Prepared<'_>) -> Tally {
    let mut t = Tally::default();
    let n = p.s.n();
    for &mult in &p.mult {
        let primes: Vec<ElemSet> = p.s_primes(mult).into_iter().map(|i| p.ideals[i]).collect();
        if primes.is_empty() {
            continue;
        }
        for &ideal in &p.ideals {
            let mut cursor = Multisets::new(primes.len(), n);
            while let Some(ms) = cursor.next() {
                let cover = ms.iter().fold(ElemSet::EMPTY, |acc, &i| acc.union(primes[i]));
                if !ideal.is_subset(cover) {
                    continue;
                }
                let ok = ms.iter().any(|&i| !p.multipliers_into(mult, ideal, primes[i]).is_empty());
                t.check(ok, || {
                    let covers: Vec<String> = ms.iter().map(|&i| p.set(primes[i])).collect();
                    format!("I={} S={} covered by {}", p.set(ideal), p.set(mult), covers.join(", "))
                });
            }
        }
    }
    t
}

fn s_prime_idealwise(p: &Prepared<'_>) -> Tally {
    let mut t = Tally::default();
    for (k, &ideal) in p.ideals.iter().enumerate() {
        for &mult in &p.mult {
            if !ideal.is_disjoint(mult) {
                t.skipped += 1;
                continue;
            }
            let left = !p.prime_universe[k].is_disjoint(mult);
            let right: ElemSet = mult
                .iter()
                .filter(|&x| {
                    let c = p.colon(ideal, x);
                    let bad: Vec<ElemSet> = p.ideals.iter().copied().filter(|u| !u.is_subset(c)).collect();
                    first_ideal_tuple_into(p.s, &bad, ideal).is_none()
                })
                .collect();
            t.check(left == !right.is_empty(), || {
                format!(
                    "I={} S={}: elementwise {}, ideal-wise witnesses {}",
                    p.set(ideal),
                    p.set(mult),
                    left,
                    p.set(right)
                )
            });
        }
    }
    t
}

fn prime_idealwise(p: &Prepared<'_>) -> Result<Tally> {
    let mut t = Tally::default();
    for &ideal in p.ideals.iter().filter(|&&i| i != p.s.carrier()) {
        let left = is_prime(p.s, ideal, p.mode);
        let right = is_prime_idealwise_with(p.s, ideal, p.mode, &p.limits)?;
        t.check(left.verdict == right.verdict, || {
            format!("I={}: elementwise {}, ideal-wise {}", p.set(ideal), left.verdict, right.verdict)
        });
    }
    Ok(t)
}

fn radical(p: &Prepared<'_>) -> Tally {
    let mut t = Tally::default();
    for &mult in &p.mult {
        for i in p.s_primes(mult) {
            let ideal = p.ideals[i];
            for (j, &sub) in p.ideals.iter().enumerate() {
                if !sub.is_subset(ideal) {
                    continue;
                }
                let rad = p.radicals[j];
                let found = p.multipliers_into(mult, rad, ideal);
                t.check(!found.is_empty(), || {
                    format!("I={} S={} J={}: no s maps rad J={} into I", p.set(ideal), p.set(mult), p.set(sub), p.set(rad))
                });
            }
        }
    }
    t
}

fn radical_intersection(p: &Prepared<'_>) -> Tally {
    let mut t = Tally::default();
    for &mult in &p.mult {
        let primes = p.s_primes(mult);
        let mut cursor = Multisets::new(primes.len(), p.s.n());
        while let Some(ms) = cursor.next() {
            let meet = ms.iter().fold(p.s.carrier(), |acc, &i| acc.intersection(p.ideals[primes[i]]));
            let rad = radical_powers_with(p.s, p.one, meet);
            let found = p.multipliers_into(mult, rad, meet);
            t.check(!found.is_empty(), || {
                let parts: Vec<String> = ms.iter().map(|&i| p.set(p.ideals[primes[i]])).collect();
                format!("S={} ideals {}: no s maps rad={} into {}", p.set(mult), parts.join(", "), p.set(rad), p.set(meet))
            });
        }
    }
    t
}

fn preimage(p1: &Prepared<'_>, p2: &Prepared<'_>) -> Tally {
    let mut t = Tally::default();
    for map in search_homomorphisms(p1.s, p2.s) {
        let h = Homomorphism { source: p1.s, target: p2.s, map };
        for &mult in &p1.mult {
            let image = h.image(mult);
            if image.contains(p2.s.zero()) || !is_multiplicative(p2.s, image).holds() {
                continue;
            }
            for (k, &i2) in p2.ideals.iter().enumerate() {
                if !i2.is_disjoint(image) {
                    t.skipped += 1;
                    continue;
                }
                if p2.prime_universe[k].is_disjoint(image) {
                    continue;
                }
                let pre = preimage_ideal(&h, i2);
                let out = is_s_prime(p1.s, pre, mult, p1.mode);
                t.check(out.holds(), || {
                    format!(
                        "h={:?} S={} I2={}: preimage {} is {}",
                        h.map,
                        p1.set(mult),
                        p2.set(i2),
                        p1.set(pre),
                        out.verdict
                    )
                });
            }
        }
    }
    t
}

fn quotients(p: &Prepared<'_>) -> Result<Tally> {
    let mut t = Tally::default();
    for &sub in &p.ideals {
        let Ok(q) = quotient(p.s, sub) else { continue };
        if !q.report.passes() {
            continue;
        }
        for (k, &ideal) in p.ideals.iter().enumerate() {
            if ideal == sub || !sub.is_subset(ideal) {
                continue;
            }
            for &mult in &p.mult {
                if !sub.is_disjoint(mult) || !ideal.is_disjoint(mult) {
                    t.skipped += 1;
                    continue;
                }
                if p.prime_universe[k].is_disjoint(mult) {
                    continue;
                }
                let bar = lift_to_quotient(&q, mult);
                let upper = lift_to_quotient(&q, ideal);
                if !upper.is_disjoint(bar) {
                    t.skipped += 1;
                    continue;
                }
                let out = is_s_prime(&q.quotient, upper, bar, p.mode);
                t.check(out.holds(), || {
                    format!(
                        "J={} I={} S={}: I/J is {}{}",
                        p.set(sub),
                        p.set(ideal),
                        p.set(mult),
                        out.verdict,
                        out.reason.as_deref().map(|r| format!(" ({r})")).unwrap_or_default()
                    )
                });
            }
        }
    }
    Ok(t)
}

/// Both product checks share the product structure and, per lifted ideal,
/// one witness universe.
fn products(p1: &Prepared<'_>, p2: &Prepared<'_>, factor: bool) -> Result<Tally> {
    let mut t = Tally::default();
    let prod = product(p1.s, p2.s)?;
    let one = prod.one().expect("both factors have an identity");
    let n2 = p2.s.size();
    // (ideal of the factor, its S-prime universe there, the lifted ideal)
    let cases: Vec<(ElemSet, ElemSet, ElemSet)> = if factor {
        p2.ideals
            .iter()
            .zip(&p2.prime_universe)
            .map(|(&i, &u)| (i, u, product_set(p1.s.carrier(), i, n2)))
            .collect()
    } else {
        p1.ideals
            .iter()
            .zip(&p1.prime_universe)
            .map(|(&i, &u)| (i, u, product_set(i, p2.s.carrier(), n2)))
            .collect()
    };
    for (ideal, universe, lifted) in cases {
        if ideal_is_everything(ideal, if factor { p2.s } else { p1.s }) {
            continue;
        }
        let lifted_ok = hyperideal_violation(&prod, lifted, p1.mode).is_none();
        let lifted_universe = s_prime_universe(&prod, one, lifted);
        for &m1 in &p1.mult {
            for &m2 in &p2.mult {
                let own = if factor { m2 } else { m1 };
                if !ideal.is_disjoint(own) {
                    t.skipped += 1;
                    continue;
                }
                let left = !universe.is_disjoint(own);
                if factor && !left {
                    continue;
                }
                let mult = product_set(m1, m2, n2);
                let right = lifted_ok && !lifted_universe.is_disjoint(mult);
                t.check(left == right, || {
                    format!(
                        "{}={} S1={} S2={}: factor {}, lifted {}{}",
                        if factor { "I2" } else { "I1" },
                        if factor { p2.set(ideal) } else { p1.set(ideal) },
                        p1.set(m1),
                        p2.set(m2),
                        left,
                        right,
                        if lifted_ok { "" } else { " (lift is not a hyperideal)" }
                    )
                });
            }
        }
    }
    debug_assert_eq!(pair_index(p1.s.zero(), p2.s.zero(), n2), prod.zero());
    Ok(t)
}

fn ideal_is_everything(ideal: ElemSet, s: &KrasnerStructure) -> bool {
    ideal == s.carrier()
}

fn units(p: &Prepared<'_>) -> Result<Tally> {
    let mut t = Tally::default();
    let units = p.s.units()?;
    for &mult in p.mult.iter().filter(|m| m.is_subset(units)) {
        for &ideal in p.ideals.iter().filter(|&&i| i != p.s.carrier()) {
            let left = is_s_primary_with(p.s, ideal, mult, p.mode, p.reading);
            let right = is_primary(p.s, ideal, p.mode);
            t.check(left.verdict == right.verdict, || {
                format!(
                    "I={} S={}: S-primary {}, primary {}",
                    p.set(ideal),
                    p.set(mult),
                    left.verdict,
                    right.verdict
                )
            });
        }
    }
    Ok(t)
}

fn primary_radical(p: &Prepared<'_>) -> Tally {
    let mut t = Tally::default();
    for &mult in &p.mult {
        for k in 0..p.ideals.len() {
            if !p.s_primary(k, mult) {
                continue;
            }
            let rad = p.radicals[k];
            let out = is_s_prime(p.s, rad, mult, p.mode);
            t.check(out.holds(), || {
                format!(
                    "I={} S={}: rad I={} is {}{}",
                    p.set(p.ideals[k]),
                    p.set(mult),
                    p.set(rad),
                    out.verdict,
                    out.reason.as_deref().map(|r| format!(" ({r})")).unwrap_or_default()
                )
            });
        }
    }
    t
}

fn primary_intersection(p: &Prepared<'_>) -> Tally {
    let mut t = Tally::default();
    for &mult in &p.mult {
        for prime in p.s_primes(mult) {
            let radical = p.ideals[prime];
            let family: Vec<usize> = (0..p.ideals.len())
                .filter(|&k| p.radicals[k] == radical && p.s_primary(k, mult))
                .collect();
            let mut cursor = Multisets::new(family.len(), p.s.n());
            while let Some(ms) = cursor.next() {
                let meet = ms.iter().fold(p.s.carrier(), |acc, &i| acc.intersection(p.ideals[family[i]]));
                let out = is_s_primary_with(p.s, meet, mult, p.mode, p.reading);
                let rad = radical_powers_with(p.s, p.one, meet);
                t.check(out.holds() && rad == radical, || {
                    let parts: Vec<String> = ms.iter().map(|&i| p.set(p.ideals[family[i]])).collect();
                    format!(
                        "P={} S={} ideals {}: intersection {} is {} with radical {}",
                        p.set(radical),
                        p.set(mult),
                        parts.join(", "),
                        p.set(meet),
                        out.verdict,
                        p.set(rad)
                    )
                });
            }
        }
    }
    t
}

fn primary_product_ideal(p: &Prepared<'_>) -> Tally {
    let mut t = Tally::default();
    let n = p.s.n();
    for &mult in &p.mult {
        let meeting: Vec<ElemSet> = p.ideals.iter().copied().filter(|i| !i.is_disjoint(mult)).collect();
        for k in 0..p.ideals.len() {
            if !p.s_primary(k, mult) {
                continue;
            }
            let mut cursor = Multisets::new(meeting.len(), n - 1);
            while let Some(ms) = cursor.next() {
                let mut sets: Vec<ElemSet> = ms.iter().map(|&i| meeting[i]).collect();
                sets.push(p.ideals[k]);
                let image = p.s.g_of_sets(&sets);
                let generated = p.closure(image);
                let out = is_s_primary_with(p.s, generated, mult, p.mode, p.reading);
                t.check(out.holds(), || {
                    let parts: Vec<String> = sets.iter().map(|&x| p.set(x)).collect();
                    format!(
                        "S={} g({}) generates {}: {}",
                        p.set(mult),
                        parts.join(", "),
                        p.set(generated),
                        out.verdict
                    )
                });
            }
        }
    }
    t
}

// ---------------------------------------------------------------- driver

fn run_single(theorem: TheoremId, p: &Prepared<'_>) -> Result<Tally> {
    Ok(match theorem {
        TheoremId::SPrimeColon => colon_equivalence(p, false),
        TheoremId::SPrimeExtension => extension(p)?,
        TheoremId::SPrimeCovering => covering(p),
        TheoremId::SPrimeIdealwise => s_prime_idealwise(p),
        TheoremId::PrimeIdealwise => prime_idealwise(p)?,
        TheoremId::SPrimeRadical => radical(p),
        TheoremId::SPrimeRadicalIntersection => radical_intersection(p),
        TheoremId::SPrimeQuotient => quotients(p)?,
        TheoremId::SPrimaryUnits => units(p)?,
        TheoremId::SPrimaryColon => colon_equivalence(p, true),
        TheoremId::SPrimaryRadical => primary_radical(p),
        TheoremId::SPrimaryIntersection => primary_intersection(p),
        TheoremId::SPrimaryProductIdeal => primary_product_ideal(p),
        TheoremId::SPrimePreimage | TheoremId::SPrimeProduct | TheoremId::SPrimeProductFactor => {
            unreachable!("pair theorems run on pairs")
        }
    })
}

fn run_pair(theorem: TheoremId, p1: &Prepared<'_>, p2: &Prepared<'_>) -> Result<Tally> {
    match theorem {
        TheoremId::SPrimePreimage => Ok(preimage(p1, p2)),
        TheoremId::SPrimeProduct => products(p1, p2, false),
        TheoremId::SPrimeProductFactor => products(p1, p2, true),
        _ => unreachable!("single-structure theorems run on structures"),
    }
}

fn is_pair_theorem(theorem: TheoremId) -> bool {
    matches!(
        theorem,
        TheoremId::SPrimePreimage | TheoremId::SPrimeProduct | TheoremId::SPrimeProductFactor
    )
}

fn summarize(s: &KrasnerStructure, limits: &Limits) -> StructureSummary {
    let note = if s.size() > limits.max_verify_size {
        Some(format!("skipped: more than {} elements", limits.max_verify_size))
    } else if s.one().is_none() {
        Some("skipped: no designated identity".to_string())
    } else {
        match verify_axioms_with(s, true, limits) {
            Ok(r) if r.passes() => None,
            Ok(r) => Some(format!("exploratory: fails {}", r.failures().join(", "))),
            Err(e) => Some(format!("skipped: {e}")),
        }
    };
    StructureSummary {
        name: s.name().to_string(),
        size: s.size(),
        m: s.m(),
        n: s.n(),
        eligible: note.is_none(),
        note,
    }
}

fn usable(summary: &StructureSummary) -> bool {
    summary.eligible || summary.note.as_deref().is_some_and(|n| n.starts_with("exploratory"))
}

/// Audit the selected theorems (all of them when `selection` is empty).
pub fn audit_theorems(
    corpus: &[KrasnerStructure],
    selection: &[TheoremId],
    mode: Mode,
    reading: SPrimaryReading,
) -> Result<AuditReport> {
    audit_theorems_with(corpus, selection, mode, reading, &Limits::default())
}

pub fn audit_theorems_with(
    corpus: &[KrasnerStructure],
    selection: &[TheoremId],
    mode: Mode,
    reading: SPrimaryReading,
    limits: &Limits,
) -> Result<AuditReport> {
    let mut theorems: Vec<TheoremId> = if selection.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        selection.to_vec()
    };
    theorems.sort_unstable();
    theorems.dedup();

    let structures: Vec<StructureSummary> = corpus.par_iter().map(|s| summarize(s, limits)).collect();
    let prepared: Vec<Prepared<'_>> = corpus
        .par_iter()
        .zip(&structures)
        .filter(|(_, summary)| usable(summary))
        .map(|(s, summary)| Prepared::new(s, summary.eligible, mode, reading, limits))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..prepared.len())
        .flat_map(|i| (0..prepared.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let (a, b) = (prepared[i].s, prepared[j].s);
            (a.m(), a.n()) == (b.m(), b.n())
        })
        .collect();

    let mut entries = Vec::with_capacity(theorems.len());
    for theorem in theorems {
        // (eligible, structure names, tally) per unit of work.
        let units: Vec<(bool, Vec<String>, Tally)> = if is_pair_theorem(theorem) {
            pairs
                .par_iter()
                .filter(|&&(i, j)| {
                    theorem == TheoremId::SPrimePreimage
                        || prepared[i].s.size() * prepared[j].s.size() <= crate::elem::MAX_CARRIER
                })
                .map(|&(i, j)| {
                    let (a, b) = (&prepared[i], &prepared[j]);
                    run_pair(theorem, a, b).map(|t| (a.eligible && b.eligible, vec![a.name(), b.name()], t))
                })
                .collect::<Result<_>>()?
        } else {
            prepared
                .par_iter()
                .map(|p| run_single(theorem, p).map(|t| (p.eligible, vec![p.name()], t)))
                .collect::<Result<_>>()?
        };
        entries.push(assemble(theorem, mode, reading, units));
    }
    Ok(AuditReport {
        mode,
        reading,
        structures,
        entries,
    })
}

fn assemble(theorem: TheoremId, mode: Mode, reading: SPrimaryReading, units: Vec<(bool, Vec<String>, Tally)>) -> AuditEntry {
    let mut entry = AuditEntry {
        theorem,
        statement: theorem.statement().to_string(),
        hypotheses: Hypotheses {
            mode,
            reading,
            with_identity: units.len(),
            eligible: units.iter().filter(|u| u.0).count(),
            disjointness_skipped: 0,
        },
        instantiations: 0,
        violation_count: 0,
        violations: Vec::new(),
        exploratory_instantiations: 0,
        finding_count: 0,
        findings: Vec::new(),
        status: AuditStatus::HypothesisNotMet,
    };
    for (eligible, names, tally) in units {
        entry.hypotheses.disjointness_skipped += tally.skipped;
        let (count, total, list) = if eligible {
            (&mut entry.instantiations, &mut entry.violation_count, &mut entry.violations)
        } else {
            (&mut entry.exploratory_instantiations, &mut entry.finding_count, &mut entry.findings)
        };
        *count += tally.instantiations;
        *total += tally.discrepancies.len();
        for detail in tally.discrepancies {
            if list.len() < LISTED_INSTANCES {
                list.push(Instance {
                    structures: names.clone(),
                    detail,
                });
            }
        }
    }
    entry.status = if entry.violation_count > 0 {
        AuditStatus::Violated
    } else if entry.instantiations > 0 {
        AuditStatus::Verified
    } else {
        AuditStatus::HypothesisNotMet
    };
    entry
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_zk_ring, k24, k33};

    #[test]
    fn slugs_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.slug().parse::<TheoremId>().unwrap(), t);
            assert_eq!(serde_json::to_string(&t).unwrap(), format!("\"{}\"", t.slug()));
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn empty_corpus_meets_no_hypothesis() {
        let r = audit_theorems(&[], &[], Mode::Weak, SPrimaryReading::default()).unwrap();
        assert_eq!(r.entries.len(), TheoremId::ALL.len());
        assert!(r.entries.iter().all(|e| e.status == AuditStatus::HypothesisNotMet));
    }

    #[test]
    fn colon_theorem_on_small_corpus() {
        let corpus = vec![k33(), k24(), build_zk_ring(4, 2, 2).unwrap(), build_zk_ring(6, 2, 2).unwrap()];
        let r = audit_theorems(&corpus, &[TheoremId::SPrimeColon], Mode::Weak, SPrimaryReading::default()).unwrap();
        let e = r.entry(TheoremId::SPrimeColon).unwrap();
        assert_eq!(e.status, AuditStatus::Verified);
        assert!(e.instantiations > 0);
        assert!(e.violations.is_empty());
        assert!(!r.structures[0].eligible && !r.structures[1].eligible);
        assert!(r.structures[2].eligible && r.structures[3].eligible);
    }

    #[test]
    fn closure_is_the_smallest_hyperideal() {
        let z6 = build_zk_ring(6, 2, 2).unwrap();
        let p = Prepared::new(&z6, true, Mode::Weak, SPrimaryReading::default(), &Limits::default()).unwrap();
        assert_eq!(p.closure(ElemSet::from([0, 4])), ElemSet::from([0, 2, 4]));
        assert_eq!(p.closure(ElemSet::from([2, 3])), z6.carrier());
    }
}
