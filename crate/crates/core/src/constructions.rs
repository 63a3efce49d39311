//! Products, quotients, substructures and homomorphisms.

use serde::{Deserialize, Serialize};

use crate::axioms::{verify_axioms, AxiomReport};
use crate::elem::{Elem, ElemSet, MAX_CARRIER};
use crate::error::{Error, Result};
use crate::ideals::{check_enumeration_bound, hyperideal_violation, subsets_with, Mode};
use crate::outcome::{Counterexample, PredicateOutcome};
use crate::structure::KrasnerStructure;
use crate::table::{Choices, Multisets, MAX_ARITY};
use crate::Limits;

// ---------------------------------------------------------------- products

/// Index of the pair `(a, b)` in a product whose second factor has
/// `right_size` elements.
pub fn pair_index(a: Elem, b: Elem, right_size: usize) -> Elem {
    a * right_size + b
}

/// The direct product, carrier ordered row-major by `(left, right)`.
pub fn product(s1: &KrasnerStructure, s2: &KrasnerStructure) -> Result<KrasnerStructure> {
    if (s1.m(), s1.n()) != (s2.m(), s2.n()) {
        return Err(Error::ArityPairMismatch {
            m1: s1.m(),
            n1: s1.n(),
            m2: s2.m(),
            n2: s2.n(),
        });
    }
    let (n1, n2) = (s1.size(), s2.size());
    let size = n1 * n2;
    if size > MAX_CARRIER {
        return Err(Error::InvalidParameters(format!(
            "product of {n1} and {n2} elements exceeds {MAX_CARRIER}"
        )));
    }
    let labels: Vec<String> = (0..size)
        .map(|p| format!("({},{})", s1.label(p / n2), s2.label(p % n2)))
        .collect();
    let mut left = [0; MAX_ARITY];
    let mut right = [0; MAX_ARITY];
    let f = |ms: &[Elem]| {
        let k = ms.len();
        for (i, &p) in ms.iter().enumerate() {
            left[i] = p / n2;
            right[i] = p % n2;
        }
        product_set(s1.f(&left[..k]), s2.f(&right[..k]), n2)
    };
    let mut left_g = [0; MAX_ARITY];
    let mut right_g = [0; MAX_ARITY];
    let g = |ms: &[Elem]| {
        let k = ms.len();
        for (i, &p) in ms.iter().enumerate() {
            left_g[i] = p / n2;
            right_g[i] = p % n2;
        }
        pair_index(s1.g(&left_g[..k]), s2.g(&right_g[..k]), n2)
    };
    let zero = pair_index(s1.zero(), s2.zero(), n2);
    let one = s1.one().zip(s2.one()).map(|(a, b)| pair_index(a, b, n2));
    KrasnerStructure::from_fns(
        format!("{}x{}", s1.name(), s2.name()),
        labels,
        s1.m(),
        s1.n(),
        f,
        g,
        zero,
        one,
    )
}

/// `A x B` as a subset of the product carrier.
pub fn product_set(a: ElemSet, b: ElemSet, right_size: usize) -> ElemSet {
    let mut out = ElemSet::EMPTY;
    for x in a {
        for y in b {
            out.insert(pair_index(x, y, right_size));
        }
    }
    out
}

/// `I_1 x R_2`.
pub fn lift_ideal_product(s1: &KrasnerStructure, s2: &KrasnerStructure, ideal: ElemSet) -> ElemSet {
    debug_assert!(ideal.is_subset(s1.carrier()));
    product_set(ideal, s2.carrier(), s2.size())
}

/// Projection of a product element onto both factors.
pub fn unpair(p: Elem, right_size: usize) -> (Elem, Elem) {
    (p / right_size, p % right_size)
}

// --------------------------------------------------------------- quotients

/// `R/J` with its cosets, the class of every element, and the axiom report
/// of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub ideal: ElemSet,
    /// Cosets ordered by smallest member.
    pub cosets: Vec<ElemSet>,
    /// `class_of[x]` is the index of the coset containing `x`.
    pub class_of: Vec<Elem>,
    pub quotient: KrasnerStructure,
    pub report: AxiomReport,
}

impl QuotientMap {
    /// Representative (smallest member) of each class.
    pub fn representatives(&self) -> Vec<Elem> {
        self.cosets.iter().map(|c| c.first().expect("cosets are nonempty")).collect()
    }

    /// The map `x -> class(x)` as a homomorphism candidate.
    pub fn projection<'a>(&'a self, source: &'a KrasnerStructure) -> Homomorphism<'a> {
        Homomorphism {
            source,
            target: &self.quotient,
            map: self.class_of.clone(),
        }
    }
}

/// `f(x, J, 0^(m-2))`.
pub fn coset(s: &KrasnerStructure, ideal: ElemSet, x: Elem) -> ElemSet {
    let m = s.m();
    let mut buf = [s.zero(); MAX_ARITY];
    buf[0] = x;
    let mut out = ElemSet::EMPTY;
    for j in ideal {
        buf[1] = j;
        out = out.union(s.f(&buf[..m]));
    }
    out
}

/// The quotient by `J`. Cosets must partition the carrier and the induced
/// operations must not depend on representatives; both are checked.
pub fn quotient(s: &KrasnerStructure, ideal: ElemSet) -> Result<QuotientMap> {
    if !ideal.contains(s.zero()) || !ideal.is_subset(s.carrier()) {
        return Err(Error::InvalidParameters("J must contain the zero".into()));
    }
    let cosets_of: Vec<ElemSet> = (0..s.size()).map(|x| coset(s, ideal, x)).collect();
    for x in 0..s.size() {
        for y in x + 1..s.size() {
            let (a, b) = (cosets_of[x], cosets_of[y]);
            if a != b && !a.is_disjoint(b) {
                return Err(Error::NotAPartition { x, y });
            }
        }
    }
    let mut cosets: Vec<ElemSet> = Vec::new();
    for &c in &cosets_of {
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    if cosets.iter().fold(ElemSet::EMPTY, |a, &c| a.union(c)) != s.carrier() {
        return Err(Error::WellDefinedness("cosets do not cover the carrier".into()));
    }
    cosets.sort_by_key(|c| c.first());
    let mut class_of = vec![0; s.size()];
    for (i, c) in cosets.iter().enumerate() {
        for x in *c {
            class_of[x] = i;
        }
    }
    let classes_of = |set: ElemSet| set.iter().map(|x| class_of[x]).collect::<ElemSet>();

    // Induced tables, checked over every choice of members.
    let mut problem: Option<String> = None;
    let f = |ms: &[Elem]| {
        let members: Vec<ElemSet> = ms.iter().map(|&c| cosets[c]).collect();
        let mut choices = Choices::new(&members);
        let mut value: Option<ElemSet> = None;
        while let Some(args) = choices.next() {
            let v = classes_of(s.f(args));
            match value {
                None => value = Some(v),
                Some(w) if w != v && problem.is_none() => {
                    problem = Some(format!("f on classes {ms:?} gives {w} and {v}"));
                }
                _ => {}
            }
        }
        value.expect("classes are nonempty")
    };
    let f_table = crate::table::MultisetTable::build(cosets.len(), s.m(), f)
        .ok_or_else(|| Error::InvalidStructure("quotient table too large".into()))?;
    let g = |ms: &[Elem]| {
        let members: Vec<ElemSet> = ms.iter().map(|&c| cosets[c]).collect();
        let mut choices = Choices::new(&members);
        let mut value: Option<Elem> = None;
        while let Some(args) = choices.next() {
            let v = class_of[s.g(args)];
            match value {
                None => value = Some(v),
                Some(w) if w != v && problem.is_none() => {
                    problem = Some(format!("g on classes {ms:?} gives {w} and {v}"));
                }
                _ => {}
            }
        }
        value.expect("classes are nonempty")
    };
    let g_table = crate::table::MultisetTable::build(cosets.len(), s.n(), g)
        .ok_or_else(|| Error::InvalidStructure("quotient table too large".into()))?;
    if let Some(msg) = problem {
        return Err(Error::WellDefinedness(msg));
    }
    let labels = cosets
        .iter()
        .map(|c| format!("[{}]", s.label(c.first().expect("nonempty"))))
        .collect();
    let quotient = KrasnerStructure::from_tables(
        format!("{}/{}", s.name(), s.fmt_set(ideal)),
        labels,
        f_table,
        g_table,
        class_of[s.zero()],
        s.one().map(|o| class_of[o]),
    )?;
    let report = verify_axioms(&quotient, quotient.one().is_some())?;
    Ok(QuotientMap {
        ideal,
        cosets,
        class_of,
        quotient,
        report,
    })
}

/// Classes meeting `X`.
pub fn lift_to_quotient(q: &QuotientMap, set: ElemSet) -> ElemSet {
    set.iter().map(|x| q.class_of[x]).collect()
}

// ---------------------------------------------------------- substructures

/// A subset closed under `f` and `g` that contains the zero, with the induced
/// structure on it. Local index `i` stands for ambient element `members[i]`.
#[derive(Clone, Debug)]
pub struct SubstructureEmbedding {
    pub members: ElemSet,
    pub structure: KrasnerStructure,
}

impl SubstructureEmbedding {
    /// Ambient element of a local index.
    pub fn ambient(&self, local: Elem) -> Elem {
        self.members.iter().nth(local).expect("local index in range")
    }

    /// Local indices of the ambient members of `set` that lie in the
    /// substructure.
    pub fn to_local(&self, set: ElemSet) -> ElemSet {
        self.members
            .iter()
            .enumerate()
            .filter(|&(_, x)| set.contains(x))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_ambient(&self, local: ElemSet) -> ElemSet {
        self.members
            .iter()
            .enumerate()
            .filter(|&(i, _)| local.contains(i))
            .map(|(_, x)| x)
            .collect()
    }
}

fn closed(s: &KrasnerStructure, members: ElemSet) -> bool {
    let mut cursor = Multisets::over(members, s.m());
    while let Some(ms) = cursor.next() {
        if !s.f_sorted(ms).is_subset(members) {
            return false;
        }
    }
    let mut cursor = Multisets::over(members, s.n());
    while let Some(ms) = cursor.next() {
        if !members.contains(s.g_sorted(ms)) {
            return false;
        }
    }
    true
}

/// The induced structure on a closed subset. Its identity is the ambient one
/// when that lies inside, otherwise the unique scalar identity of the
/// restriction if there is exactly one.
pub fn substructure(s: &KrasnerStructure, members: ElemSet) -> Result<SubstructureEmbedding> {
    if !members.contains(s.zero()) || !members.is_subset(s.carrier()) || !closed(s, members) {
        return Err(Error::InvalidParameters(format!(
            "{} is not a closed subset containing the zero",
            s.fmt_set(members)
        )));
    }
    let index: Vec<Elem> = members.to_vec();
    let local = |x: Elem| index.iter().position(|&y| y == x).expect("closed");
    let labels = index.iter().map(|&x| s.label(x).to_string()).collect();
    let mut buf = [0; MAX_ARITY];
    let f = |ms: &[Elem]| {
        for (i, &x) in ms.iter().enumerate() {
            buf[i] = index[x];
        }
        s.f(&buf[..ms.len()]).iter().map(local).collect::<ElemSet>()
    };
    let mut gbuf = [0; MAX_ARITY];
    let g = |ms: &[Elem]| {
        for (i, &x) in ms.iter().enumerate() {
            gbuf[i] = index[x];
        }
        local(s.g(&gbuf[..ms.len()]))
    };
    let sub = KrasnerStructure::from_fns(
        format!("{}|{}", s.name(), s.fmt_set(members)),
        labels,
        s.m(),
        s.n(),
        f,
        g,
        local(s.zero()),
        None,
    )?;
    let one = match s.one() {
        Some(o) if members.contains(o) => Some(local(o)),
        _ => {
            let ids = sub.scalar_identities();
            (ids.len() == 1).then(|| ids.first().expect("one member"))
        }
    };
    Ok(SubstructureEmbedding {
        members,
        structure: sub.with_one(one)?,
    })
}

/// Every closed subset containing the zero, in mask order.
pub fn enumerate_subhyperrings(s: &KrasnerStructure) -> Result<Vec<SubstructureEmbedding>> {
    enumerate_subhyperrings_with(s, &Limits::default())
}

pub fn enumerate_subhyperrings_with(s: &KrasnerStructure, limits: &Limits) -> Result<Vec<SubstructureEmbedding>> {
    check_enumeration_bound(s, limits)?;
    subsets_with(s.size(), ElemSet::singleton(s.zero()))
        .filter(|&c| closed(s, c))
        .map(|c| substructure(s, c))
        .collect()
}

/// `I ∩ sub`, in ambient indices, with the verdict of the hyperideal check
/// inside the substructure.
pub fn restrict_ideal(e: &SubstructureEmbedding, ideal: ElemSet, mode: Mode) -> (ElemSet, PredicateOutcome) {
    let meet = ideal.intersection(e.members);
    let local = e.to_local(meet);
    let check = PredicateOutcome::from_check(hyperideal_violation(&e.structure, local, mode));
    (meet, check)
}

// ------------------------------------------------------------ homomorphisms

/// A total map between two structures of the same arities.
#[derive(Clone, Debug)]
pub struct Homomorphism<'a> {
    pub source: &'a KrasnerStructure,
    pub target: &'a KrasnerStructure,
    pub map: Vec<Elem>,
}

/// Serializable form of a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub source: String,
    pub target: String,
    pub map: Vec<Elem>,
}

impl Homomorphism<'_> {
    pub fn record(&self) -> MapRecord {
        MapRecord {
            source: self.source.name().to_string(),
            target: self.target.name().to_string(),
            map: self.map.clone(),
        }
    }

    pub fn image(&self, set: ElemSet) -> ElemSet {
        set.iter().map(|x| self.map[x]).collect()
    }
}

fn f_respected(h: &[Elem], s1: &KrasnerStructure, s2: &KrasnerStructure, ms: &[Elem]) -> bool {
    let mut buf = [0; MAX_ARITY];
    for (i, &x) in ms.iter().enumerate() {
        buf[i] = h[x];
    }
    let image: ElemSet = s1.f_sorted(ms).iter().map(|y| h[y]).collect();
    image == s2.f(&buf[..ms.len()])
}

fn g_respected(h: &[Elem], s1: &KrasnerStructure, s2: &KrasnerStructure, ms: &[Elem]) -> bool {
    let mut buf = [0; MAX_ARITY];
    for (i, &x) in ms.iter().enumerate() {
        buf[i] = h[x];
    }
    h[s1.g_sorted(ms)] == s2.g(&buf[..ms.len()])
}

/// `h(f1(x)) = f2(h(x))` elementwise on sets and `h(g1(y)) = g2(h(y))` for
/// every tuple.
pub fn verify_homomorphism(h: &Homomorphism<'_>) -> PredicateOutcome {
    let (s1, s2) = (h.source, h.target);
    if (s1.m(), s1.n()) != (s2.m(), s2.n()) {
        return PredicateOutcome::inapplicable("arities differ");
    }
    if h.map.len() != s1.size() || h.map.iter().any(|&y| y >= s2.size()) {
        return PredicateOutcome::inapplicable("map is not a total map into the target");
    }
    let mut cursor = Multisets::new(s1.size(), s1.m());
    while let Some(ms) = cursor.next() {
        if !f_respected(&h.map, s1, s2, ms) {
            return PredicateOutcome::fails(Counterexample::Operation {
                op: "f".into(),
                tuple: ms.to_vec(),
            });
        }
    }
    let mut cursor = Multisets::new(s1.size(), s1.n());
    while let Some(ms) = cursor.next() {
        if !g_respected(&h.map, s1, s2, ms) {
            return PredicateOutcome::fails(Counterexample::Operation {
                op: "g".into(),
                tuple: ms.to_vec(),
            });
        }
    }
    PredicateOutcome::holds_plain()
}

/// Every homomorphism `s1 -> s2`, in lexicographic order of the map.
///
/// Backtracking assigns images in index order and checks each table entry as
/// soon as all of its arguments and values are assigned.
pub fn search_homomorphisms(s1: &KrasnerStructure, s2: &KrasnerStructure) -> Vec<Vec<Elem>> {
    if (s1.m(), s1.n()) != (s2.m(), s2.n()) {
        return Vec::new();
    }
    // Entries grouped by the largest element they mention.
    let mut f_at: Vec<Vec<Vec<Elem>>> = vec![Vec::new(); s1.size()];
    let mut cursor = Multisets::new(s1.size(), s1.m());
    while let Some(ms) = cursor.next() {
        let top = s1.f_sorted(ms).iter().chain(ms.iter().copied()).max().expect("nonempty");
        f_at[top].push(ms.to_vec());
    }
    let mut g_at: Vec<Vec<Vec<Elem>>> = vec![Vec::new(); s1.size()];
    let mut cursor = Multisets::new(s1.size(), s1.n());
    while let Some(ms) = cursor.next() {
        let top = (*ms.last().expect("arity >= 2")).max(s1.g_sorted(ms));
        g_at[top].push(ms.to_vec());
    }
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(s1.size());
    extend(s1, s2, &f_at, &g_at, &mut map, &mut out);
    out
}

fn extend(
    s1: &KrasnerStructure,
    s2: &KrasnerStructure,
    f_at: &[Vec<Vec<Elem>>],
    g_at: &[Vec<Vec<Elem>>],
    map: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    let k = map.len();
    if k == s1.size() {
        out.push(map.clone());
        return;
    }
    for y in 0..s2.size() {
        map.push(y);
        let ok = f_at[k].iter().all(|ms| f_respected(map, s1, s2, ms))
            && g_at[k].iter().all(|ms| g_respected(map, s1, s2, ms));
        if ok {
            extend(s1, s2, f_at, g_at, map, out);
        }
        map.pop();
    }
}

/// `h^-1(I_2)`.
pub fn preimage_ideal(h: &Homomorphism<'_>, ideal: ElemSet) -> ElemSet {
    (0..h.source.size()).filter(|&x| ideal.contains(h.map[x])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_zk_ring, k33};

    fn set<const K: usize>(xs: [Elem; K]) -> ElemSet {
        ElemSet::from(xs)
    }

    #[test]
    fn quotients() {
        let z4 = build_zk_ring(4, 2, 2).unwrap();
        let q = quotient(&z4, set([0, 2])).unwrap();
        assert_eq!(q.cosets, vec![set([0, 2]), set([1, 3])]);
        assert!(q.report.passes());
        assert_eq!(q.quotient.size(), 2);
        assert_eq!(lift_to_quotient(&q, set([1, 3])), set([1]));
        assert!(verify_homomorphism(&q.projection(&z4)).holds());

        let k = k33();
        let same = quotient(&k, set([0])).unwrap();
        assert_eq!(same.quotient.f_table(), k.f_table());
        assert!(matches!(quotient(&k, set([0, 2])), Err(Error::NotAPartition { .. })));
    }

    #[test]
    fn products() {
        let z2 = build_zk_ring(2, 2, 2).unwrap();
        let z3 = build_zk_ring(3, 2, 2).unwrap();
        let p = product(&z2, &z3).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.label(pair_index(1, 2, 3)), "(1,2)");
        assert!(verify_axioms(&p, true).unwrap().passes());
        assert_eq!(lift_ideal_product(&z2, &z3, set([0])), set([0, 1, 2]));
        assert!(matches!(
            product(&z2, &build_zk_ring(2, 3, 3).unwrap()),
            Err(Error::ArityPairMismatch { .. })
        ));
    }

    #[test]
    fn substructures() {
        let z4 = build_zk_ring(4, 2, 2).unwrap();
        let subs: Vec<ElemSet> = enumerate_subhyperrings(&z4).unwrap().iter().map(|e| e.members).collect();
        assert_eq!(subs, vec![set([0]), set([0, 2]), set([0, 1, 2, 3])]);
        let z6 = build_zk_ring(6, 2, 2).unwrap();
        let e = substructure(&z6, set([0, 2, 4])).unwrap();
        // 4 is the identity of {0,2,4} in Z6.
        assert_eq!(e.structure.one().map(|o| e.ambient(o)), Some(4));
        let (meet, check) = restrict_ideal(&e, set([0, 3]), Mode::Weak);
        assert_eq!(meet, set([0]));
        assert!(check.holds());
    }

    #[test]
    fn homomorphisms() {
        let z4 = build_zk_ring(4, 2, 2).unwrap();
        let z2 = build_zk_ring(2, 2, 2).unwrap();
        let h = Homomorphism { source: &z4, target: &z2, map: vec![0, 1, 0, 1] };
        assert!(verify_homomorphism(&h).holds());
        assert_eq!(preimage_ideal(&h, set([0])), set([0, 2]));
        let shift = Homomorphism { source: &z4, target: &z4, map: vec![1, 2, 3, 0] };
        assert!(verify_homomorphism(&shift).failed());
        let found = search_homomorphisms(&z4, &z2);
        assert!(found.contains(&vec![0, 1, 0, 1]));
        assert!(found.contains(&vec![0, 0, 0, 0]));
        for map in &found {
            let h = Homomorphism { source: &z4, target: &z2, map: map.clone() };
            assert!(verify_homomorphism(&h).holds());
        }
    }
}
