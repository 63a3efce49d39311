//! Exhaustive verification of the Krasner (m,n)-hyperring axioms.
//!
//! Every check enumerates sorted multisets in lexicographic order and stops
//! at the first failure, so counterexamples are deterministic. Because both
//! operations are commutative, positional quantifiers collapse: associativity
//! becomes "every way of splitting a (2k-1)-multiset into a k-block and a
//! remainder gives the same value", and the position of a distinguished
//! argument never matters.

use serde::{Deserialize, Serialize};

use crate::elem::{Elem, ElemSet};
use crate::error::{Error, Result};
use crate::structure::KrasnerStructure;
use crate::table::Multisets;
use crate::Limits;

/// Outcome of a single axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl AxiomVerdict {
    fn ok() -> Self {
        AxiomVerdict {
            holds: true,
            counterexample: None,
            detail: None,
        }
    }

    fn fail(tuple: Vec<Elem>, detail: String) -> Self {
        AxiomVerdict {
            holds: false,
            counterexample: Some(tuple),
            detail: Some(detail),
        }
    }

    fn fail_detail(detail: String) -> Self {
        AxiomVerdict {
            holds: false,
            counterexample: None,
            detail: Some(detail),
        }
    }
}

/// Per-axiom verdicts for one structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub f_associative: AxiomVerdict,
    pub f_solvable: AxiomVerdict,
    pub neutral_exists_unique: AxiomVerdict,
    pub inverses_unique: AxiomVerdict,
    pub reversibility: AxiomVerdict,
    pub g_associative: AxiomVerdict,
    pub distributive: AxiomVerdict,
    pub zero_absorbing: AxiomVerdict,
    /// Present only when the identity check was requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scalar_identity: Option<AxiomVerdict>,
    /// All mandatory axioms hold. The scalar identity check is not part of it.
    pub overall: bool,
}

impl AxiomReport {
    /// Mandatory axioms with their names, in report order.
    pub fn mandatory(&self) -> [(&'static str, &AxiomVerdict); 8] {
        [
            ("f_associative", &self.f_associative),
            ("f_solvable", &self.f_solvable),
            ("neutral_exists_unique", &self.neutral_exists_unique),
            ("inverses_unique", &self.inverses_unique),
            ("reversibility", &self.reversibility),
            ("g_associative", &self.g_associative),
            ("distributive", &self.distributive),
            ("zero_absorbing", &self.zero_absorbing),
        ]
    }

    /// `overall`, and the scalar identity check when it was requested.
    pub fn passes(&self) -> bool {
        self.overall && self.scalar_identity.as_ref().is_none_or(|v| v.holds)
    }

    /// Names of the failed axioms, including the identity check.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = self
            .mandatory()
            .into_iter()
            .filter(|(_, v)| !v.holds)
            .map(|(name, _)| name)
            .collect();
        if self.scalar_identity.as_ref().is_some_and(|v| !v.holds) {
            out.push("scalar_identity");
        }
        out
    }
}

/// Verify every axiom with the default size bound.
pub fn verify_axioms(s: &KrasnerStructure, check_identity: bool) -> Result<AxiomReport> {
    verify_axioms_with(s, check_identity, &Limits::default())
}

pub fn verify_axioms_with(
    s: &KrasnerStructure,
    check_identity: bool,
    limits: &Limits,
) -> Result<AxiomReport> {
    if s.size() > limits.max_verify_size {
        return Err(Error::BoundExceeded {
            size: s.size(),
            bound: limits.max_verify_size,
        });
    }
    let scalar_identity = if check_identity {
        let one = s.one().ok_or(Error::MissingIdentity)?;
        Some(check_scalar_identity(s, one))
    } else {
        None
    };
    let inverses = check_inverses(s);
    let reversibility = if inverses.holds {
        check_reversibility(s)
    } else {
        AxiomVerdict::fail_detail("requires unique inverses".into())
    };
    let mut report = AxiomReport {
        f_associative: check_f_associative(s),
        f_solvable: check_f_solvable(s),
        neutral_exists_unique: check_neutral(s),
        inverses_unique: inverses,
        reversibility,
        g_associative: check_g_associative(s),
        distributive: check_distributive(s),
        zero_absorbing: check_zero_absorbing(s),
        scalar_identity,
        overall: false,
    };
    report.overall = report.mandatory().iter().all(|(_, v)| v.holds);
    Ok(report)
}

/// Index combinations of size `k` from `0..total`, lexicographic.
fn combinations(total: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cursor = Multisets::new(total, k);
    while let Some(c) = cursor.next() {
        if c.windows(2).all(|w| w[0] < w[1]) {
            out.push(c.to_vec());
        }
    }
    out
}

/// Split `ms` by the index set `block`.
fn split(ms: &[Elem], block: &[usize]) -> (Vec<Elem>, Vec<Elem>) {
    let mut inner = Vec::with_capacity(block.len());
    let mut rest = Vec::with_capacity(ms.len() - block.len());
    let mut b = block.iter().peekable();
    for (i, &x) in ms.iter().enumerate() {
        if b.peek() == Some(&&i) {
            b.next();
            inner.push(x);
        } else {
            rest.push(x);
        }
    }
    (inner, rest)
}

fn nested_f(s: &KrasnerStructure, block: &[Elem], rest: &[Elem]) -> ElemSet {
    let mut buf = Vec::with_capacity(s.m());
    buf.push(0);
    buf.extend_from_slice(rest);
    let mut out = ElemSet::EMPTY;
    for y in s.f(block) {
        buf[0] = y;
        out = out.union(s.f(&buf));
    }
    out
}

fn check_f_associative(s: &KrasnerStructure) -> AxiomVerdict {
    let m = s.m();
    let splits = combinations(2 * m - 1, m);
    let mut cursor = Multisets::new(s.size(), 2 * m - 1);
    while let Some(ms) = cursor.next() {
        let (b0, r0) = split(ms, &splits[0]);
        let reference = nested_f(s, &b0, &r0);
        for block in &splits[1..] {
            let (b, r) = split(ms, block);
            let value = nested_f(s, &b, &r);
            if value != reference {
                let mut tuple = b.clone();
                tuple.extend_from_slice(&r);
                return AxiomVerdict::fail(
                    tuple,
                    format!(
                        "f(f{}, {}) = {} but f(f{}, {}) = {}",
                        s.fmt_tuple(&b),
                        s.fmt_tuple(&r),
                        s.fmt_set(value),
                        s.fmt_tuple(&b0),
                        s.fmt_tuple(&r0),
                        s.fmt_set(reference)
                    ),
                );
            }
        }
    }
    AxiomVerdict::ok()
}

fn check_g_associative(s: &KrasnerStructure) -> AxiomVerdict {
    let n = s.n();
    let splits = combinations(2 * n - 1, n);
    let nested = |block: &[Elem], rest: &[Elem]| {
        let mut buf = Vec::with_capacity(n);
        buf.push(s.g(block));
        buf.extend_from_slice(rest);
        s.g(&buf)
    };
    let mut cursor = Multisets::new(s.size(), 2 * n - 1);
    while let Some(ms) = cursor.next() {
        let (b0, r0) = split(ms, &splits[0]);
        let reference = nested(&b0, &r0);
        for block in &splits[1..] {
            let (b, r) = split(ms, block);
            let value = nested(&b, &r);
            if value != reference {
                let mut tuple = b.clone();
                tuple.extend_from_slice(&r);
                return AxiomVerdict::fail(
                    tuple,
                    format!(
                        "g(g{}, {}) = {} but g(g{}, {}) = {}",
                        s.fmt_tuple(&b),
                        s.fmt_tuple(&r),
                        s.label(value),
                        s.fmt_tuple(&b0),
                        s.fmt_tuple(&r0),
                        s.label(reference)
                    ),
                );
            }
        }
    }
    AxiomVerdict::ok()
}

fn check_f_solvable(s: &KrasnerStructure) -> AxiomVerdict {
    let m = s.m();
    let full = s.carrier();
    let mut buf = vec![0; m];
    let mut cursor = Multisets::new(s.size(), m - 1);
    while let Some(fixed) = cursor.next() {
        buf[..m - 1].copy_from_slice(fixed);
        let mut reach = ElemSet::EMPTY;
        for x in 0..s.size() {
            buf[m - 1] = x;
            reach = reach.union(s.f(&buf));
        }
        if let Some(b) = full.difference(reach).first() {
            let mut tuple = fixed.to_vec();
            tuple.push(b);
            return AxiomVerdict::fail(
                tuple,
                format!(
                    "{} is in no f{} with x free",
                    s.label(b),
                    s.fmt_tuple(fixed)
                ),
            );
        }
    }
    AxiomVerdict::ok()
}

/// Elements `e` with `f(x, e^(m-1)) = {x}` for every `x`.
pub fn scalar_neutrals(s: &KrasnerStructure) -> ElemSet {
    let m = s.m();
    (0..s.size())
        .filter(|&e| {
            let mut buf = vec![e; m];
            (0..s.size()).all(|x| {
                buf[0] = x;
                s.f(&buf) == ElemSet::singleton(x)
            })
        })
        .collect()
}

fn check_neutral(s: &KrasnerStructure) -> AxiomVerdict {
    let neutrals = scalar_neutrals(s);
    if neutrals == ElemSet::singleton(s.zero()) {
        AxiomVerdict::ok()
    } else if neutrals.is_empty() {
        AxiomVerdict::fail_detail("no scalar neutral element".into())
    } else if neutrals.len() > 1 {
        AxiomVerdict::fail(
            neutrals.to_vec(),
            format!("scalar neutral is not unique: {}", s.fmt_set(neutrals)),
        )
    } else {
        AxiomVerdict::fail(
            neutrals.to_vec(),
            format!(
                "scalar neutral {} differs from the designated zero {}",
                s.fmt_set(neutrals),
                s.label(s.zero())
            ),
        )
    }
}

fn check_inverses(s: &KrasnerStructure) -> AxiomVerdict {
    for x in 0..s.size() {
        let c = s.inverse_candidates(x);
        if c.len() != 1 {
            return AxiomVerdict::fail(
                vec![x],
                format!(
                    "{} has inverse candidates {}",
                    s.label(x),
                    s.fmt_set(c)
                ),
            );
        }
    }
    AxiomVerdict::ok()
}

fn check_reversibility(s: &KrasnerStructure) -> AxiomVerdict {
    let m = s.m();
    let inv: Vec<Elem> = (0..s.size())
        .map(|x| s.inverse_candidates(x).first().expect("checked unique"))
        .collect();
    let mut buf = vec![0; m];
    let mut cursor = Multisets::new(s.size(), m);
    while let Some(xs) = cursor.next() {
        for x in s.f_sorted(xs) {
            for i in 0..m {
                buf[0] = x;
                let mut k = 1;
                for (j, &xj) in xs.iter().enumerate() {
                    if j != i {
                        buf[k] = inv[xj];
                        k += 1;
                    }
                }
                if !s.f(&buf).contains(xs[i]) {
                    let mut tuple = xs.to_vec();
                    tuple.push(x);
                    return AxiomVerdict::fail(
                        tuple,
                        format!(
                            "{} in f{} but {} not in f{}",
                            s.label(x),
                            s.fmt_tuple(xs),
                            s.label(xs[i]),
                            s.fmt_tuple(&buf)
                        ),
                    );
                }
            }
        }
    }
    AxiomVerdict::ok()
}

fn check_distributive(s: &KrasnerStructure) -> AxiomVerdict {
    let (m, n) = (s.m(), s.n());
    let mut gbuf = vec![0; n];
    let mut outer = Multisets::new(s.size(), n - 1);
    while let Some(a) = outer.next() {
        gbuf[1..].copy_from_slice(a);
        let mut times = |y: Elem| {
            gbuf[0] = y;
            s.g(&gbuf)
        };
        let mut inner = Multisets::new(s.size(), m);
        while let Some(xs) = inner.next() {
            let lhs: ElemSet = s.f_sorted(xs).iter().map(&mut times).collect();
            let images: Vec<Elem> = xs.iter().map(|&x| times(x)).collect();
            let rhs = s.f(&images);
            if lhs != rhs {
                let mut tuple = a.to_vec();
                tuple.extend_from_slice(xs);
                return AxiomVerdict::fail(
                    tuple,
                    format!(
                        "g({}, f{}) = {} but f{} = {}",
                        s.fmt_tuple(a).trim_matches(|c| c == '(' || c == ')'),
                        s.fmt_tuple(xs),
                        s.fmt_set(lhs),
                        s.fmt_tuple(&images),
                        s.fmt_set(rhs)
                    ),
                );
            }
        }
    }
    AxiomVerdict::ok()
}

fn check_zero_absorbing(s: &KrasnerStructure) -> AxiomVerdict {
    let n = s.n();
    let mut buf = vec![s.zero(); n];
    let mut cursor = Multisets::new(s.size(), n - 1);
    while let Some(a) = cursor.next() {
        buf[1..].copy_from_slice(a);
        let v = s.g(&buf);
        if v != s.zero() {
            return AxiomVerdict::fail(
                buf.clone(),
                format!("g{} = {}", s.fmt_tuple(&buf), s.label(v)),
            );
        }
    }
    AxiomVerdict::ok()
}

fn check_scalar_identity(s: &KrasnerStructure, one: Elem) -> AxiomVerdict {
    let n = s.n();
    for x in 0..s.size() {
        let v = s.power_with(one, x, 1);
        if v != x {
            let mut tuple = vec![one; n];
            tuple[0] = x;
            return AxiomVerdict::fail(
                tuple.clone(),
                format!(
                    "g{} = {} but expected {}",
                    s.fmt_tuple(&tuple),
                    s.label(v),
                    s.label(x)
                ),
            );
        }
    }
    AxiomVerdict::ok()
}
