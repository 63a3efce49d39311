//! Finite commutative (m,n)-hyperstructures.

use std::collections::HashSet;

use crate::elem::{Elem, ElemSet, MAX_CARRIER};
use crate::error::{Error, Result};
use crate::table::{Choices, MultisetTable, MAX_ARITY};

/// A carrier with an m-ary hyperoperation `f`, an n-ary operation `g`, a
/// designated zero and an optional designated scalar identity.
///
/// Both tables are keyed by sorted multisets, so commutativity holds by
/// construction. Satisfying the Krasner axioms is not an invariant of this
/// type; see [`crate::axioms::verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrasnerStructure {
    name: String,
    labels: Vec<String>,
    f: MultisetTable<ElemSet>,
    g: MultisetTable<Elem>,
    zero: Elem,
    one: Option<Elem>,
}

impl KrasnerStructure {
    /// Build a structure by evaluating `f` and `g` on every sorted multiset.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fns(
        name: impl Into<String>,
        labels: Vec<String>,
        m: usize,
        n: usize,
        mut f: impl FnMut(&[Elem]) -> ElemSet,
        mut g: impl FnMut(&[Elem]) -> Elem,
        zero: Elem,
        one: Option<Elem>,
    ) -> Result<Self> {
        let size = labels.len();
        check_shape(size, m, n)?;
        let f = MultisetTable::build(size, m, &mut f).ok_or_else(|| table_too_large(size, m))?;
        let g = MultisetTable::build(size, n, &mut g).ok_or_else(|| table_too_large(size, n))?;
        Self::from_tables(name, labels, f, g, zero, one)
    }

    /// Assemble a structure from prebuilt tables, enforcing the structural
    /// invariants.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        f: MultisetTable<ElemSet>,
        g: MultisetTable<Elem>,
        zero: Elem,
        one: Option<Elem>,
    ) -> Result<Self> {
        let size = labels.len();
        check_shape(size, f.arity(), g.arity())?;
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidStructure(format!("duplicate label {label:?}")));
            }
        }
        if f.size() != size || g.size() != size {
            return Err(Error::InvalidStructure("table size differs from carrier size".into()));
        }
        let full = ElemSet::full(size);
        let mut bad = None;
        f.for_each(|ms, v| {
            if bad.is_none() && (v.is_empty() || !v.is_subset(full)) {
                bad = Some(format!("f{ms:?} = {v} is empty or leaves the carrier"));
            }
        });
        g.for_each(|ms, &v| {
            if bad.is_none() && v >= size {
                bad = Some(format!("g{ms:?} = {v} leaves the carrier"));
            }
        });
        if let Some(msg) = bad {
            return Err(Error::InvalidStructure(msg));
        }
        for x in std::iter::once(zero).chain(one) {
            if x >= size {
                return Err(Error::IndexOutOfRange { index: x, size });
            }
        }
        Ok(KrasnerStructure {
            name: name.into(),
            labels,
            f,
            g,
            zero,
            one,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.f.arity()
    }

    pub fn n(&self) -> usize {
        self.g.arity()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Option<Elem> {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    /// The whole carrier as a set.
    pub fn carrier(&self) -> ElemSet {
        ElemSet::full(self.size())
    }

    pub fn f_table(&self) -> &MultisetTable<ElemSet> {
        &self.f
    }

    pub fn g_table(&self) -> &MultisetTable<Elem> {
        &self.g
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replace the designated scalar identity.
    pub fn with_one(mut self, one: Option<Elem>) -> Result<Self> {
        if let Some(x) = one {
            self.check_index(x)?;
        }
        self.one = one;
        Ok(self)
    }

    /// Render a set with element labels.
    pub fn fmt_set(&self, set: ElemSet) -> String {
        let items: Vec<&str> = set.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Render a tuple with element labels.
    pub fn fmt_tuple(&self, tuple: &[Elem]) -> String {
        let items: Vec<&str> = tuple.iter().map(|&x| self.label(x)).collect();
        format!("({})", items.join(","))
    }

    fn check_index(&self, x: Elem) -> Result<()> {
        if x >= self.size() {
            Err(Error::IndexOutOfRange { index: x, size: self.size() })
        } else {
            Ok(())
        }
    }

    fn check_args(&self, args: &[Elem], arity: usize) -> Result<()> {
        if args.len() != arity {
            return Err(Error::ArityMismatch { expected: arity, found: args.len() });
        }
        args.iter().try_for_each(|&x| self.check_index(x))
    }

    /// `f` on an m-tuple, validated.
    pub fn eval_f(&self, args: &[Elem]) -> Result<ElemSet> {
        self.check_args(args, self.m())?;
        Ok(self.f(args))
    }

    /// `g` on an n-tuple, validated.
    pub fn eval_g(&self, args: &[Elem]) -> Result<Elem> {
        self.check_args(args, self.n())?;
        Ok(self.g(args))
    }

    /// `f` on an m-tuple in any order. Arguments must be valid.
    #[inline]
    pub fn f(&self, args: &[Elem]) -> ElemSet {
        *self.f.get(args)
    }

    #[inline]
    pub fn f_sorted(&self, sorted: &[Elem]) -> ElemSet {
        *self.f.get_sorted(sorted)
    }

    /// `g` on an n-tuple in any order. Arguments must be valid.
    #[inline]
    pub fn g(&self, args: &[Elem]) -> Elem {
        *self.g.get(args)
    }

    #[inline]
    pub fn g_sorted(&self, sorted: &[Elem]) -> Elem {
        *self.g.get_sorted(sorted)
    }

    /// `f(A_1, .., A_m)`: the union of `f` over every choice of arguments.
    pub fn f_of_sets(&self, sets: &[ElemSet]) -> ElemSet {
        debug_assert_eq!(sets.len(), self.m());
        let mut out = ElemSet::EMPTY;
        let mut choices = Choices::new(sets);
        while let Some(args) = choices.next() {
            out = out.union(self.f(args));
        }
        out
    }

    /// Elementwise image `{ g(a_1, .., a_n) : a_i in A_i }`.
    pub fn g_of_sets(&self, sets: &[ElemSet]) -> ElemSet {
        debug_assert_eq!(sets.len(), self.n());
        let mut out = ElemSet::EMPTY;
        let mut choices = Choices::new(sets);
        while let Some(args) = choices.next() {
            out.insert(self.g(args));
        }
        out
    }

    /// The iterated hyperoperation `f_(l)` on `l(m-1)+1` arguments: a left
    /// fold of `f`, taking the union over set-valued intermediates.
    pub fn eval_f_iter(&self, l: usize, args: &[Elem]) -> Result<ElemSet> {
        let m = self.m();
        let expected = iter_len(l, m)?;
        self.check_args(args, expected)?;
        let mut acc = self.f(&args[..m]);
        let mut buf = vec![0; m];
        for chunk in args[m..].chunks(m - 1) {
            buf[1..].copy_from_slice(chunk);
            let mut next = ElemSet::EMPTY;
            for x in acc {
                buf[0] = x;
                next = next.union(self.f(&buf));
            }
            acc = next;
        }
        Ok(acc)
    }

    /// The iterated operation `g_(l)` on `l(n-1)+1` arguments.
    pub fn eval_g_iter(&self, l: usize, args: &[Elem]) -> Result<Elem> {
        let n = self.n();
        let expected = iter_len(l, n)?;
        self.check_args(args, expected)?;
        let mut acc = self.g(&args[..n]);
        let mut buf = vec![0; n];
        for chunk in args[n..].chunks(n - 1) {
            buf[0] = acc;
            buf[1..].copy_from_slice(chunk);
            acc = self.g(&buf);
        }
        Ok(acc)
    }

    /// `g(a, b, 1^(n-2))` for a given identity element.
    #[inline]
    pub fn mul_with(&self, one: Elem, a: Elem, b: Elem) -> Elem {
        let n = self.n();
        let mut buf = [one; MAX_ARITY];
        buf[0] = a;
        buf[1] = b;
        self.g(&buf[..n])
    }

    /// `g(x^(t), 1^(n-t))` for `1 <= t <= n`.
    pub fn power_with(&self, one: Elem, x: Elem, t: usize) -> Elem {
        let n = self.n();
        debug_assert!((1..=n).contains(&t));
        let mut buf = [one; MAX_ARITY];
        buf[..t].fill(x);
        self.g(&buf[..n])
    }

    /// `g` with the coordinate `i` of `tuple` replaced by `x`.
    #[inline]
    pub fn g_replacing(&self, tuple: &[Elem], i: usize, x: Elem) -> Elem {
        let len = tuple.len();
        let mut buf = [0; MAX_ARITY];
        buf[..len].copy_from_slice(tuple);
        buf[i] = x;
        self.g(&buf[..len])
    }

    /// The unique `y` with `zero` in `f(x, y, zero^(m-2))`.
    pub fn inverse_of(&self, x: Elem) -> Result<Elem> {
        self.check_index(x)?;
        let candidates = self.inverse_candidates(x);
        match candidates.len() {
            1 => Ok(candidates.first().unwrap()),
            0 => Err(Error::NotCanonical(format!("{} has no inverse", self.label(x)))),
            _ => Err(Error::NotCanonical(format!(
                "{} has several inverses {}",
                self.label(x),
                self.fmt_set(candidates)
            ))),
        }
    }

    pub(crate) fn inverse_candidates(&self, x: Elem) -> ElemSet {
        let m = self.m();
        let mut buf = vec![self.zero; m];
        buf[0] = x;
        let mut out = ElemSet::EMPTY;
        for y in 0..self.size() {
            buf[1] = y;
            if self.f(&buf).contains(self.zero) {
                out.insert(y);
            }
        }
        out
    }

    /// Invertible elements: `x` with `g(x, y, 1^(n-2)) = 1` for some `y`.
    pub fn units(&self) -> Result<ElemSet> {
        let one = self.one.ok_or(Error::MissingIdentity)?;
        Ok((0..self.size())
            .filter(|&x| (0..self.size()).any(|y| self.mul_with(one, x, y) == one))
            .collect())
    }

    /// Every element `e` with `g(x, e^(n-1)) = x` for all `x`.
    pub fn scalar_identities(&self) -> ElemSet {
        (0..self.size())
            .filter(|&e| (0..self.size()).all(|x| self.power_with(e, x, 1) == x))
            .collect()
    }
}

fn iter_len(l: usize, arity: usize) -> Result<usize> {
    if l == 0 {
        return Err(Error::InvalidParameters("iteration count must be positive".into()));
    }
    Ok(l * (arity - 1) + 1)
}

fn check_shape(size: usize, m: usize, n: usize) -> Result<()> {
    if size == 0 || size > MAX_CARRIER {
        return Err(Error::InvalidStructure(format!(
            "carrier size {size} outside 1..={MAX_CARRIER}"
        )));
    }
    for arity in [m, n] {
        if !(2..=MAX_ARITY).contains(&arity) {
            return Err(Error::InvalidStructure(format!(
                "arity {arity} outside 2..={MAX_ARITY}"
            )));
        }
    }
    Ok(())
}

fn table_too_large(size: usize, arity: usize) -> Error {
    Error::InvalidStructure(format!(
        "operation table for {size} elements at arity {arity} is too large"
    ))
}

/// Labels `"0", "1", ..` for a carrier of the given size.
pub fn numeric_labels(size: usize) -> Vec<String> {
    (0..size).map(|i| i.to_string()).collect()
}
