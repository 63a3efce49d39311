//! Operation tables keyed by sorted multisets.
//!
//! A commutative operation of arity `k` over `N` elements is stored once per
//! multiset, `C(N+k-1, k)` entries. Lookup ranks the sorted argument list in
//! the combinatorial number system: with `a_0 <= .. <= a_{k-1}` and
//! `b_i = a_i + i` (strictly increasing) the rank is `sum C(b_i, i+1)`.

use std::sync::LazyLock;

use crate::elem::{Elem, ElemSet};

/// Largest supported arity for `f` and `g`.
pub const MAX_ARITY: usize = 12;

/// Largest table (in entries) a structure may allocate.
pub const MAX_TABLE_ENTRIES: usize = 1 << 25;

const BINOM_ROWS: usize = 96;
const BINOM_COLS: usize = MAX_ARITY + 2;

static BINOMIAL: LazyLock<Vec<[u64; BINOM_COLS]>> = LazyLock::new(|| {
    let mut rows = vec![[0u64; BINOM_COLS]; BINOM_ROWS];
    for n in 0..BINOM_ROWS {
        rows[n][0] = 1;
        for k in 1..BINOM_COLS {
            rows[n][k] = if n == 0 {
                0
            } else {
                rows[n - 1][k - 1].saturating_add(rows[n - 1][k])
            };
        }
    }
    rows
});

#[inline]
fn binomial(n: usize, k: usize) -> u64 {
    BINOMIAL[n][k]
}

/// Number of multisets of size `k` over `size` elements, if it fits the
/// supported range.
pub fn multiset_count(size: usize, k: usize) -> Option<usize> {
    if k == 0 {
        return Some(1);
    }
    if size == 0 {
        return Some(0);
    }
    let top = size + k - 1;
    if top >= BINOM_ROWS || k >= BINOM_COLS {
        return None;
    }
    usize::try_from(binomial(top, k)).ok()
}

/// Copy `args` into a fixed buffer and sort it.
#[inline]
pub(crate) fn sorted_key(args: &[Elem]) -> ([Elem; MAX_ARITY], usize) {
    let mut buf = [0usize; MAX_ARITY];
    let len = args.len();
    buf[..len].copy_from_slice(args);
    for i in 1..len {
        let v = buf[i];
        let mut j = i;
        while j > 0 && buf[j - 1] > v {
            buf[j] = buf[j - 1];
            j -= 1;
        }
        buf[j] = v;
    }
    (buf, len)
}

/// A total map from sorted multisets of a fixed arity to values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetTable<T> {
    size: usize,
    arity: usize,
    entries: Vec<T>,
}

impl<T> MultisetTable<T> {
    /// Build a table by evaluating `value` on every sorted multiset, visited
    /// in lexicographic order. Returns `None` when the table would exceed
    /// [`MAX_TABLE_ENTRIES`] or the arity is unsupported.
    pub fn build(
        size: usize,
        arity: usize,
        mut value: impl FnMut(&[Elem]) -> T,
    ) -> Option<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return None;
        }
        let len = multiset_count(size, arity)?;
        if len > MAX_TABLE_ENTRIES {
            return None;
        }
        let mut slots: Vec<Option<T>> = Vec::with_capacity(len);
        slots.resize_with(len, || None);
        let mut cursor = Multisets::new(size, arity);
        while let Some(ms) = cursor.next() {
            let r = rank_sorted(ms);
            slots[r] = Some(value(ms));
        }
        let entries = slots
            .into_iter()
            .map(|v| v.expect("every multiset rank is visited once"))
            .collect();
        Some(MultisetTable {
            size,
            arity,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value for an already sorted argument list.
    #[inline]
    pub fn get_sorted(&self, sorted: &[Elem]) -> &T {
        debug_assert_eq!(sorted.len(), self.arity);
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        &self.entries[rank_sorted(sorted)]
    }

    /// Value for an argument list in any order.
    #[inline]
    pub fn get(&self, args: &[Elem]) -> &T {
        let (buf, len) = sorted_key(args);
        self.get_sorted(&buf[..len])
    }

    /// Visit every entry with its multiset, in lexicographic order.
    pub fn for_each(&self, mut visit: impl FnMut(&[Elem], &T)) {
        let mut cursor = Multisets::new(self.size, self.arity);
        while let Some(ms) = cursor.next() {
            visit(ms, &self.entries[rank_sorted(ms)]);
        }
    }
}

#[inline]
fn rank_sorted(sorted: &[Elem]) -> usize {
    let mut r = 0u64;
    for (i, &a) in sorted.iter().enumerate() {
        r += binomial(a + i, i + 1);
    }
    r as usize
}

/// Cursor over the sorted multisets of size `k` drawn from an alphabet,
/// in lexicographic order.
///
/// ```
/// use krasner_core::table::Multisets;
/// let mut all = Vec::new();
/// let mut cursor = Multisets::new(3, 2);
/// while let Some(ms) = cursor.next() {
///     all.push(ms.to_vec());
/// }
/// assert_eq!(all.len(), 6);
/// assert_eq!(all[1], vec![0, 1]);
/// ```
pub struct Multisets {
    alphabet: Vec<Elem>,
    pos: Vec<usize>,
    buf: Vec<Elem>,
    started: bool,
    done: bool,
}

impl Multisets {
    /// Multisets over `0..size`.
    pub fn new(size: usize, k: usize) -> Self {
        Self::from_alphabet((0..size).collect(), k)
    }

    /// Multisets over the members of `set`.
    pub fn over(set: ElemSet, k: usize) -> Self {
        Self::from_alphabet(set.to_vec(), k)
    }

    fn from_alphabet(alphabet: Vec<Elem>, k: usize) -> Self {
        let done = alphabet.is_empty() && k > 0;
        let buf = if done { Vec::new() } else { vec![alphabet.first().copied().unwrap_or(0); k] };
        Multisets {
            alphabet,
            pos: vec![0; k],
            buf,
            started: false,
            done,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<&[Elem]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.buf);
        }
        if self.pos.is_empty() {
            self.done = true;
            return None;
        }
        let top = self.alphabet.len() - 1;
        let k = self.pos.len();
        let mut i = k;
        while i > 0 && self.pos[i - 1] == top {
            i -= 1;
        }
        if i == 0 {
            self.done = true;
            return None;
        }
        let p = self.pos[i - 1] + 1;
        for j in i - 1..k {
            self.pos[j] = p;
            self.buf[j] = self.alphabet[p];
        }
        Some(&self.buf)
    }
}

/// Cursor over the Cartesian product of a list of element sets, in
/// lexicographic order.
pub struct Choices {
    options: Vec<Vec<Elem>>,
    pos: Vec<usize>,
    buf: Vec<Elem>,
    started: bool,
    done: bool,
}

impl Choices {
    pub fn new(sets: &[ElemSet]) -> Self {
        let options: Vec<Vec<Elem>> = sets.iter().map(|s| s.to_vec()).collect();
        let done = options.iter().any(|o| o.is_empty());
        let buf = if done { Vec::new() } else { options.iter().map(|o| o[0]).collect() };
        Choices {
            pos: vec![0; options.len()],
            options,
            buf,
            started: false,
            done,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<&[Elem]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.buf);
        }
        let mut i = self.pos.len();
        while i > 0 {
            let j = i - 1;
            if self.pos[j] + 1 < self.options[j].len() {
                self.pos[j] += 1;
                self.buf[j] = self.options[j][self.pos[j]];
                for t in i..self.pos.len() {
                    self.pos[t] = 0;
                    self.buf[t] = self.options[t][0];
                }
                return Some(&self.buf);
            }
            i -= 1;
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(mut c: Multisets) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        while let Some(ms) = c.next() {
            out.push(ms.to_vec());
        }
        out
    }

    #[test]
    fn multisets_are_lexicographic_and_complete() {
        let all = collect(Multisets::new(3, 3));
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[9], vec![2, 2, 2]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|m| m.windows(2).all(|w| w[0] <= w[1])));
    }

    #[test]
    fn multisets_over_a_subset() {
        let all = collect(Multisets::over(ElemSet::from([1, 4]), 2));
        assert_eq!(all, vec![vec![1, 1], vec![1, 4], vec![4, 4]]);
        assert!(collect(Multisets::over(ElemSet::EMPTY, 2)).is_empty());
        assert_eq!(collect(Multisets::new(4, 0)), vec![Vec::<Elem>::new()]);
    }

    #[test]
    fn rank_is_a_bijection() {
        for (size, k) in [(1, 3), (4, 2), (5, 3), (3, 5), (8, 4)] {
            let count = multiset_count(size, k).unwrap();
            let mut seen = vec![false; count];
            let mut c = Multisets::new(size, k);
            while let Some(ms) = c.next() {
                let r = rank_sorted(ms);
                assert!(!seen[r]);
                seen[r] = true;
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }

    #[test]
    fn table_lookup_ignores_argument_order() {
        let t = MultisetTable::build(5, 3, |ms| ms.iter().sum::<usize>()).unwrap();
        assert_eq!(t.len(), 35);
        assert_eq!(*t.get(&[4, 0, 2]), 6);
        assert_eq!(*t.get(&[2, 4, 0]), 6);
        assert_eq!(*t.get_sorted(&[1, 1, 1]), 3);
    }

    #[test]
    fn choices_enumerate_the_product() {
        let mut c = Choices::new(&[ElemSet::from([0, 2]), ElemSet::from([1]), ElemSet::from([3, 5])]);
        let mut out = Vec::new();
        while let Some(t) = c.next() {
            out.push(t.to_vec());
        }
        assert_eq!(
            out,
            vec![vec![0, 1, 3], vec![0, 1, 5], vec![2, 1, 3], vec![2, 1, 5]]
        );
        let mut empty = Choices::new(&[ElemSet::from([0]), ElemSet::EMPTY]);
        assert!(empty.next().is_none());
    }
}
