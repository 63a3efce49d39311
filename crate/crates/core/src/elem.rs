//! Element indices and small element sets.

use std::fmt;

use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Index of an element of a carrier, `0..N`.
pub type Elem = usize;

/// Largest carrier a structure may have. Element sets are 64-bit masks.
pub const MAX_CARRIER: usize = 64;

/// A subset of a carrier of at most [`MAX_CARRIER`] elements.
///
/// Ordering is by the underlying mask, which is the order used for every
/// subset enumeration in the crate.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole carrier `{0, .., size-1}`.
    pub fn full(size: usize) -> Self {
        debug_assert!(size <= MAX_CARRIER);
        if size == MAX_CARRIER {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << size) - 1)
        }
    }

    pub fn singleton(x: Elem) -> Self {
        ElemSet(1u64 << x)
    }

    pub fn insert(&mut self, x: Elem) {
        self.0 |= 1u64 << x;
    }

    pub fn remove(&mut self, x: Elem) {
        self.0 &= !(1u64 << x);
    }

    pub fn with(mut self, x: Elem) -> Self {
        self.insert(x);
        self
    }

    #[inline]
    pub fn contains(self, x: Elem) -> bool {
        x < MAX_CARRIER && self.0 & (1u64 << x) != 0
    }

    #[inline]
    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: ElemSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member.
    pub fn first(self) -> Option<Elem> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> ElemSetIter {
        ElemSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Elem> {
        self.iter().collect()
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut set = ElemSet::EMPTY;
        for x in iter {
            set.insert(x);
        }
        set
    }
}

impl<const K: usize> From<[Elem; K]> for ElemSet {
    fn from(items: [Elem; K]) -> Self {
        items.into_iter().collect()
    }
}

impl IntoIterator for ElemSet {
    type Item = Elem;
    type IntoIter = ElemSetIter;

    fn into_iter(self) -> ElemSetIter {
        self.iter()
    }
}

/// Members of an [`ElemSet`] in increasing order.
pub struct ElemSetIter(u64);

impl Iterator for ElemSetIter {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElemSetIter {}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for x in self.iter() {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<Elem>::deserialize(deserializer)?;
        if let Some(&bad) = items.iter().find(|&&x| x >= MAX_CARRIER) {
            return Err(serde::de::Error::custom(format!(
                "element index {bad} exceeds the supported carrier size"
            )));
        }
        Ok(items.into_iter().collect())
    }
}

/// Render a tuple as `(a,b,c)`.
pub fn fmt_tuple(tuple: &[Elem]) -> String {
    let inner: Vec<String> = tuple.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}
