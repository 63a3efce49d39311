//! The JSON structure file.
//!
//! ```text
//! {"name": "z2", "m": 2, "n": 2, "carrier": ["0","1"], "zero": "0", "one": "1",
//!  "f": {"0,0": [0], "0,1": [1], "1,1": [0]},
//!  "g": {"0,0": 0, "0,1": 0, "1,1": 1}}
//! ```
//!
//! Keys are ascending index lists joined by commas, one per sorted multiset.
//! `zero` and `one` are labels; table values are indices.

use std::fmt::{self, Write as _};
use std::marker::PhantomData;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use thiserror::Error;

use crate::elem::{Elem, ElemSet, MAX_CARRIER};
use crate::error::{Error, Result};
use crate::structure::KrasnerStructure;
use crate::table::{multiset_count, Multisets, MultisetTable, MAX_ARITY, MAX_TABLE_ENTRIES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax: {0}")]
    Syntax(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("key {key:?} in {op} is not a comma-separated index list")]
    MalformedKey { op: char, key: String },
    #[error("key {key:?} in {op} has {found} indices, expected {expected}")]
    WrongArity { op: char, key: String, expected: usize, found: usize },
    #[error("key {key:?} in {op} is not sorted ascending")]
    UnsortedKey { op: char, key: String },
    #[error("key {key:?} appears twice in {op}")]
    DuplicateKey { op: char, key: String },
    #[error("{op} has no entry for {key:?}")]
    MissingEntry { op: char, key: String },
    #[error("index {index} out of range in {context}")]
    IndexOutOfRange { context: String, index: usize },
    #[error("f entry {key:?} is empty")]
    EmptyValue { key: String },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("label {0:?} appears twice in the carrier")]
    DuplicateLabel(String),
    #[error("{0}")]
    Invalid(String),
}

/// Map entries in file order, duplicates kept.
struct Entries<T>(Vec<(String, T)>);

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Entries<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor<T>(PhantomData<T>);

        impl<'de, T: Deserialize<'de>> Visitor<'de> for EntriesVisitor<T> {
            type Value = Entries<T>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from multiset keys to values")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Entries<T>, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    out.push((k, v));
                }
                Ok(Entries(out))
            }
        }

        deserializer.deserialize_map(EntriesVisitor(PhantomData))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    name: String,
    m: usize,
    n: usize,
    carrier: Vec<String>,
    zero: String,
    #[serde(default)]
    one: Option<String>,
    f: Entries<Vec<usize>>,
    g: Entries<usize>,
}

fn parse_key(op: char, key: &str, arity: usize, size: usize) -> Result<Vec<Elem>, FormatError> {
    let parts: std::result::Result<Vec<usize>, _> = key.split(',').map(|p| p.trim().parse::<usize>()).collect();
    let parts = parts.map_err(|_| FormatError::MalformedKey { op, key: key.to_string() })?;
    if parts.len() != arity {
        return Err(FormatError::WrongArity {
            op,
            key: key.to_string(),
            expected: arity,
            found: parts.len(),
        });
    }
    if let Some(&index) = parts.iter().find(|&&i| i >= size) {
        return Err(FormatError::IndexOutOfRange {
            context: format!("{op} key {key:?}"),
            index,
        });
    }
    if parts.windows(2).any(|w| w[0] > w[1]) {
        return Err(FormatError::UnsortedKey { op, key: key.to_string() });
    }
    Ok(parts)
}

fn key_string(ms: &[Elem]) -> String {
    ms.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Fill a table from file entries, rejecting duplicates and gaps.
fn build_table<T: Clone, V>(
    op: char,
    entries: Vec<(String, V)>,
    arity: usize,
    size: usize,
    mut convert: impl FnMut(&str, V) -> Result<T, FormatError>,
) -> Result<MultisetTable<T>, FormatError> {
    if !(2..=MAX_ARITY).contains(&arity) {
        return Err(FormatError::Invalid(format!("arity {arity} outside 2..={MAX_ARITY}")));
    }
    match multiset_count(size, arity) {
        Some(c) if c <= MAX_TABLE_ENTRIES => {}
        _ => return Err(FormatError::Invalid(format!("{op} table too large"))),
    }
    let mut map = std::collections::BTreeMap::new();
    for (key, value) in entries {
        let ms = parse_key(op, &key, arity, size)?;
        if map.contains_key(&ms) {
            return Err(FormatError::DuplicateKey { op, key });
        }
        let v = convert(&key, value)?;
        map.insert(ms, v);
    }
    let mut cursor = Multisets::new(size, arity);
    while let Some(ms) = cursor.next() {
        if !map.contains_key(ms) {
            return Err(FormatError::MissingEntry { op, key: key_string(ms) });
        }
    }
    Ok(MultisetTable::build(size, arity, |ms| map[ms].clone()).expect("size checked above"))
}

/// Parse a structure file. Structural invariants are enforced; the axioms are
/// not checked.
pub fn parse_structure(text: &str) -> Result<KrasnerStructure> {
    let doc: Document = serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    let size = doc.carrier.len();
    if size == 0 || size > MAX_CARRIER {
        return Err(FormatError::Invalid(format!("carrier size {size} outside 1..={MAX_CARRIER}")).into());
    }
    let mut seen = std::collections::HashSet::new();
    for label in &doc.carrier {
        if !seen.insert(label.as_str()) {
            return Err(FormatError::DuplicateLabel(label.clone()).into());
        }
    }
    let lookup = |label: &str| {
        doc.carrier
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| FormatError::UnknownLabel(label.to_string()))
    };
    let zero = lookup(&doc.zero)?;
    let one = doc.one.as_deref().map(lookup).transpose()?;
    let f = build_table('f', doc.f.0, doc.m, size, |key, v: Vec<usize>| {
        if v.is_empty() {
            return Err(FormatError::EmptyValue { key: key.to_string() });
        }
        if let Some(&index) = v.iter().find(|&&i| i >= size) {
            return Err(FormatError::IndexOutOfRange {
                context: format!("f value at {key:?}"),
                index,
            });
        }
        Ok(v.into_iter().collect::<ElemSet>())
    })?;
    let g = build_table('g', doc.g.0, doc.n, size, |key, v: usize| {
        if v >= size {
            return Err(FormatError::IndexOutOfRange {
                context: format!("g value at {key:?}"),
                index: v,
            });
        }
        Ok(v)
    })?;
    KrasnerStructure::from_tables(doc.name, doc.carrier, f, g, zero, one).map_err(|e| match e {
        Error::InvalidStructure(msg) => Error::Format(FormatError::Invalid(msg)),
        other => other,
    })
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Canonical text: fixed field order, one table entry per line, keys in
/// lexicographic order of their index tuples, trailing newline.
pub fn serialize_structure(s: &KrasnerStructure) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", json_str(s.name()));
    let _ = writeln!(out, "  \"m\": {},", s.m());
    let _ = writeln!(out, "  \"n\": {},", s.n());
    let labels: Vec<String> = s.labels().iter().map(|l| json_str(l)).collect();
    let _ = writeln!(out, "  \"carrier\": [{}],", labels.join(", "));
    let _ = writeln!(out, "  \"zero\": {},", json_str(s.label(s.zero())));
    if let Some(one) = s.one() {
        let _ = writeln!(out, "  \"one\": {},", json_str(s.label(one)));
    }
    let mut rows = Vec::new();
    let mut cursor = Multisets::new(s.size(), s.m());
    while let Some(ms) = cursor.next() {
        let v: Vec<String> = s.f_sorted(ms).iter().map(|x| x.to_string()).collect();
        rows.push(format!("    \"{}\": [{}]", key_string(ms), v.join(", ")));
    }
    let _ = writeln!(out, "  \"f\": {{\n{}\n  }},", rows.join(",\n"));
    rows.clear();
    let mut cursor = Multisets::new(s.size(), s.n());
    while let Some(ms) = cursor.next() {
        rows.push(format!("    \"{}\": {}", key_string(ms), s.g_sorted(ms)));
    }
    let _ = writeln!(out, "  \"g\": {{\n{}\n  }}", rows.join(",\n"));
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_zk_ring, k24, k33};

    #[test]
    fn round_trip() {
        for s in [k33(), k24(), build_zk_ring(3, 3, 2).unwrap()] {
            let text = serialize_structure(&s);
            let back = parse_structure(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(serialize_structure(&back), text);
        }
    }

    #[test]
    fn accepts_any_key_order_and_spacing() {
        let text = r#"{"f": {"1,1": [0], "0,1": [1], "0,0": [0]},
            "g": {"0, 0": 0, "0,1": 0, "1,1": 1},
            "name": "z2", "m": 2, "n": 2, "carrier": ["a","b"], "zero": "a", "one": "b"}"#;
        let s = parse_structure(text).unwrap();
        assert_eq!(s.eval_f(&[1, 1]).unwrap(), ElemSet::from([0]));
        assert_eq!(s.one(), Some(1));
    }

    fn z2_with(f: &str, g: &str) -> String {
        format!(
            r#"{{"name":"t","m":2,"n":2,"carrier":["0","1"],"zero":"0","f":{{{f}}},"g":{{{g}}}}}"#
        )
    }

    const F: &str = r#""0,0":[0],"0,1":[1],"1,1":[0]"#;
    const G: &str = r#""0,0":0,"0,1":0,"1,1":1"#;

    fn err(text: &str) -> FormatError {
        match parse_structure(text) {
            Err(Error::Format(e)) => e,
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(parse_structure(&z2_with(F, G)).is_ok());
        assert!(matches!(
            err(&z2_with(r#""0,0":[0],"1,1":[0]"#, G)),
            FormatError::MissingEntry { op: 'f', .. }
        ));
        assert!(matches!(
            err(&z2_with(&format!("{F},\"0,1\":[0]"), G)),
            FormatError::DuplicateKey { op: 'f', .. }
        ));
        assert!(matches!(
            err(&z2_with(r#""0,0":[0],"1,0":[1],"1,1":[0]"#, G)),
            FormatError::UnsortedKey { .. }
        ));
        assert!(matches!(
            err(&z2_with(F, r#""0,0":0,"0,1":0,"1,1":2"#)),
            FormatError::IndexOutOfRange { index: 2, .. }
        ));
        assert!(matches!(
            err(&z2_with(F, r#""0,0":0,"0,x":0,"1,1":1"#)),
            FormatError::MalformedKey { .. }
        ));
        assert!(matches!(
            err(&z2_with(r#""0,0":[],"0,1":[1],"1,1":[0]"#, G)),
            FormatError::EmptyValue { .. }
        ));
        assert!(matches!(err("{"), FormatError::Syntax(_)));
    }
}
