use crate::axioms::verify_axioms;
use crate::elem::{Elem, ElemSet, MAX_CARRIER};
use crate::error::{Error, Result};
use crate::structure::{numeric_labels, KrasnerStructure};

/// The ternary example: `R = {0,1,2}` with a 3-ary hyperoperation and a
/// 3-ary operation, identity `1`.
pub fn k33() -> KrasnerStructure {
    let full = ElemSet::from([0, 1, 2]);
    KrasnerStructure::from_fns(
        "k33",
        numeric_labels(3),
        3,
        3,
        |ms| match ms {
            [0, 0, 0] => ElemSet::from([0]),
            [0, 0, 1] | [0, 1, 1] | [1, 1, 1] => ElemSet::from([1]),
            [0, 0, 2] | [0, 2, 2] | [2, 2, 2] => ElemSet::from([2]),
            _ => full,
        },
        |ms| match ms {
            [0, _, _] => 0,
            [1, 1, 1] => 1,
            _ => 2,
        },
        0,
        Some(1),
    )
    .expect("static table is well formed")
}

/// The (2,4) example: `R = {0,1,2,3}`, binary hyperoperation with
/// `A = {0,1}` and `B = {2,3}`, and `g = 2` on four arguments from `B`,
/// otherwise `0`. The element labelled `1` is designated as identity even
/// though `g` has none.
pub fn k24() -> KrasnerStructure {
    let a = ElemSet::from([0, 1]);
    let b = ElemSet::from([2, 3]);
    KrasnerStructure::from_fns(
        "k24",
        numeric_labels(4),
        2,
        4,
        |ms| match ms {
            [0, x] => ElemSet::singleton(*x),
            [1, 1] | [3, 3] => a,
            [1, 2] => ElemSet::from([3]),
            [1, 3] => b,
            [2, 2] => ElemSet::from([0]),
            [2, 3] => ElemSet::from([1]),
            _ => unreachable!("sorted pairs over four elements"),
        },
        |ms| if ms.iter().all(|&x| b.contains(x)) { 2 } else { 0 },
        0,
        Some(1),
    )
    .expect("static table is well formed")
}

pub fn reference_examples() -> Vec<KrasnerStructure> {
    vec![k33(), k24()]
}

/// `z{k}` for the binary ring, `z{k}-m{m}n{n}` otherwise.
pub fn zk_name(k: usize, m: usize, n: usize) -> String {
    if (m, n) == (2, 2) {
        format!("z{k}")
    } else {
        format!("z{k}-m{m}n{n}")
    }
}

/// `Z_k` with the m-ary sum as a singleton-valued hyperoperation and the
/// n-ary product.
///
/// The result is returned without running the axiom check. When `m - 1`
/// shares a factor with `k` the sum has several scalar neutrals (for example
/// both `0` and `1` in `Z_2` with a ternary sum), so those structures are not
/// canonical hypergroups.
pub fn build_zk_ring(k: usize, m: usize, n: usize) -> Result<KrasnerStructure> {
    if k == 0 || k > MAX_CARRIER {
        return Err(Error::InvalidParameters(format!(
            "modulus {k} outside 1..={MAX_CARRIER}"
        )));
    }
    KrasnerStructure::from_fns(
        zk_name(k, m, n),
        numeric_labels(k),
        m,
        n,
        |ms| ElemSet::singleton(ms.iter().sum::<usize>() % k),
        |ms| ms.iter().fold(1 % k, |acc, &x| acc * x % k),
        0,
        Some(1 % k),
    )
}

/// The quotient of `Z_k` by a group `G` of units acting multiplicatively.
///
/// Elements are the orbits `xG`, labelled by their smallest member; the sum
/// of orbits is the set of orbits of all sums of representatives, and the
/// product is the orbit of a product. The axioms are checked and failing
/// parameters are rejected.
pub fn build_krasner_quotient(k: usize, units: &[usize], m: usize, n: usize) -> Result<KrasnerStructure> {
    if !(2..=MAX_CARRIER).contains(&k) {
        return Err(Error::InvalidParameters(format!("modulus {k} outside 2..={MAX_CARRIER}")));
    }
    let group: Vec<usize> = {
        let mut g: Vec<usize> = units.iter().map(|&u| u % k).collect();
        g.sort_unstable();
        g.dedup();
        g
    };
    if !group.contains(&1) {
        return Err(Error::InvalidParameters("the unit group must contain 1".into()));
    }
    for &u in &group {
        if gcd(u, k) != 1 {
            return Err(Error::InvalidParameters(format!("{u} is not a unit mod {k}")));
        }
        for &v in &group {
            if !group.contains(&(u * v % k)) {
                return Err(Error::InvalidParameters(format!(
                    "{u}*{v} mod {k} leaves the unit group"
                )));
            }
        }
    }
    // Orbit index of every residue; orbits are numbered by smallest member.
    let mut class_of = vec![usize::MAX; k];
    let mut reps = Vec::new();
    for x in 0..k {
        if class_of[x] == usize::MAX {
            for &u in &group {
                class_of[x * u % k] = reps.len();
            }
            reps.push(x);
        }
    }
    let orbits: Vec<Vec<usize>> = (0..reps.len())
        .map(|c| (0..k).filter(|&x| class_of[x] == c).collect())
        .collect();
    if reps.len() > MAX_CARRIER {
        return Err(Error::InvalidParameters("too many orbits".into()));
    }
    let labels = reps.iter().map(|r| r.to_string()).collect();
    let sums = |ms: &[Elem]| {
        let mut out = ElemSet::EMPTY;
        let mut idx = vec![0usize; ms.len()];
        loop {
            let total: usize = ms.iter().zip(&idx).map(|(&c, &i)| orbits[c][i]).sum();
            out.insert(class_of[total % k]);
            let mut j = ms.len();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < orbits[ms[j]].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    };
    let product = |ms: &[Elem]| class_of[ms.iter().fold(1 % k, |acc, &c| acc * reps[c] % k)];
    let mut name = format!(
        "kq{k}-u{}",
        group.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(".")
    );
    if (m, n) != (2, 2) {
        name.push_str(&format!("-m{m}n{n}"));
    }
    let s = KrasnerStructure::from_fns(name, labels, m, n, sums, product, 0, Some(class_of[1]))?;
    let report = verify_axioms(&s, true)?;
    if !report.passes() {
        return Err(Error::AxiomFailure(Box::new(report)));
    }
    Ok(s)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The corpus the audit runs on by default: both reference examples, `Z_k`
/// for `k = 1..8` at arities (2,2), (3,3) and (2,4), and the orbit quotients
/// of `Z_5` by `{1,4}` and of `Z_7` by `{1,2,4}`.
pub fn standard_corpus() -> Vec<KrasnerStructure> {
    let mut out = reference_examples();
    for (m, n) in [(2, 2), (3, 3), (2, 4)] {
        for k in 1..=8 {
            out.push(build_zk_ring(k, m, n).expect("valid parameters"));
        }
    }
    out.push(build_krasner_quotient(5, &[1, 4], 2, 2).expect("verified quotient"));
    out.push(build_krasner_quotient(7, &[1, 2, 4], 2, 2).expect("verified quotient"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_tables() {
        let s = k33();
        assert_eq!(s.eval_f(&[1, 1, 2]).unwrap(), ElemSet::from([0, 1, 2]));
        assert_eq!(s.eval_f(&[2, 0, 0]).unwrap(), ElemSet::from([2]));
        assert_eq!(s.eval_g(&[2, 1, 1]).unwrap(), 2);
        assert_eq!(s.eval_g(&[1, 0, 2]).unwrap(), 0);
        let t = k24();
        assert_eq!(t.eval_f(&[1, 1]).unwrap(), ElemSet::from([0, 1]));
        assert_eq!(t.eval_f(&[3, 1]).unwrap(), ElemSet::from([2, 3]));
        assert_eq!(t.eval_g(&[1, 2, 2, 3]).unwrap(), 0);
        assert_eq!(t.eval_g(&[3, 2, 2, 3]).unwrap(), 2);
    }

    #[test]
    fn orbit_quotients() {
        let s = build_krasner_quotient(5, &[1, 4], 2, 2).unwrap();
        assert_eq!(s.labels(), ["0", "1", "2"]);
        // {1,4} + {1,4} = {2, 0, 3}: orbits {0} and {2,3}.
        assert_eq!(s.eval_f(&[1, 1]).unwrap(), ElemSet::from([0, 2]));
        assert_eq!(s.one(), Some(1));
        assert!(build_krasner_quotient(7, &[1, 2, 4], 2, 2).is_ok());
        let plain = build_krasner_quotient(6, &[1], 2, 2).unwrap();
        assert_eq!(plain.f_table(), build_zk_ring(6, 2, 2).unwrap().f_table());
        assert!(matches!(
            build_krasner_quotient(6, &[1, 2], 2, 2),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn corpus_shape() {
        let c = standard_corpus();
        assert_eq!(c.len(), 2 + 24 + 2);
        let mut names: Vec<&str> = c.iter().map(|s| s.name()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), c.len());
        let z1 = build_zk_ring(1, 2, 2).unwrap();
        assert_eq!(z1.zero(), 0);
        assert_eq!(z1.one(), Some(0));
    }
}
