//! Brute-force reference implementations over ordered tuples.
//!
//! Nothing here uses the library's multiset tables or enumeration helpers:
//! tables are read through `eval_f`/`eval_g` on every ordered tuple and sets
//! are plain `BTreeSet`s.

#![allow(dead_code)]

use std::collections::BTreeSet;

use krasner_core::{ElemSet, KrasnerStructure};

pub type Set = BTreeSet<usize>;

pub fn to_set(s: ElemSet) -> Set {
    s.iter().collect()
}

pub fn to_elems(s: &Set) -> ElemSet {
    s.iter().copied().collect()
}

/// Every ordered tuple of length `k` over `0..size`.
pub fn tuples(size: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Ordered tuples with every entry drawn from `pool`.
pub fn tuples_over(pool: &Set, k: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = pool.iter().copied().collect();
    tuples(items.len(), k)
        .into_iter()
        .map(|t| t.into_iter().map(|i| items[i]).collect())
        .collect()
}

/// Every subset of `0..size` as a sorted set.
pub fn subsets(size: usize) -> Vec<Set> {
    (0u64..1 << size)
        .map(|mask| (0..size).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

pub fn f(s: &KrasnerStructure, args: &[usize]) -> Set {
    to_set(s.eval_f(args).unwrap())
}

pub fn g(s: &KrasnerStructure, args: &[usize]) -> usize {
    s.eval_g(args).unwrap()
}

/// `g(a, b, 1^(n-2))`.
pub fn mul(s: &KrasnerStructure, a: usize, b: usize) -> usize {
    let one = s.one().unwrap();
    let mut args = vec![one; s.n()];
    args[0] = a;
    args[1] = b;
    g(s, &args)
}

pub fn weak_hyperideal(s: &KrasnerStructure, i: &Set) -> bool {
    if !i.contains(&s.zero()) {
        return false;
    }
    let closed = tuples_over(i, s.m()).iter().all(|t| f(s, t).is_subset(i));
    let absorbs = tuples(s.size(), s.n())
        .iter()
        .all(|t| !t.iter().any(|x| i.contains(x)) || i.contains(&g(s, t)));
    closed && absorbs
}

/// Weak conditions plus: for every `b` and `a_1..a_(m-1)` in `I` and every
/// position, some `x` in `I` has `b` in `f(.., x, ..)`.
pub fn strict_hyperideal(s: &KrasnerStructure, i: &Set) -> bool {
    if !weak_hyperideal(s, i) {
        return false;
    }
    let m = s.m();
    for b in i {
        for rest in tuples_over(i, m - 1) {
            for pos in 0..m {
                let solvable = i.iter().any(|&x| {
                    let mut args = rest.clone();
                    args.insert(pos, x);
                    f(s, &args).contains(b)
                });
                if !solvable {
                    return false;
                }
            }
        }
    }
    true
}

pub fn hyperideals(s: &KrasnerStructure, strict: bool) -> Vec<Set> {
    subsets(s.size())
        .into_iter()
        .filter(|i| if strict { strict_hyperideal(s, i) } else { weak_hyperideal(s, i) })
        .collect()
}

/// `x` has some power in `I`: `g(x^(t), 1^(n-t))` for `t <= n`, or an
/// iterated product of `l(n-1)+1` copies, tried for `l` up to a generous
/// bound.
pub fn in_radical(s: &KrasnerStructure, i: &Set, x: usize) -> bool {
    let n = s.n();
    let one = s.one().unwrap();
    for t in 1..=n {
        let mut args = vec![one; n];
        args[..t].fill(x);
        if i.contains(&g(s, &args)) {
            return true;
        }
    }
    let mut acc = g(s, &vec![x; n]);
    for _ in 0..4 * s.size() + 4 {
        if i.contains(&acc) {
            return true;
        }
        let mut args = vec![x; n];
        args[0] = acc;
        acc = g(s, &args);
    }
    false
}

pub fn radical(s: &KrasnerStructure, i: &Set) -> Set {
    (0..s.size()).filter(|&x| in_radical(s, i, x)).collect()
}

pub fn prime(s: &KrasnerStructure, i: &Set) -> bool {
    tuples(s.size(), s.n())
        .iter()
        .all(|t| !i.contains(&g(s, t)) || t.iter().any(|x| i.contains(x)))
}

pub fn primary(s: &KrasnerStructure, i: &Set) -> bool {
    let rad = radical(s, i);
    let one = s.one().unwrap();
    tuples(s.size(), s.n()).iter().all(|t| {
        !i.contains(&g(s, t))
            || (0..t.len()).all(|k| {
                let mut u = t.clone();
                u[k] = one;
                i.contains(&t[k]) || rad.contains(&g(s, &u))
            })
    })
}

pub fn multiplicative(s: &KrasnerStructure, set: &Set) -> bool {
    !set.is_empty() && tuples_over(set, s.n()).iter().all(|t| set.contains(&g(s, t)))
}

/// Elements `s` of `S` satisfying the S-prime condition for `I`.
pub fn s_prime_witnesses(s: &KrasnerStructure, i: &Set, mult: &Set) -> Set {
    let all = tuples(s.size(), s.n());
    mult.iter()
        .copied()
        .filter(|&w| {
            all.iter()
                .all(|t| !i.contains(&g(s, t)) || t.iter().any(|&x| i.contains(&mul(s, w, x))))
        })
        .collect()
}

/// S-primary witnesses, every coordinate satisfying one of the alternatives.
pub fn s_primary_witnesses(s: &KrasnerStructure, i: &Set, mult: &Set) -> Set {
    let rad = radical(s, i);
    let all = tuples(s.size(), s.n());
    mult.iter()
        .copied()
        .filter(|&w| {
            all.iter().all(|t| {
                !i.contains(&g(s, t))
                    || (0..t.len()).all(|k| {
                        let mut u = t.clone();
                        u[k] = w;
                        i.contains(&mul(s, w, t[k])) || rad.contains(&g(s, &u))
                    })
            })
        })
        .collect()
}

pub fn units(s: &KrasnerStructure) -> Set {
    let one = s.one().unwrap();
    (0..s.size())
        .filter(|&x| (0..s.size()).any(|y| mul(s, x, y) == one))
        .collect()
}

/// Relabel a structure along a permutation: element `x` becomes `perm[x]`.
pub fn permuted(s: &KrasnerStructure, perm: &[usize]) -> KrasnerStructure {
    let mut inv = vec![0; perm.len()];
    for (x, &p) in perm.iter().enumerate() {
        inv[p] = x;
    }
    let labels = (0..s.size()).map(|y| format!("e{}", inv[y])).collect();
    KrasnerStructure::from_fns(
        format!("{}-perm", s.name()),
        labels,
        s.m(),
        s.n(),
        |ms| {
            let args: Vec<usize> = ms.iter().map(|&y| inv[y]).collect();
            s.eval_f(&args).unwrap().iter().map(|x| perm[x]).collect()
        },
        |ms| {
            let args: Vec<usize> = ms.iter().map(|&y| inv[y]).collect();
            perm[s.eval_g(&args).unwrap()]
        },
        perm[s.zero()],
        s.one().map(|o| perm[o]),
    )
    .unwrap()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
