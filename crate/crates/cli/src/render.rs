//! Plain-text rendering of reports, with element labels.

use std::fmt::Write as _;

use krasner_core::audit::AuditReport;
use krasner_core::{AxiomReport, Counterexample, ElemSet, KrasnerStructure, PredicateOutcome, Verdict};

use crate::{Classification, ConstructionReport, RadicalReport};

pub fn axioms(s: &KrasnerStructure, r: &AxiomReport) -> String {
    let mut out = format!("{} ({} elements, m={}, n={})\n", s.name(), s.size(), s.m(), s.n());
    let identity = r.scalar_identity.as_ref().map(|v| ("scalar_identity", v));
    for (name, v) in r.mandatory().into_iter().chain(identity) {
        let status = if v.holds { "ok" } else { "FAIL" };
        let _ = write!(out, "  {name:<22} {status}");
        if let Some(d) = &v.detail {
            let _ = write!(out, "  {d}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "overall: {}", if r.passes() { "pass" } else { "fail" });
    out
}

pub fn sets(s: &KrasnerStructure, list: &[ElemSet]) -> String {
    list.iter().map(|&x| format!("{}\n", s.fmt_set(x))).collect()
}

fn counterexample(s: &KrasnerStructure, c: &Counterexample) -> String {
    match c {
        Counterexample::ZeroMissing => "the zero is missing".into(),
        Counterexample::FClosure { tuple, escaped } => {
            format!("f{} reaches {} outside the set", s.fmt_tuple(tuple), s.fmt_set(*escaped))
        }
        Counterexample::GAbsorption { tuple, image } => {
            format!("g{} = {} lies outside the set", s.fmt_tuple(tuple), s.label(*image))
        }
        Counterexample::Solvability { fixed, target } => {
            let args: Vec<&str> = fixed.iter().map(|&x| s.label(x)).chain(["x"]).collect();
            format!("{} in f({}) has no solution x inside the set", s.label(*target), args.join(","))
        }
        Counterexample::Product { tuple, image } => format!("g{} = {}", s.fmt_tuple(tuple), s.label(*image)),
        Counterexample::Ideals { ideals } => {
            let parts: Vec<String> = ideals.iter().map(|&i| s.fmt_set(i)).collect();
            format!("hyperideals {}", parts.join(" "))
        }
        Counterexample::Operation { op, tuple } => format!("{op} is not preserved at {}", s.fmt_tuple(tuple)),
        Counterexample::PerCandidate { failures } => {
            let parts: Vec<String> = failures
                .iter()
                .map(|f| format!("s={} fails at {}", s.label(f.candidate), s.fmt_tuple(&f.tuple)))
                .collect();
            parts.join("; ")
        }
    }
}

pub fn outcome(s: &KrasnerStructure, o: &PredicateOutcome) -> String {
    let mut line = o.verdict.to_string();
    if o.verdict == Verdict::Holds && !o.witnesses.is_empty() {
        let _ = write!(line, "  witnesses {}", s.fmt_set(o.witnesses));
    }
    if let Some(c) = &o.counterexample {
        let _ = write!(line, "  {}", counterexample(s, c));
    }
    if let Some(r) = &o.reason {
        let _ = write!(line, "  ({r})");
    }
    line
}

pub fn classification(s: &KrasnerStructure, c: &Classification) -> String {
    let mut out = format!("{}: I={}", s.name(), s.fmt_set(c.ideal));
    if let Some(m) = c.mult {
        let _ = write!(out, " S={}", s.fmt_set(m));
    }
    let _ = writeln!(out, " mode={} reading={}", c.mode, c.reading);
    for (name, o) in [
        ("hyperideal", &c.hyperideal),
        ("prime", &c.prime),
        ("primary", &c.primary),
        ("s_prime", &c.s_prime),
        ("s_primary", &c.s_primary),
    ] {
        let _ = writeln!(out, "  {name:<11} {}", outcome(s, o));
    }
    out
}

pub fn radical(s: &KrasnerStructure, r: &RadicalReport) -> String {
    format!(
        "I={}\n  powers {}\n  primes {}\n  {}\n",
        s.fmt_set(r.ideal),
        s.fmt_set(r.powers),
        s.fmt_set(r.primes),
        if r.powers == r.primes { "agree" } else { "DIFFER" }
    )
}

pub fn construction(s: &KrasnerStructure, r: &ConstructionReport) -> String {
    let Some(name) = &r.name else {
        return format!("{}: construction failed: {}\n", s.name(), r.error.as_deref().unwrap_or("unknown"));
    };
    let mut out = format!("{name}\n");
    if let (Some(cosets), Some(labels)) = (&r.cosets, &r.labels) {
        for (label, &c) in labels.iter().zip(cosets) {
            let _ = writeln!(out, "  {label} = {}", s.fmt_set(c));
        }
    }
    if let Some(a) = &r.axioms {
        let failures = a.failures();
        if failures.is_empty() {
            out.push_str("axioms: pass\n");
        } else {
            let _ = writeln!(out, "axioms: fail ({})", failures.join(", "));
        }
    }
    out
}

pub fn audit(r: &AuditReport) -> String {
    let mut out = format!("mode={} reading={}\n", r.mode, r.reading);
    for s in &r.structures {
        if let Some(note) = &s.note {
            let _ = writeln!(out, "  {:<16} {note}", s.name);
        }
    }
    for e in &r.entries {
        let _ = writeln!(
            out,
            "{:<30} {:<16} instances={} violations={} exploratory={} findings={}",
            e.theorem.slug(),
            e.status.to_string(),
            e.instantiations,
            e.violation_count,
            e.exploratory_instantiations,
            e.finding_count
        );
        for v in &e.violations {
            let _ = writeln!(out, "    violation [{}] {}", v.structures.join(" x "), v.detail);
        }
        for f in &e.findings {
            let _ = writeln!(out, "    finding [{}] {}", f.structures.join(" x "), f.detail);
        }
    }
    out
}
