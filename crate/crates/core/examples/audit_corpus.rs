//! Run every audit over the standard corpus and print a summary.

use krasner_core::audit::audit_theorems;
use krasner_core::{corpus, Mode, SPrimaryReading};

fn main() {
    let reading = match std::env::args().nth(1).as_deref() {
        Some(r) => r.parse().expect("reading"),
        None => SPrimaryReading::default(),
    };
    let start = std::time::Instant::now();
    let report = audit_theorems(&corpus::standard_corpus(), &[], Mode::Weak, reading).expect("audit");
    for s in &report.structures {
        if let Some(note) = &s.note {
            println!("{:<14} {note}", s.name);
        }
    }
    for e in &report.entries {
        println!(
            "{:<30} {:<16} inst={:<7} viol={:<4} explore={:<6} findings={}",
            e.theorem.slug(),
            e.status.to_string(),
            e.instantiations,
            e.violation_count,
            e.exploratory_instantiations,
            e.finding_count
        );
        for v in e.violations.iter().take(3) {
            println!("    VIOLATION {:?}: {}", v.structures, v.detail);
        }
        for v in e.findings.iter().take(2) {
            println!("    finding {:?}: {}", v.structures, v.detail);
        }
    }
    eprintln!("elapsed {:?}", start.elapsed());
}
