//! Finite commutative Krasner (m,n)-hyperrings.
//!
//! Structures are stored as operation tables keyed by sorted multisets. On
//! top of them the crate decides the axioms, enumerates hyperideals, evaluates
//! the prime, primary, S-prime and S-primary predicates with explicit
//! witnesses or counterexamples, builds quotients, products, substructures and
//! homomorphisms, and audits the S-prime/S-primary theorems over a corpus.
//!
//! ```
//! use krasner_core::{corpus, ideals, ElemSet, Mode};
//!
//! let z4 = corpus::build_zk_ring(4, 2, 2).unwrap();
//! let nil = ideals::radical_powers(&z4, ElemSet::from([0])).unwrap();
//! assert_eq!(nil, ElemSet::from([0, 2]));
//! assert!(ideals::is_primary(&z4, ElemSet::from([0]), Mode::Weak).holds());
//! ```

pub mod audit;
pub mod axioms;
pub mod constructions;
pub mod corpus;
pub mod elem;
pub mod error;
pub mod ideals;
pub mod outcome;
pub mod s_theory;
pub mod structure;
pub mod table;

use serde::{Deserialize, Serialize};

pub use axioms::{verify_axioms, AxiomReport, AxiomVerdict};
pub use elem::{Elem, ElemSet};
pub use error::{Error, Result};
pub use ideals::Mode;
pub use outcome::{Counterexample, PredicateOutcome, Verdict};
pub use s_theory::SPrimaryReading;
pub use structure::KrasnerStructure;

/// Size bounds for the exhaustive procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest carrier `verify_axioms` accepts.
    pub max_verify_size: usize,
    /// Largest carrier for subset enumerations (hyperideals, multiplicative
    /// subsets, subhyperrings).
    pub max_enumeration_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_verify_size: 8,
            max_enumeration_size: 16,
        }
    }
}
