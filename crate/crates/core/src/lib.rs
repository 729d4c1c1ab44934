//! Three-valued MKNF model checking for ground disjunctive hybrid knowledge
//! bases.
//!
//! A knowledge base pairs a propositional ontology with a disjunctive rule
//! program. A partition `(T, P)` of its K-atoms assigns true to `T`,
//! undefined to `P \ T` and false to the rest. [`qfix::check_model`] decides
//! whether a partition is induced by a three-valued MKNF model using
//! head-cuts and a per-cut derivation fixpoint; [`qfix::enumerate_models`]
//! runs it over every partition.
//!
//! ```
//! use mknf_core::{parse_kb, parse_partition, Reasoner, check_model};
//!
//! let kb = parse_kb("#ont a & b -> c.\na.\nb :- not b.\nc :- c.").unwrap();
//! let reasoner = Reasoner::new(&kb).unwrap();
//! let part = parse_partition(&kb, "T: a. P: a, b, c.").unwrap();
//! assert!(check_model(&reasoner, &part).is_model());
//! ```

pub mod aft;
pub mod atoms;
pub mod entailment;
pub mod error;
pub mod headcut;
pub mod oracles;
pub mod parse;
pub mod partition;
pub mod qfix;
pub mod sample;
pub mod syntax;
pub mod truth;

pub use aft::{cross_check, Approximator, CrossCheck, LatticePair, Reading};
pub use atoms::{Atom, AtomId, AtomSet};
pub use entailment::{Reasoner, DEFAULT_SIG_CAP};
pub use error::{EntailmentError, KbError, ModelError, ParseError};
pub use headcut::{enumerate_headcuts, HeadCut};
pub use parse::{parse_formula, parse_kb, parse_pair, parse_partition};
pub use partition::{is_saturated, Partition};
pub use qfix::{check_model, enumerate_models, CheckStatus, CheckVerdict, Witness, DEFAULT_KA_CAP};
pub use syntax::{render_kb, Formula, KnowledgeBase, Rule};
pub use truth::TruthValue;
