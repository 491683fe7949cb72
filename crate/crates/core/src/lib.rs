//! Analysis engine for tops-only voting rules: option sets, veto structure,
//! obvious manipulations, closed-form NOM characterizations and brute-force
//! axiom oracles.
//!
//! ```
//! use nomvote_core::{analysis, budget::Budget, characterization, rules::RuleDescriptor};
//!
//! let rule = RuleDescriptor::median(3, 4, vec![1, 2]).unwrap();
//! let budget = Budget::default();
//! assert!(analysis::is_nom_veto(&rule, &budget).unwrap());
//! assert!(characterization::nom_predicate(&rule).unwrap().nom);
//! ```

pub mod analysis;
pub mod budget;
pub mod characterization;
pub mod domain;
pub mod error;
pub mod families;
pub mod oracle;
pub mod rules;

pub use error::{NomError, Result};
