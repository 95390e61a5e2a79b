//! Enumeration of finite semigroups given by generators.
//!
//! The sequential engine ([`Snapshot::froidure_pin`]) finds every element
//! together with its short-lex least word, the left and right Cayley graphs and
//! a confluent rewriting system. [`closure`] extends a finished or partial
//! enumeration by extra generators, reusing known products, and
//! [`concurrent`] splits the work across threads.

pub mod analysis;
pub mod closure;
pub mod concurrent;
pub mod element;
pub mod error;
pub mod fropin;
pub mod persist;
pub mod snapshot;
pub mod word;

pub use element::{full_transformation_generators, parse_generators, BooleanMatrix, Element, ElementKind, Transformation};
pub use error::{Error, Result};
pub use fropin::{Step, UNLIMITED};
pub use snapshot::{Clause, Rule, Side, Snapshot, ValidationReport, Violation};
pub use word::{Letter, Word};
