//! Bounded proof orderings, canonical presentations and completion.

pub mod completion;
pub mod formula;
pub mod oracle;
pub mod ordering;
pub mod proof;
pub mod term;
