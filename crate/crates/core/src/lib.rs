//! Scott-topology workbench: ordinals below ε₀, finite posets, Scott closed
//! sets, faithfulness predicates, the symbolic poset 𝒵 and a counterexample corpus.

pub mod corpus;
pub mod error;
pub mod faithfulness;
pub mod ordinal;
pub mod poset;
pub mod scott;
pub mod subset;
pub mod suites;
pub mod zed;

pub use error::{Error, Result};
pub use ordinal::{Ordinal, OrdinalOrTop, OrdString};
pub use poset::FinitePoset;
pub use subset::Subset;
