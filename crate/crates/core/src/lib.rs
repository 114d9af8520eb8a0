//! Reduced ZDD/BDD store with family-algebra operations.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod explicit;
pub mod generators;
pub mod kernel;
pub mod ops;
pub mod oracle;
pub mod text;

pub use error::{Error, Result};
pub use explicit::{ExplicitFamily, SetBits};
pub use kernel::{DiagramManager, Family, NodeRef, Semantics, VariableOrder};
pub use ops::OpKind;
