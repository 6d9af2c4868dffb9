//! Permutation groups, graph automorphisms and machine-checkable
//! certificates for edge-primitive and s-arc-transitive graphs.

pub mod actions;
pub mod certify;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod group;
pub mod io;
pub mod perm;

pub use error::{Error, Result};
pub use group::{Group, GroupFingerprint};
pub use perm::Permutation;
