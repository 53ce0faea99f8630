//! Exact computations with automorphic Lie algebras attached to the binary
//! polyhedral groups.

pub mod bipoly;
pub mod error;
pub mod export;
pub mod exactnum;
pub mod par;
pub mod polyhedral;
pub mod rootsystem;
pub mod alia;
pub mod intertwiner;

pub use error::{AliaError, Result};
