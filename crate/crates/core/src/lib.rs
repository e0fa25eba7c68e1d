//! Exact computation of semisimple splittings and nilshadows of solvable Lie
//! algebras, and verification of simply transitive NIL-affine actions.

pub mod affine;
pub mod catalog;
pub mod error;
pub mod exactla;
pub mod jordan;
pub mod liealg;
pub mod splitting;
pub mod survey;
pub mod transitivity;

pub use error::{Error, Result};
