//! Computations with finitely generated modules over `Zp[G]` for a cyclic
//! `p`-group `G`: Tate cohomology, Yakovlev diagrams, splitting modules and
//! the verification suites built on them.

pub mod arith;
pub mod error;
pub mod format;
pub mod cohomology;
pub mod constructions;
pub mod modules;
pub mod oracle;
pub mod report;
pub mod search;
pub mod suites;
pub mod yakovlev;

pub use error::{Error, Result};
