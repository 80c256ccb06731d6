//! Rational Betti numbers of real toric varieties associated to the Weyl
//! chambers of finite irreducible root systems.

#![allow(clippy::needless_range_loop)]

pub mod cache;
pub mod char_row;
pub mod coxeter;
pub mod error;
pub mod homology;
pub mod par;
pub mod pipeline;
pub mod reduction;
pub mod root_system;
pub mod sequences;
pub mod simplicial;
pub mod weyl;

pub use error::{Error, Result};
pub use par::Execution;
pub use root_system::{CartanData, Family, RootSystemSpec};
