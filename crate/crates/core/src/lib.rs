//! Exact computation of twisted conjugacy classes and their invariants for
//! permutation groups at full-enumeration scale, finitely generated abelian
//! groups as lattice quotients, and quasicyclic modules.
//!
//! Everything is integer-exact: permutation arithmetic for finite groups,
//! prime-field arithmetic for character tables, and arbitrary-precision
//! Smith normal forms for the abelian side.

pub mod abelian;
pub mod characters;
pub mod config;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod group;
pub mod morphism;
pub mod perm;
pub mod pipeline;
pub mod prufer;
pub mod quotient;
pub mod snf;
pub mod subgroup;
pub mod twisted;

mod modp;
mod util;

pub use config::Limits;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupRef};
pub use morphism::{Automorphism, GroupMorphism};
pub use perm::Perm;
pub use subgroup::{DerivedSeries, Subgroup};
