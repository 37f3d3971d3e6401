//! Finite logical domains, detector constructions, categories, skeleta,
//! functor categories and a symbolic size calculus.
//!
//! Everything is computed exhaustively over small explicit carriers. The
//! enumerating operations are bounded by [`config::Limits`] and fail with
//! [`config::ResourceLimit`] instead of running away.

pub mod category;
pub mod config;
pub mod constructions;
pub mod domain;
pub mod functor_cat;
pub mod io;
pub mod samples;
pub mod size;
pub mod skeleton;

pub use category::{validate_category, Category, CategorySpec, Functor, NaturalTransformation};
pub use config::{Limits, ResourceLimit, TieBreak};
pub use domain::{ElementId, LogicalDomain};
pub use skeleton::{build_skeleton, SkeletonResult};
