//! Exact-rational computations on R-forests over compact topometric spaces:
//! forest elements and their distance, the path space with its entourage
//! uniformity and the Parallel Paths construction, intervals and finite
//! trees, and symbolic 1-types over small models.
//!
//! All arithmetic is over [`Rational`]; no floating point is involved in any
//! decision.

pub mod base_space;
pub mod fixtures;
pub mod forest;
pub mod harness;
pub mod path_space;
pub mod rational;
pub mod region;
pub mod tree_geometry;
pub mod type_space;

pub use base_space::{BasePoint, BaseSpace, EntourageIndex, SpaceError, TailPoint};
pub use forest::{Breakpoint, ForestElement, ForestError};
pub use path_space::{parallel_path, ParallelPaths, Path, PathEntourage, PathError};
pub use rational::{Extended, Rational};
pub use region::{Region, SpanSet, TailSet};
pub use tree_geometry::{ccl, delta_predicate, FiniteTree, Interval, TreeError};
pub use type_space::{type_distance, DeskModel, TypeError, TypePoint};
