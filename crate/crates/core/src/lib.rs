//! Orbits of `GL(V)` on a product of two Grassmannians and a partial flag
//! variety (type D), or on a product of two partial flag varieties (type A).
//!
//! Orbits are direct sums of indecomposable quiver representations. The
//! crate enumerates them, compares them by rank numbers and by elementary
//! moves, and checks both against exact linear algebra over a prime field.

pub mod bracket;
pub mod error;
pub mod json;
pub mod oracle;
pub mod order;
pub mod quiver;
pub mod regions;

pub use bracket::{bracket, object_from_ranks, rank_compare, rank_leq, rank_vector, BracketTable, RankVector, Verdict};
pub use error::{Error, Result};
pub use order::{
    enumerate_objects, find_dominant_move, move_chain, move_poset, rank_poset, transitive_reduction, weak_poset,
    MoveEdge, OrbitPoset, OrderKind, Relation,
};
pub use quiver::{
    col, indec_dim, list_indecomposables, object_dim, roads_of, validate, Catalog, DimVector, FlagObject, IndecId,
    Shape, ValidationReport,
};
pub use regions::{
    apply_move, is_admissible, is_minimal_admissible, regions_between, weak_move_roads, Region, RegionKind,
    RegionParams,
};
