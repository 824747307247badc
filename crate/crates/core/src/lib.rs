//! Convex and connected convex vertex sets of acyclic digraphs.
//!
//! A non-empty vertex set `X` of a DAG is *convex* when no directed path
//! between two members of `X` leaves `X`, and *connected* when the
//! underlying undirected graph of `D[X]` is connected. This crate provides:
//!
//! * [`Digraph`] and [`VertexSet`], with reachability, undirected
//!   connectivity and cut-vertex queries, plus edge-list / DOT ingestion
//!   ([`io`]).
//! * Convexity predicates and constructions ([`convexity`]): convexity test
//!   with a violating-path witness, convex hull, one-vertex extension of a
//!   connected convex set, and non-cut source/sink detection.
//! * Enumerators and exact statistics ([`enumeration`], [`report`]): a
//!   subset-scan oracle for both set classes and a level-by-level extension
//!   enumerator for connected convex sets.
//! * Generators for the `D_t`, `G_i` and path families and for seeded random
//!   connected DAGs ([`families`]).

pub mod convexity;
pub mod digraph;
pub mod enumeration;
mod error;
pub mod families;
pub mod io;
pub mod report;
pub mod vertex_set;

pub use convexity::{
    check_convex, convex_hull, find_extension_vertex, find_non_cut_endpoints, is_convex,
    ConvexityWitness,
};
pub use digraph::Digraph;
pub use enumeration::{
    count_cc_within, count_cc_within_containing, enumerate_brute, enumerate_cc_extension,
    verify_size_lower_bound, SizeBoundRow, SizeBoundTable, BRUTE_FORCE_MAX_N, EXTENSION_MAX_N,
};
pub use error::{Error, Result};
pub use families::{DtLabels, FamilySpec, GiLabels};
pub use report::{EnumerationReport, SetClass, Statistics};
pub use vertex_set::VertexSet;

/// Vertex label; vertices of a digraph of order `n` are `0..n`.
pub type Vertex = usize;
