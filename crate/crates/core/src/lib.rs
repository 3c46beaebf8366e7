//! Combinatorial models of `(d+2)`-angulated cluster categories of type A.
//!
//! Indecomposable objects are diagonals of a cyclic polytope, `ext`
//! nonvanishing is intertwining, and weak cotorsion pairs are the pairs
//! `(X, nc X)` with `X` closed under `ncnc`. On top of that sit mutation with
//! respect to a rigid set and, for polygons, the subfactor `nc(D)/D`.

pub mod dot;
pub mod enumerate;
pub mod error;
pub mod hom;
pub mod json;
pub mod model;
pub mod mutation;
pub mod pairs;
pub mod ptolemy;
pub mod report;
pub mod set;
pub mod subfactor;

pub use dot::{emit_quiver, QuiverKind};
pub use enumerate::{enumerate_weak_cotorsion_pairs, Strategy};
pub use error::{Error, ParseError, Result};
pub use hom::{fixture, four_angulated_hexagon, ExplicitModelFile, HomModel, ModelSource};
pub use model::{enumerate_diagonals, is_diagonal, Diagonal, DiagonalSet, ModelParams};
pub use mutation::{
    check_mutation_closure, check_mutation_inverse, mutate_diagonal_d1, mutate_set_zero,
    CellDecomposition, CoreSubsets, Direction, MutationContext,
};
pub use pairs::{
    check_pair_equivalence, classify_self_pair, core, is_cluster_tilting, is_rigid,
    is_weak_cotorsion, max_rigid_cardinality, nc, ncnc, PairClass, SelfPairClass,
    WeakCotorsionPair,
};
pub use ptolemy::is_ptolemy;
pub use report::CheckReport;
pub use set::ObjectSet;
pub use subfactor::{check_subfactor_bijection, SubfactorModel};
