//! Exact computations in entangled graph complexes.
//!
//! The crate works with pairs of graphs whose edges are attached as hairs to
//! the vertices of the partner graph. It provides canonical forms with
//! orientation signs, exhaustive basis enumeration, the vertex-splitting
//! differentials, properadic composition of labeled pairs, the symmetrization
//! map from tensor products of graph complexes, and exact ranks of the
//! resulting sparse integer matrices.

mod canon;
pub mod combination;
pub mod config;
pub mod differential;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod maps;
pub mod pair;
pub mod properad;
pub mod sparse;
pub mod verify;

pub use combination::LinearCombination;
pub use config::Budget;
pub use differential::{
    assemble_matrix, delta, delta_dprime, delta_gc, delta_prime, induced_delta, Complex, TermKind,
};
pub use error::{Error, Result};
pub use graph::{
    automorphism_group, canonical_form, canonicalize, connected_components, degree, Automorphism, Canon,
    CanonicalKey, OrientedGraph, Parity, Sign,
};
pub use pair::{
    class_a, class_b, enumerate_basis, pair_canonicalize, pair_degree, valency_class, BasisSlice, Bidegree,
    EntangledPair, Parities, SliceFlags, ValencyClass, ValencyFilter,
};
pub use linalg::{betti, in_span, is_cocycle, is_exact, rank_exact, BettiTable, Block, RankMethod, RankResult, Window};
pub use maps::{known_classes, sym, KnownClass};
pub use properad::{check_relation, compose, lieb_generator_images, GraElement, Relation};
pub use sparse::SparseIntMatrix;
