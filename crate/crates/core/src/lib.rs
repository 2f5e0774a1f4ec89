//! Interval posets of permutations and their geometric counterparts: polygon
//! dissections with a diagonal frame condition.
//!
//! The crate provides
//!
//! * [`permutation`] — permutations, their intervals, simple/separable/
//!   block-wise-simple predicates, sums and inflation;
//! * [`poset`] — interval posets as interval sets, Hasse structure,
//!   classification, validation and canonical realization;
//! * [`dissection`] — convex-polygon dissections with possibly crossing
//!   diagonals, the diagonally framed property, quadrilateral/triangle
//!   detection, intersectional components and exhaustive enumerators;
//! * [`bijection`] — the maps between posets and dissections, the recursive
//!   decomposition, and the separable-family pair of maps;
//! * [`enumeration`] — exact counting: closed formulas, classical sequences,
//!   and brute-force counters that keep everything honest;
//! * [`verification`] — the structural oracle suites driven by the CLI.

pub mod bijection;
pub mod dissection;
pub mod enumeration;
pub mod permutation;
pub mod poset;
pub mod verification;

pub use bijection::{dissection_of, poset_of, DecompositionNode, NodeKind};
pub use dissection::{Diagonal, Dissection};
pub use permutation::{Interval, Permutation};
pub use poset::{IntervalPoset, PosetShape};
