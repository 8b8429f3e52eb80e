//! Finite-rank graded rings given by structure constants over `Z_m`, with
//! checkers for homogeneous and generalized homogeneous derivations,
//! gr-primeness, graded ideals, and the commutativity criteria built on them.
//!
//! Everything is exact modular arithmetic. Quantifiers over elements are
//! decided either by reduction to basis vectors (where the predicate is
//! additive) or by budgeted enumeration.

pub mod budget;
pub mod corpus;
pub mod error;
pub mod grading;
pub mod ideal;
pub mod lab;
pub mod linalg;
pub mod maps;
pub mod modular;
pub mod primeness;
pub mod ring;
pub mod verdict;

pub use budget::Budget;
pub use error::{Error, Result};
pub use grading::{
    enumerate_homogeneous, product_ring, validate_grading, CertifiedGrading, Degree, DegreeGroup, Grading,
    GradingViolation, Homogeneous, ProductRing,
};
pub use ideal::{ideal_generate, is_graded_ideal, membership, whole_ring, IdealHandle, Side};
pub use maps::{
    classify_map, find_associated_derivation, inner_derivation, is_derivation, is_homogeneous_derivation,
    is_homogeneous_map, lie_bracket, pair_map, scalar_multiple, split_map, sum_map, AdditiveMap, Classification,
    Decision,
};
pub use primeness::{is_gr_prime, is_prime, primeness_report, PrimenessReport};
pub use ring::{is_commutative, make_ring, validate_ring, Element, Ring, RingId, RingSpec};
pub use verdict::Verdict;
