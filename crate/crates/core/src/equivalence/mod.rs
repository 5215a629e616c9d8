//! Admissible equivalences on the rational points of a cubic surface and
//! the commutative Moufang loops they carry.

mod closure;
mod cml;
pub mod oracle;
mod partition;

use thiserror::Error;

use crate::geometry::GeometryError;

pub use closure::{
    class_compose, close_admissible, forced_merges, is_admissible, property_equivalence, universal_equivalence,
    Collinearity,
};
pub use cml::{
    base_independence_check, build_cml, isomorphic, verify_cml_axioms, AxiomReport, CmlTable, Split,
    MAX_ISOMORPHISM_CLASSES,
};
pub use partition::{intersect_partitions, Partition};

#[derive(Debug, Error)]
pub enum EquivalenceError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("partitions over {0} and {1} points")]
    GroundSetMismatch(usize, usize),
    #[error("unknown property {0} (expected 2 or 3)")]
    UnknownProperty(u32),
    #[error("composition of classes {c1} and {c2} is not well defined: {first} vs {second}")]
    NotWellDefined { c1: usize, c2: usize, first: usize, second: usize },
    #[error("no collinear triple composes classes {c1} and {c2}")]
    NoComposition { c1: usize, c2: usize },
    #[error("{0} is not a class label")]
    UnknownClass(usize),
    #[error("{0} classes exceed the cap {1}")]
    TooManyClasses(usize, usize),
    #[error("{0} points exceed the cap {1}")]
    TooManyPoints(usize, usize),
    #[error("no admissible partition exists")]
    NoAdmissible,
    #[error("admissible partitions have no finest member")]
    NoFinest,
}
