//! Projective geometry of cubic surfaces over finite fields.

mod cycle;
mod point;
mod singular;
mod surface;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use cycle::{
    discriminant, eval_binary, quadratic_has_rational_root, rational_roots, restrict, BinaryCubic, CycleTag,
    IntersectionCycle,
};
pub use point::{lines_in_p3, points_of_p3, ProjLine, ProjPoint, MAX_LINE_FIELD, MAX_SCAN_FIELD};
pub use singular::{
    default_smoothness_bound, singular_points_up_to, SingularPoint, SmoothnessReport, MAX_SINGULAR_BOUND,
};
pub use surface::{Composition, EckardtInfo, LocalExpansion, Surface};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("surface form must have finite-field coefficients")]
    NotOverField,
    #[error("expected a cubic form, got degree {0}")]
    NotCubic(u32),
    #[error("form is zero")]
    ZeroForm,
    #[error("GF({q}) exceeds the enumeration cap {cap}")]
    FieldTooLarge { q: u32, cap: u32 },
    #[error("points do not span a line")]
    DegenerateLine,
    #[error("point {0} is not on the surface")]
    NotOnSurface(String),
    #[error("point {0} is singular (zero gradient)")]
    SingularPoint(String),
    #[error("a rational line of the surface passes through {0}")]
    RationalLineThrough(String),
    #[error("tangent cone at {0} vanishes identically")]
    DegenerateTangentCone(String),
    #[error("extension degree bound {bound} outside 1..={cap} or beyond the field cap")]
    BoundTooLarge { bound: u32, cap: u32 },
    #[error("point {0} is not on the tangency locus")]
    NotOnLocus(String),
}
