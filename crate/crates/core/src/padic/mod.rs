//! Truncated 2-adic arithmetic and Hensel lifting.

mod cubic;
mod lift;
mod scalar;
mod tangent;
mod transform;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::geometry::GeometryError;

pub use cubic::{PadicCubic, PadicPoint};
pub use lift::{
    collinear_third_padic, hensel_lift_line, hensel_lift_point, lift_collinear_triple, LineChart, LineLift, PointLift,
    ThirdPoint,
};
pub use scalar::{PadicScalar, QuadExtScalar, Valuation, MAX_PRECISION};
pub use tangent::{tangent_limit_experiment, TangentLimitRow, TangentLimitTable};
pub use transform::{classify_a, phi1_transform, ClassTag};

#[derive(Debug, Error)]
pub enum PadicError {
    #[error("inverse of a non-unit")]
    NonUnitInverse,
    #[error("value not divisible by 2^{0}")]
    InexactDivision(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("precision {0} outside 1..=64")]
    BadPrecision(u32),
    #[error("expected an integer or 2-adic cubic form")]
    UnsupportedForm,
    #[error("all coordinates vanish to working precision")]
    ZeroPoint,
    #[error("reduction {0} is not on the reduced surface")]
    NotOnReduction(String),
    #[error("reduction {0} is a singular point (no unit partial derivative)")]
    SingularReduction(String),
    #[error("starting values do not reduce to {0}")]
    BadStart(String),
    #[error("Newton iteration stalled at step {step}: residual valuation {valuation}")]
    NewtonStall { step: usize, valuation: String },
    #[error("Jacobian of the line equations is singular mod 2")]
    SingularJacobian,
    #[error("line {0} is not on the reduced surface")]
    LineNotOnReduction(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("depth {depth} exceeds half the precision {precision}")]
    DepthBudget { depth: u32, precision: u32 },
    #[error("point is not base-rational")]
    NotBaseRational,
}
