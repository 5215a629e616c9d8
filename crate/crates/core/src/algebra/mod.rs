//! Exact arithmetic: finite fields with tower embeddings, and homogeneous
//! forms in four variables over integers, finite fields or 2-adic rings.

mod field;
mod form;
mod hessian;
mod text;

use thiserror::Error;

pub use field::{embed_tower, make_field, Embedding, FieldElement, FieldSpec, MAX_ORDER};
pub use form::{monomials, Domain, Form, Monomial, Scalar};
pub use hessian::{determinant, hessian_matrix, hessian_star, hessian_vanishes_mod2};
pub use text::{emit_form, parse_form};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field degree must be at least 1, got {0}")]
    FieldDegree(u32),
    #[error("GF({p}^{m}) exceeds the 2^16 element cap")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("invalid modulus {0}")]
    BadModulus(String),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("no embedding from {from} into {to}")]
    NoEmbedding { from: String, to: String },
    #[error("exponent sum {found} does not match degree {expected}")]
    ExponentSum { expected: u32, found: u32 },
    #[error("unknown domain tag `{0}`")]
    UnknownDomain(String),
    #[error("malformed coefficient `{0}`")]
    MalformedCoefficient(String),
    #[error("form is zero")]
    ZeroForm,
    #[error("scalar or form domain mismatch")]
    DomainMismatch,
    #[error("coefficient of {monomial:?} not divisible by {divisor}")]
    InexactDivision { monomial: Monomial, divisor: String },
    #[error("expected a cubic form, got degree {0}")]
    NotCubic(u32),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
