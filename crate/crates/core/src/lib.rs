pub mod algebra;
pub mod equivalence;
pub mod geometry;
pub mod harness;
pub mod padic;
