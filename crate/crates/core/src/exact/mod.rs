//! Exact arithmetic: rationals, quadratic scalars, phases, polynomials.

pub mod linalg;
pub mod multipoly;
pub mod phase;
pub mod quadext;
pub mod rat;
pub mod scalar;
pub mod upoly;

pub use multipoly::{poly, MultiPoly, Var};
pub use phase::Phase;
pub use quadext::{QuadExtPoint, RootOrder};
pub use rat::{parse_rat, rat, ri, Rat};
pub use scalar::Scalar;
pub use upoly::UPoly;
