//! Exact function-field arithmetic on the projective line over a finite
//! field: Moore determinants, hypergeometric ratios in both degree regimes,
//! conductor-level divisor-class equivalence, and Catalan-Drinfeld symbols of
//! rank-one shtukas with generic zero and pole.
//!
//! Everything is symbolic and exact. The coefficient field is
//! K = F_{q'}(tau), rational functions in a single transcendental over a
//! finite extension of the base field; generic points of the curve are
//! K-rational coordinates with genuine tau-dependence.


pub mod conductor;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod factor;
pub mod ff;
pub mod func;

pub mod hyp;
pub mod ktau;
pub mod linalg;
pub mod moore;
pub mod parse;

pub mod poly;
pub mod rr;
pub mod shtuka;


pub use curve::{Curve, DEFAULT_ENUM_BUDGET};
pub use divisor::{Divisor, Point};
pub use error::{Error, Result};
pub use ff::{FieldDesc, FieldElem};
pub use func::RatFunc;
pub use ktau::KElem;
