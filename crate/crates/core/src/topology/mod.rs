//! Exact resolvability constructions over the rationals: the enumerated
//! line and plane, crowded linear sets, ranks, and density audits.

pub mod enumeration;
pub mod construction;
pub mod density;
pub mod linear;
pub mod rational;

pub use rational::{Bound, Rational};
