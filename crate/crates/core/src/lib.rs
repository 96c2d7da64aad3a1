//! Exact arithmetic for the rational balls `B(p,q)` and `A(m,n)` bounding
//! `L(p^2, pq-1)`: Euclidean data, the A-map, plumbing chains, spin
//! structures and Stein invariants.

pub mod arith;
pub mod checks;
pub mod contfrac;
pub mod error;
pub mod json;
pub mod matrix;
pub mod modular;
pub mod plumbing;
pub mod registry;
pub mod spin;
pub mod stein;
pub mod sweep;

pub use arith::*;
pub use contfrac::*;
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use modular::CyclicElement;
pub use plumbing::*;
pub use registry::{Named, Registry};
pub use spin::*;
pub use stein::*;
