//! Incidence geometry of tropical lines in the plane.
//!
//! The crate is `no_std` (it needs `alloc`) and performs every computation in
//! exact rational arithmetic. It covers:
//!
//! * tropical lines, coaxiality, point-line duality and incidence ([`geometry`]);
//! * finite line arrangements and their vertices ([`arrangement`]);
//! * Newton subdivisions of the dilated simplex and their face census
//!   ([`subdivision`], [`newton`]);
//! * ordinary and monochromatic line finders ([`sg`], [`chroma`]);
//! * exact metrics and realization spaces ([`realization`]);
//! * the compiler from integer linear systems to linear Newton subdivisions
//!   whose realization space is linearly isomorphic to the system's solution
//!   set ([`universality`]).
#![no_std]

extern crate alloc;

pub mod arrangement;
pub mod chroma;
mod error;
pub mod geometry;
pub mod lattice;
pub mod newton;
pub mod rational;
pub mod realization;
pub mod sg;
pub mod solve;
pub mod subdivision;
pub mod universality;

pub use arrangement::{Arrangement, LocalProfile};
pub use error::{Error, Result};
pub use geometry::{Axis, AxisSet, Colour, Point, TropLine};
pub use lattice::{EdgeDir, LatticePoint};
pub use rational::Rational;
pub use subdivision::{Edge, Face, NewtonSubdivision};
