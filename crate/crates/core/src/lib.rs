//! Exact computations on geometrically rational real conic bundle surfaces.
//!
//! * [`projline`]: the real projective line, Moebius maps and interval
//!   configurations, with equivalence decisions.
//! * [`conic_model`]: canonical models `y² + z² = Q(x)`, marked (blown-up)
//!   models and the birational / isomorphism / very-transitivity decisions.
//! * [`twist`]: synthesis and verification of twisting-map automorphisms.
//! * [`delpezzo`]: the degree-2 biconic del Pezzo model and its Geiser
//!   involution.
//! * [`lattice`]: Picard-lattice combinatorics of blow-ups of the plane.
//! * [`planner`]: rectilinear paths in rectangle unions.
//!
//! All values are immutable and all operations are pure.

pub mod conic_model;
pub mod delpezzo;
pub mod error;
pub mod lattice;
pub mod planner;
pub mod poly;
pub mod projline;
pub mod rat;
pub mod sample;
pub mod selftest;
pub mod twist;

pub use error::{Error, Result};
pub use rat::Rat;
