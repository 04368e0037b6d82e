//! Exact arithmetic on the real projective line: points, Moebius maps,
//! cross-ratios, closed arcs and the equivalence decisions built on them.
//!
//! Everything is over the rationals. Boundary data that is real algebraic
//! but irrational is not representable here.

mod equiv;
mod interval;
mod moebius;
mod perm;
mod point;

pub use equiv::{
    config_equiv, config_witnesses, realizable_permutations, stabilizer, verify_config_witness,
    ConfigMatch,
};
pub use interval::{Interval, IntervalConfig};
pub use moebius::{cross_ratio, Moebius};
pub use perm::Perm;
pub use point::{parse_point, ProjPoint};
