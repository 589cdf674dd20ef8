//! Synergistic planar maxima and upper hulls.
//!
//! The crate is `no_std` (it needs `alloc`). Every algorithm takes an explicit
//! [`ProbeCounter`] and charges one unit per geometric predicate or integer key
//! comparison, so costs can be compared against comparison-model bounds.
//!
//! * [`geom`]: points, exact predicates, doubling search.
//! * [`maxima`]: smooth decomposition, staircase merging, Quick Union Maxima,
//!   the Left-to-Right certifier, certificate checking.
//! * [`hull`]: simplicity test, chain partition, Melkman, Quick Union Hull,
//!   the recursive halving baseline, certificate checking.
//! * [`oracles`]: brute-force references.
#![no_std]

extern crate alloc;

pub mod geom;
pub mod hull;
pub mod maxima;
pub mod oracles;
pub mod report;

pub use geom::{
    cmp_slopes, doubling_search, dominates, orient, side_of_line, GeomError, Phase, Point,
    ProbeCounter, SearchFrom, Slope,
};
pub use report::{entropy_bits, CostReport};
