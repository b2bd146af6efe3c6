//! Parking functions under the classical and MVP rules, the fibres of the
//! MVP outcome map computed through 1-subgraphs of inversion graphs, and the
//! Motzkin-path and sandpile correspondences around them.

pub mod arcs;
pub mod error;
pub mod fibre;
pub mod motzkin;
pub mod parking;
pub mod perm;
pub mod sandpile;
pub mod sequences;
pub mod verify;

pub use arcs::{Arc, ArcSet};
pub use error::{Error, Result};
pub use fibre::{bounds, fibre_brute, fibre_size, fibre_via_subgraphs, is_valid, Bounds};
pub use motzkin::{LatticePath, NonCrossingMatching, Step};
pub use parking::{BumpEvent, ParkingOutcome, ParkingPreference};
pub use perm::{InversionSet, Permutation};
pub use sandpile::{MinrecStep, SandpileConfig};

/// Motzkin number as `u64`.
pub fn motzkin_u64(n: usize) -> u64 {
    sequences::motzkin::<u64>(n)
}

/// Bell number as `u64`.
pub fn bell_u64(n: usize) -> u64 {
    sequences::bell::<u64>(n)
}
