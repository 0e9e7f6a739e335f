//! Berezin (coherent-state) quantization of integral coadjoint orbits of
//! SU(2) and SU(3), with a harness measuring how fast the strict-quantization
//! defects (Dirac, Jordan, norm gap) decay along the level k.

pub mod berezin;
pub mod coherent;
pub mod error;
pub mod group;
pub mod harness;
pub mod irrep;
pub mod lie;
pub mod linalg;
pub mod orbit;
pub mod quad;
#[cfg(test)]
pub(crate) mod test_oracles;

pub use error::{Error, Result};
