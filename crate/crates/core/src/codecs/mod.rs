//! Integer codecs and packed arrays used by the container format and the
//! extraction index.

pub mod bits;
pub mod dac;
pub mod elias_fano;
pub mod fixed;
pub mod simple8b;
pub mod wire;

pub use bits::{BitVec, RankSelect};
pub use dac::DacArray;
pub use elias_fano::EliasFano;
pub use fixed::FixedWidthArray;
pub use simple8b::Simple8bStream;

/// Block width used for the expansion-length arrays.
pub const DAC_BLOCK: usize = 4;
