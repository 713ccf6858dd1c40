//! Integer types used for text symbols and suffix positions.
//!
//! Every level of the recursion stores symbols and positions in the same
//! unsigned type. Callers pick `u32` when the text has fewer than 2³¹
//! symbols and `u64` otherwise; [`fits`] tells them which.

use std::fmt::Debug;
use std::hash::Hash;

/// An unsigned integer usable as both a symbol and a text position.
pub trait Index: Copy + Ord + Eq + Hash + Debug + Default + Send + Sync + 'static {
    /// Marker for an empty suffix-array slot.
    const EMPTY: Self;
    /// Largest length a text indexed by this type may have.
    const MAX_LEN: usize;

    fn from_usize(v: usize) -> Self;
    fn as_usize(self) -> usize;
}

impl Index for u32 {
    const EMPTY: Self = u32::MAX;
    const MAX_LEN: usize = (1 << 31) - 1;

    #[inline]
    fn from_usize(v: usize) -> Self {
        debug_assert!(v <= u32::MAX as usize);
        v as u32
    }

    #[inline]
    fn as_usize(self) -> usize {
        self as usize
    }
}

impl Index for u64 {
    const EMPTY: Self = u64::MAX;
    const MAX_LEN: usize = usize::MAX >> 1;

    #[inline]
    fn from_usize(v: usize) -> Self {
        v as u64
    }

    #[inline]
    fn as_usize(self) -> usize {
        self as usize
    }
}

/// Whether a text of `len` symbols (sentinel included) can be indexed by `I`.
pub fn fits<I: Index>(len: usize) -> bool {
    len <= I::MAX_LEN
}

/// True when 32-bit positions suffice for a text of `len` symbols.
pub fn use_narrow(len: usize) -> bool {
    fits::<u32>(len)
}
