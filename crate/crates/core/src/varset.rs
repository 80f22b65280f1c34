//! Sets of variable indices, stored as bitmasks.
//!
//! Variables are 1-based (`x1`, `x2`, ...) to match the written form of
//! equations; bit `i - 1` of the mask records membership of `x_i`. The
//! bitmask doubles as a canonical enumeration key: sets compare by their
//! mask value.

use crate::error::{Error, Result};

/// Upper limit on variable indices representable in a [`VarSet`].
pub const MAX_VARS: u32 = 32;

/// A set of variable indices drawn from `x1..x32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u32);

impl VarSet {
    /// The empty set.
    pub const EMPTY: VarSet = VarSet(0);

    /// The full set `{x1, ..., xn}`.
    pub fn full(n: u32) -> Result<VarSet> {
        if n == 0 || n > MAX_VARS {
            return Err(Error::VarOutOfRange {
                var: n,
                n: MAX_VARS,
            });
        }
        Ok(VarSet(if n == 32 { u32::MAX } else { (1 << n) - 1 }))
    }

    /// The singleton `{x_i}`.
    pub fn singleton(i: u32) -> Result<VarSet> {
        VarSet::EMPTY.with(i)
    }

    /// Builds a set from 1-based indices; duplicates collapse.
    pub fn from_indices(indices: &[u32]) -> Result<VarSet> {
        let mut s = VarSet::EMPTY;
        for &i in indices {
            s = s.with(i)?;
        }
        Ok(s)
    }

    /// Reinterprets a raw mask as a set.
    pub fn from_bits(bits: u32) -> VarSet {
        VarSet(bits)
    }

    /// The raw mask, with bit `i - 1` set for each member `x_i`.
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Returns the set extended by `x_i`.
    pub fn with(self, i: u32) -> Result<VarSet> {
        if i == 0 || i > MAX_VARS {
            return Err(Error::VarOutOfRange {
                var: i,
                n: MAX_VARS,
            });
        }
        Ok(VarSet(self.0 | 1 << (i - 1)))
    }

    pub fn contains(self, i: u32) -> bool {
        (1..=MAX_VARS).contains(&i) && self.0 & 1 << (i - 1) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn min_var(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() + 1)
        }
    }

    /// Largest member, if any.
    pub fn max_var(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros())
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}
