//! Bit-vector index sets over `[n] = {1, ..., n}` and antichain families of them.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported dimension. Sets are a single `u128` word.
pub const MAX_DIM: usize = 128;

/// A subset of `[dim]`, stored as a bit-vector. Indices are 1-based in the
/// public API; bit `i - 1` holds index `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    dim: u8,
    bits: u128,
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidDim { got: dim, max: MAX_DIM });
    }
    Ok(())
}

fn full_mask(dim: usize) -> u128 {
    if dim == MAX_DIM {
        u128::MAX
    } else {
        (1u128 << dim) - 1
    }
}

impl IndexSet {
    pub fn empty(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim: dim as u8, bits: 0 })
    }

    pub fn full(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim: dim as u8, bits: full_mask(dim) })
    }

    pub fn singleton(dim: usize, index: usize) -> Result<Self> {
        let mut set = Self::empty(dim)?;
        set.insert(index)?;
        Ok(set)
    }

    pub fn from_indices<I>(dim: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(dim)?;
        for index in indices {
            set.insert(index)?;
        }
        Ok(set)
    }

    /// Builds a set from a raw bit pattern; bits above `dim` are rejected.
    pub fn from_bits(dim: usize, bits: u128) -> Result<Self> {
        check_dim(dim)?;
        if bits & !full_mask(dim) != 0 {
            let index = 128 - bits.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, dim });
        }
        Ok(Self { dim: dim as u8, bits })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn insert(&mut self, index: usize) -> Result<bool> {
        let dim = self.dim();
        if index == 0 || index > dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let bit = 1u128 << (index - 1);
        let fresh = self.bits & bit == 0;
        self.bits |= bit;
        Ok(fresh)
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= self.dim() && self.bits & (1u128 << (index - 1)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.dim())
    }

    /// `self ⊆ other`. Sets of different dims are never comparable.
    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.dim == other.dim && self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self { dim: self.dim, bits: self.bits | other.bits })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self { dim: self.dim, bits: self.bits & other.bits })
    }

    pub(crate) fn union_in_place(&mut self, other: &Self) {
        debug_assert_eq!(self.dim, other.dim);
        self.bits |= other.bits;
    }

    pub(crate) fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }

    /// Members in increasing order, 1-based.
    pub fn iter(&self) -> Members {
        Members { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Iterator over the members of an [`IndexSet`].
pub struct Members {
    bits: u128,
}

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let tz = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl IntoIterator for &IndexSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, index) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{index}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A family of nonempty index sets kept as an antichain under inclusion.
///
/// Inserting a superset of a stored set is a no-op; inserting a subset evicts
/// every stored set it is contained in. Members are kept sorted by bit pattern
/// so equal families compare equal regardless of insertion order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SupportFamily {
    dim: usize,
    sets: Vec<IndexSet>,
}

impl SupportFamily {
    pub fn new(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, sets: Vec::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Returns true iff the family changed.
    pub fn insert(&mut self, set: IndexSet) -> Result<bool> {
        if set.dim() != self.dim {
            return Err(Error::DimMismatch { left: self.dim, right: set.dim() });
        }
        if set.is_empty() {
            return Err(Error::Precondition("support sets must be nonempty".into()));
        }
        if self.sets.iter().any(|s| s.is_subset(&set)) {
            return Ok(false);
        }
        self.sets.retain(|s| !set.is_subset(s));
        let pos = self.sets.partition_point(|s| s.bits() < set.bits());
        self.sets.insert(pos, set);
        Ok(true)
    }

    /// True iff some member is contained in `s`.
    #[inline]
    pub fn has_subset_of(&self, s: &IndexSet) -> bool {
        let bits = s.bits();
        self.sets.iter().any(|t| t.bits() & !bits == 0)
    }

    pub fn contains(&self, set: &IndexSet) -> bool {
        self.sets.binary_search_by(|s| s.bits().cmp(&set.bits())).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IndexSet> {
        self.sets.iter()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, xs: &[usize]) -> IndexSet {
        IndexSet::from_indices(dim, xs.iter().copied()).unwrap()
    }

    #[test]
    fn basic_set_ops() {
        let a = set(5, &[1, 3]);
        let b = set(5, &[3, 4, 5]);
        assert_eq!(a.union(&b).unwrap(), set(5, &[1, 3, 4, 5]));
        assert_eq!(a.intersection(&b).unwrap(), set(5, &[3]));
        assert!(set(5, &[3]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.len(), 2);
        assert!(IndexSet::full(5).unwrap().is_full());
        assert_eq!(a.to_string(), "{1,3}");
        assert_eq!(IndexSet::empty(3).unwrap().to_string(), "{}");
    }

    #[test]
    fn out_of_range_and_dims() {
        assert!(matches!(
            IndexSet::singleton(3, 4),
            Err(Error::IndexOutOfRange { index: 4, dim: 3 })
        ));
        assert!(IndexSet::singleton(3, 0).is_err());
        assert!(IndexSet::empty(0).is_err());
        assert!(IndexSet::empty(129).is_err());
        assert!(set(3, &[1]).union(&set(4, &[1])).is_err());
        assert!(IndexSet::from_bits(3, 0b1000).is_err());
    }

    #[test]
    fn max_dim_word() {
        let full = IndexSet::full(MAX_DIM).unwrap();
        assert_eq!(full.len(), 128);
        assert!(full.contains(128));
        assert_eq!(full.iter().last(), Some(128));
    }

    #[test]
    fn antichain_keeps_minimal_sets() {
        let mut fam = SupportFamily::new(3).unwrap();
        assert!(fam.insert(set(3, &[2, 3])).unwrap());
        assert!(fam.insert(set(3, &[2])).unwrap());
        assert_eq!(fam.iter().copied().collect::<Vec<_>>(), vec![set(3, &[2])]);
        assert!(!fam.insert(set(3, &[1, 2])).unwrap());
        assert!(!fam.insert(set(3, &[2])).unwrap());
        assert!(fam.insert(set(3, &[1, 3])).unwrap());
        assert_eq!(fam.len(), 2);
        assert!(fam.insert(set(3, &[])).is_err());
        assert!(fam.insert(set(4, &[1])).is_err());
    }
}
