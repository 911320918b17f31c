use std::fmt;

use super::partition::{parse_set, write_set};
use crate::error::{Error, Result};

/// Largest ground set supported by the bitmask encoding.
pub const MAX_SUBSET_GROUND: usize = 63;

/// A nonempty proper subset of `[p]`, stored as a bitmask (bit `i` is point
/// `i + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetElement {
    p: usize,
    mask: u64,
}

impl SubsetElement {
    pub fn new(p: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if p > MAX_SUBSET_GROUND {
            return Err(Error::invalid(format!(
                "subset ground set size {p} exceeds {MAX_SUBSET_GROUND}"
            )));
        }
        let mut mask = 0u64;
        for x in members {
            if x == 0 || x > p {
                return Err(Error::invalid(format!("point {x} is outside [1, {p}]")));
            }
            mask |= 1 << (x - 1);
        }
        Self::from_mask(p, mask)
    }

    pub fn from_mask(p: usize, mask: u64) -> Result<Self> {
        let full = full_mask(p);
        if mask == 0 || mask == full || mask & !full != 0 {
            return Err(Error::invalid(format!(
                "{mask:#b} is not a nonempty proper subset of [{p}]"
            )));
        }
        Ok(SubsetElement { p, mask })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.p)
            .filter(|i| self.mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    pub fn is_proper_subset_of(&self, other: &SubsetElement) -> bool {
        self.mask != other.mask && self.mask & !other.mask == 0
    }

    pub(crate) fn map_points(&self, image: impl Fn(usize) -> usize) -> SubsetElement {
        let mask = self
            .members()
            .into_iter()
            .fold(0u64, |m, x| m | 1 << (image(x) - 1));
        SubsetElement { p: self.p, mask }
    }
}

pub(crate) fn full_mask(p: usize) -> u64 {
    if p >= 64 {
        u64::MAX
    } else {
        (1u64 << p) - 1
    }
}

impl fmt::Display for SubsetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, &self.members())
    }
}

impl SubsetElement {
    /// Parses `{1,3}` relative to a known ground set size.
    pub fn parse(p: usize, s: &str) -> Result<Self> {
        SubsetElement::new(p, parse_set(s)?)
    }
}
