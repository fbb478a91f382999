//! The cyclic ground set `[n] = {1, …, n}` with addition modulo `n`, and
//! circular intervals over it.
//!
//! Every index crossing this module's boundary is 1-based. The residue class
//! of `0` is represented by `n`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundError {
    #[error("ground set size {0} is below 3")]
    TooSmall(usize),
    #[error("index {index} is outside [1, {n}]")]
    OutOfRange { index: usize, n: usize },
}

/// The ground set `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GroundSet {
    n: usize,
}

impl TryFrom<usize> for GroundSet {
    type Error = GroundError;

    fn try_from(n: usize) -> Result<Self, Self::Error> {
        GroundSet::new(n)
    }
}

impl From<GroundSet> for usize {
    fn from(g: GroundSet) -> usize {
        g.n
    }
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self, GroundError> {
        if n < 3 {
            return Err(GroundError::TooSmall(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn size(self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(self, index: usize) -> bool {
        (1..=self.n).contains(&index)
    }

    pub fn check(self, index: usize) -> Result<usize, GroundError> {
        if self.contains(index) {
            Ok(index)
        } else {
            Err(GroundError::OutOfRange { index, n: self.n })
        }
    }

    /// `index + offset` reduced into `[1, n]`.
    #[inline]
    pub fn shift(self, index: usize, offset: i64) -> usize {
        let n = self.n as i64;
        let r = (index as i64 - 1 + offset).rem_euclid(n);
        (r + 1) as usize
    }

    #[inline]
    pub fn succ(self, index: usize) -> usize {
        self.shift(index, 1)
    }

    #[inline]
    pub fn pred(self, index: usize) -> usize {
        self.shift(index, -1)
    }

    /// The least `t ≥ 0` with `a + t ≡ b (mod n)`. Both arguments must lie in
    /// `[1, n]`; use [`GroundSet::circ_dist`] for unchecked input.
    #[inline]
    pub fn dist(self, a: usize, b: usize) -> usize {
        debug_assert!(self.contains(a) && self.contains(b));
        (b + self.n - a) % self.n
    }

    pub fn circ_dist(self, a: usize, b: usize) -> Result<usize, GroundError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.dist(a, b))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Sorted complement of `subset` in `[n]`.
    pub fn complement(self, subset: &[usize]) -> Vec<usize> {
        let mut keep = vec![true; self.n + 1];
        for &j in subset {
            if self.contains(j) {
                keep[j] = false;
            }
        }
        self.indices().filter(|&j| keep[j]).collect()
    }
}

/// Which endpoints of `[lo, hi]_n` belong to the interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closure {
    /// `[lo, hi]`
    Closed,
    /// `(lo, hi]`
    HalfOpenLeft,
    /// `[lo, hi)`
    HalfOpenRight,
    /// `(lo, hi)`
    Open,
}

/// The circular interval `[lo, hi]_n = {lo + t : 0 ≤ t ≤ hi − lo}`.
///
/// `[a, a]` is the singleton `{a}` and `[a, a − 1]` is all of `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CircularInterval {
    pub lo: usize,
    pub hi: usize,
}

impl CircularInterval {
    pub const fn new(lo: usize, hi: usize) -> Self {
        Self { lo, hi }
    }

    pub fn checked(lo: usize, hi: usize, g: GroundSet) -> Result<Self, GroundError> {
        g.check(lo)?;
        g.check(hi)?;
        Ok(Self { lo, hi })
    }

    /// Cardinality of the closed interval, in `[1, n]`.
    #[inline]
    pub fn len(&self, g: GroundSet) -> usize {
        g.dist(self.lo, self.hi) + 1
    }

    #[inline]
    pub fn is_full(&self, g: GroundSet) -> bool {
        self.len(g) == g.size()
    }

    #[inline]
    pub fn contains(&self, g: GroundSet, j: usize) -> bool {
        g.dist(self.lo, j) <= g.dist(self.lo, self.hi)
    }

    /// Whether `self ⊆ other` as subsets of `[n]`.
    pub fn is_subset_of(&self, other: &CircularInterval, g: GroundSet) -> bool {
        if other.is_full(g) {
            return true;
        }
        g.dist(other.lo, self.lo) + self.len(g) <= other.len(g)
    }

    /// Members in traversal order starting from `lo`, with the endpoints
    /// dropped according to `closure`.
    pub fn members(&self, g: GroundSet, closure: Closure) -> Result<Vec<usize>, GroundError> {
        g.check(self.lo)?;
        g.check(self.hi)?;
        let len = self.len(g);
        let (skip_front, skip_back) = match closure {
            Closure::Closed => (0, 0),
            Closure::HalfOpenLeft => (1, 0),
            Closure::HalfOpenRight => (0, 1),
            Closure::Open => (1, 1),
        };
        // a singleton has lo == hi, so dropping either end empties it
        let take = if len == 1 && skip_front + skip_back > 0 {
            0
        } else {
            len - skip_front - skip_back
        };
        Ok((0..take)
            .map(|t| g.shift(self.lo, (t + skip_front) as i64))
            .collect())
    }

    pub fn closed_members(&self, g: GroundSet) -> Vec<usize> {
        (0..self.len(g)).map(|t| g.shift(self.lo, t as i64)).collect()
    }
}

impl std::fmt::Display for CircularInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}
