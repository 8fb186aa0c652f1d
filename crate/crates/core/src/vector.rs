//! Nonnegative integer vectors, ground-set subsets and the verdict type shared
//! by every checker in the crate.

use std::fmt;

use crate::error::{Error, Result};

/// A nonnegative integer vector `u` in `Z_+^n`, `n >= 1`.
///
/// Ordering is lexicographic on the entries, which is the canonical order used
/// for every sorted output and every violation witness.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<u32>);

impl IntVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("vector with no coordinates"));
        }
        Ok(Self(entries))
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "ground set must be nonempty");
        Self(vec![0; n])
    }

    /// The canonical basis vector for element `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|u|`, the sum of the entries.
    pub fn modulus(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// Componentwise maximum and minimum, `(u ∨ v, u ∧ v)`.
    pub fn join_meet(&self, other: &Self) -> Result<(Self, Self)> {
        self.same_dim(other)?;
        let join = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.max(b))
            .collect();
        let meet = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Ok((Self(join), Self(meet)))
    }

    /// Half the L1 distance between two vectors of equal modulus.
    pub fn distance(&self, other: &Self) -> Result<u64> {
        self.same_dim(other)?;
        let (l, r) = (self.modulus(), other.modulus());
        if l != r {
            return Err(Error::ModulusMismatch { left: l, right: r });
        }
        let total: u64 = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| (a as i64 - b as i64).unsigned_abs())
            .sum();
        Ok(total / 2)
    }

    /// `u(A)`, the sum of the entries indexed by `A`.
    pub fn eval_on_subset(&self, a: GroundSubset) -> u64 {
        a.elements()
            .filter(|&i| i < self.len())
            .map(|i| self.0[i] as u64)
            .sum()
    }

    /// Componentwise `self <= other`.
    pub fn is_le(&self, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow("vector sum")))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    /// `self - other` when `other <= self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if self.len() != other.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// `u + ε_i`.
    pub fn add_unit(&self, i: usize) -> Result<Self> {
        let mut w = self.clone();
        w.0[i] = w.0[i].checked_add(1).ok_or(Error::Overflow("unit step"))?;
        Ok(w)
    }

    /// `u - ε_i`, or `None` when `u(i) = 0`.
    pub fn sub_unit(&self, i: usize) -> Option<Self> {
        let mut w = self.clone();
        w.0[i] = w.0[i].checked_sub(1)?;
        Some(w)
    }

    /// `u - ε_i + ε_j`, or `None` when `u(i) = 0`.
    pub fn exchange(&self, i: usize, j: usize) -> Option<Self> {
        let mut w = self.sub_unit(i)?;
        w.0[j] = w.0[j].checked_add(1)?;
        Some(w)
    }

    /// Support as a ground subset.
    pub fn support(&self) -> GroundSubset {
        GroundSubset::from_elements(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, _)| i),
        )
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: u32) -> Self {
        let mut e = self.0.clone();
        e.push(last);
        Self(e)
    }
}

impl TryFrom<Vec<u32>> for IntVector {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Shorthand used heavily in tests and examples.
///
/// # Panics
/// On an empty slice.
pub fn iv(entries: &[u32]) -> IntVector {
    IntVector::new(entries.to_vec()).expect("nonempty vector")
}

/// A subset of the ground set, stored as a bitmask: bit `i` is element `i`
/// (element `i + 1` in 1-based labels).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundSubset(pub u64);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    pub fn full(n: usize) -> Self {
        assert!(n < 64);
        Self((1u64 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn from_elements(elements: impl IntoIterator<Item = usize>) -> Self {
        Self(elements.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Whether the subset fits in a ground set of size `n`.
    pub fn fits(self, n: usize) -> bool {
        n >= 64 || self.0 >> n == 0
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// All subsets of `[n]` in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = GroundSubset> {
        (0..1u64 << n).map(GroundSubset)
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Outcome of a property check: either the property holds, or it fails and a
/// witness of the failure is returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Violated(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Violated(w) => Verdict::Violated(f(w)),
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    fn from(o: Option<W>) -> Self {
        o.map_or(Verdict::Holds, Verdict::Violated)
    }
}

/// Mixed-radix packing of bounded vectors into a single `u128`.
///
/// Coordinate `k` must stay below `bounds[k]`; with that guarantee, packed
/// keys add like the vectors they encode, which the fiber and Hilbert-function
/// enumerations rely on.
#[derive(Clone, Debug)]
pub(crate) struct Packer {
    strides: Vec<u128>,
}

impl Packer {
    /// `bounds[k]` is an exclusive upper bound for coordinate `k`.
    pub fn new(bounds: &[u64]) -> Result<Self> {
        let mut strides = Vec::with_capacity(bounds.len());
        let mut acc: u128 = 1;
        for &b in bounds {
            strides.push(acc);
            acc = acc
                .checked_mul(b.max(1) as u128)
                .ok_or(Error::Overflow("packed key"))?;
        }
        Ok(Self { strides })
    }

    pub fn pack(&self, v: &[u32]) -> u128 {
        v.iter()
            .zip(&self.strides)
            .map(|(&x, &s)| x as u128 * s)
            .sum()
    }

    pub fn stride(&self, k: usize) -> u128 {
        self.strides[k]
    }
}
