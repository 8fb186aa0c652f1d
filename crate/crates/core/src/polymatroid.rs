//! Discrete polymatroids, their bases and ground set rank functions.
//!
//! A discrete polymatroid is stored extensionally: the full downward-closed
//! point set, its rank and its bases. Every check here is exhaustive, so all
//! constructors honour the enumeration cap from [`crate::point_cap`].

use std::collections::HashSet;
use std::fmt;

use crate::check_cap;
use crate::error::{Error, Result};
use crate::exchange::{self, ExchangeMode, ExchangeWitness};
use crate::vector::{GroundSubset, IntVector, Verdict};

/// Largest ground set a [`RankFunction`] table may be built for.
pub const MAX_RANK_GROUND_SET: usize = 24;

fn check_dims<'a>(n: usize, vectors: impl IntoIterator<Item = &'a IntVector>) -> Result<()> {
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    Ok(())
}

/// A nonempty finite set of distinct vectors of a common length, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorSet {
    n: usize,
    vectors: Vec<IntVector>,
}

impl VectorSet {
    pub fn new(n: usize, mut vectors: Vec<IntVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Empty("vector set"));
        }
        check_dims(n, &vectors)?;
        vectors.sort();
        vectors.dedup();
        Ok(Self { n, vectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntVector> {
        self.vectors.iter()
    }

    pub fn contains(&self, u: &IntVector) -> bool {
        self.vectors.binary_search(u).is_ok()
    }

    /// Maximal elements under the componentwise order.
    pub fn maximal_elements(&self) -> Vec<IntVector> {
        self.vectors
            .iter()
            .filter(|u| !self.vectors.iter().any(|v| v != *u && u.is_le(v)))
            .cloned()
            .collect()
    }
}

impl fmt::Debug for VectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.vectors).finish()
    }
}

/// A nonempty set of distinct vectors of equal modulus; the candidate set of
/// bases of a discrete polymatroid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseSet {
    n: usize,
    modulus: u64,
    vectors: Vec<IntVector>,
}

impl BaseSet {
    pub fn new(n: usize, mut vectors: Vec<IntVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Empty("base set"));
        }
        check_dims(n, &vectors)?;
        let modulus = vectors[0].modulus();
        if let Some(bad) = vectors.iter().find(|v| v.modulus() != modulus) {
            return Err(Error::ModulusMismatch {
                left: modulus,
                right: bad.modulus(),
            });
        }
        vectors.sort();
        vectors.dedup();
        Ok(Self {
            n,
            modulus,
            vectors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Common modulus `d` of the members.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntVector> {
        self.vectors.iter()
    }

    pub fn contains(&self, u: &IntVector) -> bool {
        self.vectors.binary_search(u).is_ok()
    }

    pub fn index_of(&self, u: &IntVector) -> Option<usize> {
        self.vectors.binary_search(u).ok()
    }

    pub fn to_vector_set(&self) -> VectorSet {
        VectorSet {
            n: self.n,
            vectors: self.vectors.clone(),
        }
    }
}

impl TryFrom<VectorSet> for BaseSet {
    type Error = Error;
    fn try_from(s: VectorSet) -> Result<Self> {
        BaseSet::new(s.n, s.vectors)
    }
}

impl fmt::Debug for BaseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.vectors).finish()
    }
}

/// Why a point set fails to be a discrete polymatroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolymatroidViolation {
    /// `member` is in the set but its subvector `missing` is not.
    NotDownwardClosed {
        member: IntVector,
        missing: IntVector,
    },
    /// `|v| > |u|` but no `u + ε_i` with `v(i) > u(i)` lies in the set.
    NoAugmentation { u: IntVector, v: IntVector },
}

impl fmt::Display for PolymatroidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotDownwardClosed { member, missing } => {
                write!(f, "{member} is present but its subvector {missing} is not")
            }
            Self::NoAugmentation { u, v } => {
                write!(f, "no augmentation of {u} towards {v}")
            }
        }
    }
}

/// Checks downward closure and the single-step augmentation property: for
/// `u, v` in the set with `|v| > |u|` some `u + ε_i` with `v(i) > u(i)` is in
/// the set. The lexicographically first violation is reported.
pub fn is_discrete_polymatroid(s: &VectorSet) -> Verdict<PolymatroidViolation> {
    for u in s.iter() {
        for i in 0..s.n {
            if let Some(w) = u.sub_unit(i) {
                if !s.contains(&w) {
                    return Verdict::Violated(PolymatroidViolation::NotDownwardClosed {
                        member: u.clone(),
                        missing: w,
                    });
                }
            }
        }
    }

    let moduli: Vec<u64> = s.iter().map(IntVector::modulus).collect();
    // directions in which each point can grow inside the set
    let growth: Vec<Vec<usize>> = s
        .iter()
        .map(|u| {
            (0..s.n)
                .filter(|&i| u.add_unit(i).map(|w| s.contains(&w)).unwrap_or(false))
                .collect()
        })
        .collect();

    for (a, u) in s.iter().enumerate() {
        for (b, v) in s.iter().enumerate() {
            if moduli[b] <= moduli[a] {
                continue;
            }
            if !growth[a].iter().any(|&i| v.get(i) > u.get(i)) {
                return Verdict::Violated(PolymatroidViolation::NoAugmentation {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
        }
    }
    Verdict::Holds
}

/// All integral subvectors of members of `s`.
pub fn downward_closure(s: &VectorSet) -> Result<VectorSet> {
    let mut seen: HashSet<IntVector> = s.iter().cloned().collect();
    let mut stack: Vec<IntVector> = s.vectors.clone();
    while let Some(u) = stack.pop() {
        for i in 0..s.n {
            if let Some(w) = u.sub_unit(i) {
                if seen.insert(w.clone()) {
                    check_cap("downward closure", seen.len())?;
                    stack.push(w);
                }
            }
        }
    }
    VectorSet::new(s.n, seen.into_iter().collect())
}

/// A validated discrete polymatroid with its rank and bases.
#[derive(Clone, PartialEq, Eq)]
pub struct DiscretePolymatroid {
    points: VectorSet,
    rank: u64,
    bases: BaseSet,
}

impl DiscretePolymatroid {
    /// Validates `points` and caches rank and bases.
    pub fn new(points: VectorSet) -> Result<Self> {
        check_cap("polymatroid points", points.len())?;
        if let Verdict::Violated(w) = is_discrete_polymatroid(&points) {
            return Err(Error::NotAPolymatroid(w.to_string()));
        }
        let n = points.n;
        let maximal: Vec<IntVector> = points
            .iter()
            .filter(|u| (0..n).all(|i| u.add_unit(i).map(|w| !points.contains(&w)).unwrap_or(true)))
            .cloned()
            .collect();
        let bases = BaseSet::new(n, maximal)?;
        Ok(Self {
            rank: bases.modulus(),
            points,
            bases,
        })
    }

    /// The polymatroid generated by `generators`: downward closure, then
    /// validation.
    pub fn from_generators(n: usize, generators: Vec<IntVector>) -> Result<Self> {
        Self::new(downward_closure(&VectorSet::new(n, generators)?)?)
    }

    pub fn n(&self) -> usize {
        self.points.n
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn points(&self) -> &VectorSet {
        &self.points
    }

    pub fn bases(&self) -> &BaseSet {
        &self.bases
    }

    pub fn contains(&self, u: &IntVector) -> bool {
        self.points.contains(u)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rank_function(&self) -> RankFunction {
        rank_function(&self.bases)
    }

    /// Whether every canonical basis vector belongs to the polymatroid.
    pub fn contains_units(&self) -> bool {
        (0..self.n()).all(|i| self.contains(&IntVector::unit(self.n(), i)))
    }
}

impl fmt::Debug for DiscretePolymatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiscretePolymatroid")
            .field("n", &self.n())
            .field("rank", &self.rank)
            .field("bases", &self.bases)
            .finish()
    }
}

/// The maximal vectors of `p`.
pub fn bases(p: &DiscretePolymatroid) -> &BaseSet {
    p.bases()
}

/// Whether `b` is the set of bases of some discrete polymatroid, i.e. satisfies
/// the base exchange property: for `u, v` in `b` and `u(i) > v(i)` there is
/// `j` with `u(j) < v(j)` and `u - ε_i + ε_j` in `b`.
pub fn is_base_set(b: &BaseSet) -> Verdict<ExchangeWitness> {
    exchange::exchange_property(b, ExchangeMode::BaseExchange)
}

/// An integer set function on all subsets of `[n]`, indexed by bitmask.
///
/// Construction only checks the table size; [`validate_rank_function`] decides
/// whether it is an actual ground set rank function.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RankFunction {
    n: usize,
    values: Vec<u64>,
}

impl RankFunction {
    pub fn new(n: usize, values: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("ground set"));
        }
        if n > MAX_RANK_GROUND_SET {
            return Err(Error::OutOfRange(format!("ground set size {n}")));
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(GroundSubset) -> u64) -> Result<Self> {
        if n > MAX_RANK_GROUND_SET {
            return Err(Error::OutOfRange(format!("ground set size {n}")));
        }
        Self::new(n, GroundSubset::all(n).map(f).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, a: GroundSubset) -> u64 {
        self.values[a.mask() as usize]
    }

    /// `ρ([n])`.
    pub fn total(&self) -> u64 {
        *self.values.last().expect("nonempty table")
    }

    /// Pointwise sum, the rank function of a polymatroid sum.
    pub fn checked_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("rank sum")))
            .collect::<Result<_>>()?;
        Ok(Self { n: self.n, values })
    }

    /// `A ⊊ B` implies `ρ(A) < ρ(B)`.
    pub fn is_strictly_increasing(&self) -> bool {
        GroundSubset::all(self.n).all(|a| {
            (0..self.n)
                .filter(|&i| !a.contains(i))
                .all(|i| self.value(a) < self.value(a.with(i)))
        })
    }
}

impl fmt::Debug for RankFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankFunction(n={}, {:?})", self.n, self.values)
    }
}

/// Subset sums `u(A)` for every `A`, by bitmask.
pub(crate) fn subset_sums(u: &IntVector) -> Vec<u64> {
    let n = u.len();
    let mut sums = vec![0u64; 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + u.get(low) as u64;
    }
    sums
}

/// `ρ(X) = max { u(X) : u in B }`.
pub fn rank_function(b: &BaseSet) -> RankFunction {
    rank_of_vectors(b.n, b.iter())
}

fn rank_of_vectors<'a>(n: usize, vectors: impl Iterator<Item = &'a IntVector>) -> RankFunction {
    assert!(
        n <= MAX_RANK_GROUND_SET,
        "ground set too large for a rank table"
    );
    let mut values = vec![0u64; 1 << n];
    for u in vectors {
        for (slot, s) in values.iter_mut().zip(subset_sums(u)) {
            *slot = (*slot).max(s);
        }
    }
    RankFunction { n, values }
}

/// Why a set function fails to be a ground set rank function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankViolation {
    EmptySetNonzero(u64),
    /// `smaller ⊂ larger` but `ρ(smaller) > ρ(larger)`.
    NotNondecreasing {
        smaller: GroundSubset,
        larger: GroundSubset,
    },
    /// `ρ(a) + ρ(b) < ρ(a ∪ b) + ρ(a ∩ b)`.
    NotSubmodular {
        a: GroundSubset,
        b: GroundSubset,
    },
}

impl fmt::Display for RankViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptySetNonzero(v) => write!(f, "rho(empty) = {v}"),
            Self::NotNondecreasing { smaller, larger } => {
                write!(f, "rho{smaller:?} > rho{larger:?}")
            }
            Self::NotSubmodular { a, b } => write!(f, "submodularity fails on {a:?}, {b:?}"),
        }
    }
}

/// Checks `ρ(∅) = 0`, monotonicity and submodularity.
///
/// Both properties are checked through their local forms (`A` against `A+i`,
/// and `A+i, A+j` against `A+i+j, A`), which are equivalent to the global
/// ones; the reported pair is a genuine violating pair, first in `(A, i, j)`
/// order.
pub fn validate_rank_function(rho: &RankFunction) -> Verdict<RankViolation> {
    let n = rho.n;
    if rho.values[0] != 0 {
        return Verdict::Violated(RankViolation::EmptySetNonzero(rho.values[0]));
    }
    for a in GroundSubset::all(n) {
        for i in (0..n).filter(|&i| !a.contains(i)) {
            if rho.value(a) > rho.value(a.with(i)) {
                return Verdict::Violated(RankViolation::NotNondecreasing {
                    smaller: a,
                    larger: a.with(i),
                });
            }
        }
    }
    for a in GroundSubset::all(n) {
        for i in (0..n).filter(|&i| !a.contains(i)) {
            for j in (i + 1..n).filter(|&j| !a.contains(j)) {
                let lhs = rho.value(a.with(i)) + rho.value(a.with(j));
                let rhs = rho.value(a.with(i).with(j)) + rho.value(a);
                if lhs < rhs {
                    return Verdict::Violated(RankViolation::NotSubmodular {
                        a: a.with(i),
                        b: a.with(j),
                    });
                }
            }
        }
    }
    Verdict::Holds
}

pub(crate) fn require_valid(rho: &RankFunction) -> Result<()> {
    match validate_rank_function(rho) {
        Verdict::Holds => Ok(()),
        Verdict::Violated(w) => Err(Error::InvalidRankFunction(w.to_string())),
    }
}

/// All `u` in `Z_+^n` with `u(A) <= ρ(A)` for every `A`, without validating
/// `ρ`. Coordinates are bounded by `ρ({i})`.
pub(crate) fn points_under(rho: &RankFunction) -> Result<Vec<IntVector>> {
    let n = rho.n;
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    // partial[mask] = current(mask) for masks inside the assigned prefix
    let mut partial = vec![0u64; 1 << n];

    fn go(
        k: usize,
        rho: &RankFunction,
        current: &mut Vec<u32>,
        partial: &mut Vec<u64>,
        out: &mut Vec<IntVector>,
    ) -> Result<()> {
        let n = rho.n;
        if k == n {
            check_cap("points under a rank function", out.len() + 1)?;
            out.push(IntVector::new(current.clone())?);
            return Ok(());
        }
        let bit = 1usize << k;
        let cap =
            u32::try_from(rho.values[bit]).map_err(|_| Error::Overflow("coordinate bound"))?;
        for x in 0..=cap {
            // masks containing k and contained in {0..k}
            let ok = (0..bit).all(|low| {
                let s = partial[low] + x as u64;
                s <= rho.values[low | bit]
            });
            if !ok {
                break;
            }
            current[k] = x;
            for low in 0..bit {
                partial[low | bit] = partial[low] + x as u64;
            }
            go(k + 1, rho, current, partial, out)?;
        }
        current[k] = 0;
        Ok(())
    }

    go(0, rho, &mut current, &mut partial, &mut out)?;
    out.sort();
    Ok(out)
}

/// `P = { u in Z_+^n : u(A) <= ρ(A) for all A }`.
///
/// `ρ` must be a valid rank function but need not be tight for the resulting
/// polymatroid; the polymatroid's own rank function may be pointwise smaller.
pub fn polymatroid_from_rank(rho: &RankFunction) -> Result<DiscretePolymatroid> {
    require_valid(rho)?;
    DiscretePolymatroid::new(VectorSet::new(rho.n, points_under(rho)?)?)
}

/// Whether `u(A) <= ρ(A)` for all `A`.
pub fn membership(rho: &RankFunction, u: &IntVector) -> Result<bool> {
    if u.len() != rho.n {
        return Err(Error::DimensionMismatch {
            expected: rho.n,
            found: u.len(),
        });
    }
    Ok(subset_sums(u)
        .into_iter()
        .zip(&rho.values)
        .all(|(s, &r)| s <= r))
}

/// Whether the lattice points cut out by the rank function of `p`'s bases are
/// exactly `p`.
pub fn hull_consistency(p: &DiscretePolymatroid) -> bool {
    hull_consistency_of_set(p.points()).unwrap_or(false)
}

/// [`hull_consistency`] for an arbitrary point set: compares `s` with
/// `{ u : u(A) <= max_{w in s} w(A) }`.
pub fn hull_consistency_of_set(s: &VectorSet) -> Result<bool> {
    let rho = rank_of_vectors(s.n, s.iter());
    Ok(points_under(&rho)? == s.vectors)
}

/// `{ u in P : |u| <= d }`, a discrete polymatroid of rank `d`.
pub fn truncate(p: &DiscretePolymatroid, d: u64) -> Result<DiscretePolymatroid> {
    if d > p.rank {
        return Err(Error::OutOfRange(format!(
            "truncation degree {d} (rank is {})",
            p.rank
        )));
    }
    let pts = p
        .points
        .iter()
        .filter(|u| u.modulus() <= d)
        .cloned()
        .collect();
    DiscretePolymatroid::new(VectorSet::new(p.n(), pts)?)
}

/// `P_x = { v - x : v in P, v >= x }`, of rank `rank(P) - |x|`.
pub fn contract(p: &DiscretePolymatroid, x: &IntVector) -> Result<DiscretePolymatroid> {
    if x.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: x.len(),
        });
    }
    if !p.contains(x) {
        return Err(Error::Precondition(format!(
            "{x} is not a point of the polymatroid"
        )));
    }
    let pts = p.points.iter().filter_map(|v| v.checked_sub(x)).collect();
    DiscretePolymatroid::new(VectorSet::new(p.n(), pts)?)
}

/// `{ (u, d - |u|) : u in P }` on the ground set `[n + 1]`.
pub fn lift(p: &DiscretePolymatroid) -> BaseSet {
    let d = p.rank;
    let vectors = p
        .points
        .iter()
        .map(|u| u.extended((d - u.modulus()) as u32))
        .collect();
    BaseSet::new(p.n() + 1, vectors).expect("lift of a nonempty polymatroid")
}

/// Drops the last coordinate of every vector; inverse of [`lift`] on its image.
pub fn unlift(b: &BaseSet) -> Result<VectorSet> {
    if b.n() < 2 {
        return Err(Error::OutOfRange("ground set of size 1 for unlift".into()));
    }
    let vectors = b
        .iter()
        .map(|u| IntVector::new(u.entries()[..b.n() - 1].to_vec()))
        .collect::<Result<_>>()?;
    VectorSet::new(b.n() - 1, vectors)
}

/// `P_1 ∨ ... ∨ P_k = { x_1 + ... + x_k : x_i in P_i }`.
pub fn polymatroid_sum(parts: &[&DiscretePolymatroid]) -> Result<DiscretePolymatroid> {
    let (first, rest) = parts.split_first().ok_or(Error::Empty("polymatroid sum"))?;
    let n = first.n();
    let mut acc: HashSet<IntVector> = first.points.iter().cloned().collect();
    for p in rest {
        if p.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.n(),
            });
        }
        let mut next = HashSet::new();
        for x in &acc {
            for y in p.points.iter() {
                next.insert(x.checked_add(y)?);
                check_cap("polymatroid sum", next.len())?;
            }
        }
        acc = next;
    }
    DiscretePolymatroid::new(VectorSet::new(n, acc.into_iter().collect())?)
}

/// An ordering `(i_1, ..., i_n)` of the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParams(format!(
                    "{order:?} is not a permutation"
                )));
            }
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Next permutation in lexicographic order, or `None` at the last one.
    pub fn next_lex(&self) -> Option<Self> {
        let mut p = self.0.clone();
        let k = (0..p.len().saturating_sub(1))
            .rev()
            .find(|&k| p[k] < p[k + 1])?;
        let l = (k + 1..p.len()).rev().find(|&l| p[k] < p[l])?;
        p.swap(k, l);
        p[k + 1..].reverse();
        Some(Self(p))
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        std::iter::successors(Some(Self::identity(n)), Self::next_lex)
    }
}

/// The greedy point for `π` truncated after `k` steps:
/// `v(i_j) = ρ(A_j) - ρ(A_{j-1})` for `j <= k` with `A_j = {i_1, ..., i_j}`,
/// and zero elsewhere.
pub fn greedy_vertex(rho: &RankFunction, k: usize, pi: &Permutation) -> Result<IntVector> {
    require_valid(rho)?;
    if pi.len() != rho.n {
        return Err(Error::DimensionMismatch {
            expected: rho.n,
            found: pi.len(),
        });
    }
    if k > rho.n {
        return Err(Error::OutOfRange(format!("greedy depth {k}")));
    }
    let mut v = vec![0u32; rho.n];
    let mut prefix = GroundSubset::EMPTY;
    for &i in &pi.0[..k] {
        let next = prefix.with(i);
        let step = rho.value(next) - rho.value(prefix);
        v[i] = u32::try_from(step).map_err(|_| Error::Overflow("greedy vertex"))?;
        prefix = next;
    }
    IntVector::new(v)
}

/// Every greedy point over all depths and orderings. Contains the vertex set
/// of the polytope `{ x >= 0 : x(A) <= ρ(A) }` and lies inside it.
pub fn vertices(rho: &RankFunction) -> Result<VectorSet> {
    require_valid(rho)?;
    if rho.n > 9 {
        return Err(Error::SizeCap {
            what: "permutations for greedy vertices",
            limit: 362_880,
        });
    }
    let mut out = HashSet::new();
    for pi in Permutation::all(rho.n) {
        for k in 0..=rho.n {
            out.insert(greedy_vertex(rho, k, &pi)?);
        }
    }
    VectorSet::new(rho.n, out.into_iter().collect())
}
