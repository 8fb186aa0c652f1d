//! Exchange properties of base sets, the sorting operator, and the balancing
//! rewrite by symmetric exchanges.

use std::fmt;

use crate::error::{Error, Result};
use crate::polymatroid::BaseSet;
use crate::vector::{IntVector, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExchangeMode {
    /// Some `u - ε_i + ε_j` stays in the set, for every `u != v`.
    Weak,
    /// Every `u - ε_i + ε_j` with `u(i) > v(i)`, `u(j) < v(j)` stays in the set.
    Strong,
    /// For every `i` with `u(i) > v(i)` some `j` with `u(j) < v(j)` works.
    BaseExchange,
    /// As `BaseExchange`, with `v - ε_j + ε_i` required in the set as well.
    Symmetric,
}

impl ExchangeMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Weak => "weak",
            Self::Strong => "strong",
            Self::BaseExchange => "base",
            Self::Symmetric => "symmetric",
        }
    }
}

/// A failing exchange instance. `i` and `j` are present as far as the mode
/// pins them down: weak failures name only the pair, base and symmetric
/// failures add `i`, strong failures name the full quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub u: IntVector,
    pub v: IntVector,
    pub i: Option<usize>,
    pub j: Option<usize>,
}

impl fmt::Display for ExchangeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={} v={}", self.u, self.v)?;
        if let Some(i) = self.i {
            write!(f, " i={}", i + 1)?;
        }
        if let Some(j) = self.j {
            write!(f, " j={}", j + 1)?;
        }
        Ok(())
    }
}

fn up_down(u: &IntVector, v: &IntVector) -> (Vec<usize>, Vec<usize>) {
    let n = u.len();
    let up = (0..n).filter(|&k| u.get(k) > v.get(k)).collect();
    let down = (0..n).filter(|&k| u.get(k) < v.get(k)).collect();
    (up, down)
}

fn moved_in(b: &BaseSet, u: &IntVector, i: usize, j: usize) -> bool {
    u.exchange(i, j).is_some_and(|w| b.contains(&w))
}

/// Checks the selected exchange property over all ordered pairs of distinct
/// members, in lexicographic order. The first failing tuple is the witness.
pub fn exchange_property(b: &BaseSet, mode: ExchangeMode) -> Verdict<ExchangeWitness> {
    for u in b.iter() {
        for v in b.iter() {
            if u == v {
                continue;
            }
            let (up, down) = up_down(u, v);
            let fail = |i: Option<usize>, j: Option<usize>| {
                Verdict::Violated(ExchangeWitness {
                    u: u.clone(),
                    v: v.clone(),
                    i,
                    j,
                })
            };
            match mode {
                ExchangeMode::Weak => {
                    let ok = up
                        .iter()
                        .any(|&i| down.iter().any(|&j| moved_in(b, u, i, j)));
                    if !ok {
                        return fail(None, None);
                    }
                }
                ExchangeMode::Strong => {
                    for &i in &up {
                        for &j in &down {
                            if !moved_in(b, u, i, j) {
                                return fail(Some(i), Some(j));
                            }
                        }
                    }
                }
                ExchangeMode::BaseExchange => {
                    for &i in &up {
                        if !down.iter().any(|&j| moved_in(b, u, i, j)) {
                            return fail(Some(i), None);
                        }
                    }
                }
                ExchangeMode::Symmetric => {
                    for &i in &up {
                        if first_symmetric_j(b, u, v, i, &down).is_none() {
                            return fail(Some(i), None);
                        }
                    }
                }
            }
        }
    }
    Verdict::Holds
}

fn first_symmetric_j(
    b: &BaseSet,
    u: &IntVector,
    v: &IntVector,
    i: usize,
    down: &[usize],
) -> Option<usize> {
    down.iter()
        .copied()
        .find(|&j| moved_in(b, u, i, j) && moved_in(b, v, j, i))
}

/// The smallest `j` with `u(j) < v(j)` such that both `u - ε_i + ε_j` and
/// `v - ε_j + ε_i` lie in `b`; `None` if there is none, which can only happen
/// when `b` is not a base set.
pub fn symmetric_exchange_witness(
    b: &BaseSet,
    u: &IntVector,
    v: &IntVector,
    i: usize,
) -> Result<Option<usize>> {
    if !b.contains(u) || !b.contains(v) {
        return Err(Error::Precondition(
            "both vectors must belong to the base set".into(),
        ));
    }
    if i >= b.n() || u.get(i) <= v.get(i) {
        return Err(Error::Precondition(format!(
            "need u(i) > v(i) at i = {}",
            i + 1
        )));
    }
    let (_, down) = up_down(u, v);
    Ok(first_symmetric_j(b, u, v, i, &down))
}

/// Whether every `(u, v, i)` with `u(i) > v(i)` has a symmetric exchange
/// partner `j`. Holds for every genuine base set.
pub fn verify_symmetric_exchange(b: &BaseSet) -> Verdict<ExchangeWitness> {
    exchange_property(b, ExchangeMode::Symmetric)
}

/// The weaker exchange satisfied by every strongly stable set: for `u != v`
/// there are `i, j` with `u(i) > v(i)`, `u(j) < v(j)` and either
/// `u - ε_i + ε_j` or `v - ε_j + ε_i` in the set.
pub fn either_side_exchange(b: &BaseSet) -> Verdict<(IntVector, IntVector)> {
    for u in b.iter() {
        for v in b.iter().filter(|v| *v != u) {
            let (up, down) = up_down(u, v);
            let ok = up.iter().any(|&i| {
                down.iter()
                    .any(|&j| moved_in(b, u, i, j) || moved_in(b, v, j, i))
            });
            if !ok {
                return Verdict::Violated((u.clone(), v.clone()));
            }
        }
    }
    Verdict::Holds
}

fn check_pair(u: &IntVector, v: &IntVector) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    if u.modulus() != v.modulus() {
        return Err(Error::ModulusMismatch {
            left: u.modulus(),
            right: v.modulus(),
        });
    }
    Ok(())
}

/// The sorting operator: merge the index multisets of `u` and `v` into one
/// nondecreasing sequence and deal its positions alternately, first to `u'`,
/// then to `v'`.
pub fn sort_pair(u: &IntVector, v: &IntVector) -> Result<(IntVector, IntVector)> {
    check_pair(u, v)?;
    let n = u.len();
    let mut first = vec![0u32; n];
    let mut second = vec![0u32; n];
    let mut pos: u64 = 0;
    for k in 0..n {
        let c = u.get(k) as u64 + v.get(k) as u64;
        // positions pos..pos+c; even 0-based positions go to the first vector
        let evens = (pos + c).div_ceil(2) - pos.div_ceil(2);
        first[k] = evens as u32;
        second[k] = (c - evens) as u32;
        pos += c;
    }
    Ok((IntVector::new(first)?, IntVector::new(second)?))
}

/// Whether `(u, v)` is a fixed point of the sorting operator, via the prefix
/// inequalities `U_i - 1 <= V_i <= U_i` on partial sums.
pub fn is_sorted(u: &IntVector, v: &IntVector) -> Result<bool> {
    check_pair(u, v)?;
    let (mut pu, mut pv) = (0i64, 0i64);
    for k in 0..u.len() {
        pu += u.get(k) as i64;
        pv += v.get(k) as i64;
        if pv > pu || pv < pu - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Signs of the nonzero entries of a `{-1, 0, 1}` difference vector, read left
/// to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSequence(Vec<Sign>);

impl SignSequence {
    /// The sequence of `u - v`, or `None` when some entry lies outside
    /// `{-1, 0, 1}`.
    pub fn of_difference(u: &IntVector, v: &IntVector) -> Option<Self> {
        if u.len() != v.len() {
            return None;
        }
        let mut signs = Vec::new();
        for k in 0..u.len() {
            match u.get(k) as i64 - v.get(k) as i64 {
                0 => {}
                1 => signs.push(Sign::Plus),
                -1 => signs.push(Sign::Minus),
                _ => return None,
            }
        }
        Some(Self(signs))
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// `+-+-...+-` (the empty sequence included).
    pub fn is_alternating(&self) -> bool {
        self.0.len().is_multiple_of(2) && self.0.chunks(2).all(|c| c == [Sign::Plus, Sign::Minus])
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// Whether `b` is closed under the sorting operator; otherwise the first
/// unordered pair whose sorted image leaves `b`.
pub fn is_sortable(b: &BaseSet) -> Verdict<(IntVector, IntVector)> {
    let vs = b.vectors();
    for (a, u) in vs.iter().enumerate() {
        for v in &vs[a + 1..] {
            let (s, t) = sort_pair(u, v).expect("equal moduli in a base set");
            if !b.contains(&s) || !b.contains(&t) {
                return Verdict::Violated((u.clone(), v.clone()));
            }
        }
    }
    Verdict::Holds
}

/// One symmetric exchange applied during [`rewrite_balanced`]: the entries at
/// positions `k` and `l` were `u` and `v`, and became `u - ε_i + ε_j` and
/// `v - ε_j + ε_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub k: usize,
    pub l: usize,
    pub u: IntVector,
    pub v: IntVector,
    pub i: usize,
    pub j: usize,
}

/// `Σ_{k<l} |u_k(i) - u_l(i)|`.
pub fn spread_potential(seq: &[IntVector], i: usize) -> u64 {
    let mut total = 0;
    for (a, x) in seq.iter().enumerate() {
        for y in &seq[a + 1..] {
            total += (x.get(i) as i64 - y.get(i) as i64).unsigned_abs();
        }
    }
    total
}

/// Rewrites a sequence of bases by symmetric exchanges until every coordinate
/// differs by at most one across the sequence.
///
/// Each step takes the first `(i, k, l)` (with `k < l`) whose entries differ by
/// at least two at `i`, and exchanges with the smallest admissible `j`. The
/// spread potential at `i` drops strictly and at `j` does not grow, so the
/// loop terminates. The vector sum of the sequence is preserved.
pub fn rewrite_balanced(seq: &[IntVector], b: &BaseSet) -> Result<(Vec<IntVector>, Vec<Move>)> {
    if let Some(bad) = seq.iter().find(|u| !b.contains(u)) {
        return Err(Error::Precondition(format!("{bad} is not in the base set")));
    }
    let n = b.n();
    let mut cur = seq.to_vec();
    let mut moves = Vec::new();
    loop {
        let pivot = (0..n).find_map(|i| {
            (0..cur.len()).find_map(|k| {
                (k + 1..cur.len())
                    .find(|&l| cur[k].get(i).abs_diff(cur[l].get(i)) >= 2)
                    .map(|l| (i, k, l))
            })
        });
        let Some((i, k, l)) = pivot else {
            return Ok((cur, moves));
        };
        let (hi, lo) = if cur[k].get(i) > cur[l].get(i) {
            (k, l)
        } else {
            (l, k)
        };
        let (u, v) = (cur[hi].clone(), cur[lo].clone());
        let (_, down) = up_down(&u, &v);
        let j = first_symmetric_j(b, &u, &v, i, &down).ok_or_else(|| {
            Error::InvalidBaseSet(format!("no symmetric exchange for u={u} v={v} i={}", i + 1))
        })?;
        let before = spread_potential(&cur, i);
        cur[hi] = u.exchange(i, j).expect("u(i) > v(i) >= 0");
        cur[lo] = v.exchange(j, i).expect("v(j) > u(j) >= 0");
        debug_assert!(spread_potential(&cur, i) < before);
        moves.push(Move {
            k: hi,
            l: lo,
            u,
            v,
            i,
            j,
        });
    }
}
