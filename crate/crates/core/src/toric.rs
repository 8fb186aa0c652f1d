//! Symmetric exchange relations of a base ring and exhaustive fiber-graph
//! checks of their generating power.
//!
//! A degree-`m` fiber is the set of `m`-element multisets of bases sharing a
//! vector sum. Two members are adjacent when one arises from the other by
//! replacing a pair `{u, v}` with `{u - ε_i + ε_j, v - ε_j + ε_i}`. If every
//! fiber of degree `<= m` is connected, every binomial of the toric ideal of
//! degree `<= m` reduces to zero modulo symmetric exchange relations.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exchange::{self, ExchangeMode};
use crate::polymatroid::BaseSet;
use crate::vector::{IntVector, Packer, Verdict};

/// The binomial `x_u x_v - x_{u'} x_{v'}` with `u' = u - ε_i + ε_j` and
/// `v' = v - ε_j + ε_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeRelation {
    pub left: (IntVector, IntVector),
    pub right: (IntVector, IntVector),
    pub i: usize,
    pub j: usize,
}

impl ExchangeRelation {
    pub fn left_sum(&self) -> IntVector {
        self.left
            .0
            .checked_add(&self.left.1)
            .expect("bounded entries")
    }

    pub fn right_sum(&self) -> IntVector {
        self.right
            .0
            .checked_add(&self.right.1)
            .expect("bounded entries")
    }
}

fn ordered(a: IntVector, b: IntVector) -> (IntVector, IntVector) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn require_base_set(b: &BaseSet) -> Result<()> {
    match exchange::exchange_property(b, ExchangeMode::BaseExchange) {
        Verdict::Holds => Ok(()),
        Verdict::Violated(w) => Err(Error::Precondition(format!(
            "not a base set, exchange fails at {w}"
        ))),
    }
}

type Pair = (IntVector, IntVector);

/// All nontrivial symmetric exchange relations of `b`, one per binomial (up
/// to swapping the two sides), in lexicographic order of the sides. The
/// `(i, j)` kept is the first one found scanning `u, v, i, j` ascending.
pub fn symmetric_exchange_relations(b: &BaseSet) -> Result<Vec<ExchangeRelation>> {
    require_base_set(b)?;
    let n = b.n();
    let mut found: BTreeMap<(Pair, Pair), ExchangeRelation> = BTreeMap::new();
    for u in b.iter() {
        for v in b.iter() {
            for i in (0..n).filter(|&i| u.get(i) > v.get(i)) {
                for j in (0..n).filter(|&j| u.get(j) < v.get(j)) {
                    let (Some(u2), Some(v2)) = (u.exchange(i, j), v.exchange(j, i)) else {
                        continue;
                    };
                    if !b.contains(&u2) || !b.contains(&v2) {
                        continue;
                    }
                    let left = ordered(u.clone(), v.clone());
                    let right = ordered(u2, v2);
                    if left == right {
                        continue;
                    }
                    let key = if left <= right {
                        (left.clone(), right.clone())
                    } else {
                        (right.clone(), left.clone())
                    };
                    found.entry(key).or_insert(ExchangeRelation {
                        left: (u.clone(), v.clone()),
                        right: (u.exchange(i, j).unwrap(), v.exchange(j, i).unwrap()),
                        i,
                        j,
                    });
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

/// All `m`-multisets of bases with vector sum `sum`; members are sorted lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub degree: usize,
    pub sum: IntVector,
    pub members: Vec<Vec<IntVector>>,
}

/// Caps on fiber enumeration. Exceeding one is an error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberLimits {
    pub max_bases: usize,
    pub max_degree: usize,
    pub max_members: usize,
}

impl Default for FiberLimits {
    fn default() -> Self {
        Self {
            max_bases: 64,
            max_degree: 4,
            max_members: crate::point_cap(),
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, t| acc.saturating_mul(n - t) / (t + 1))
}

/// Index multisets of `B`, grouped by packed vector sum.
struct FiberIndex {
    packer: Packer,
    lookup: HashMap<u128, usize>,
    keys: Vec<u128>,
    groups: BTreeMap<Vec<u64>, Vec<Vec<usize>>>,
}

fn index_fibers(b: &BaseSet, m: usize, limits: &FiberLimits) -> Result<FiberIndex> {
    if m < 1 {
        return Err(Error::OutOfRange(format!("fiber degree {m}")));
    }
    if m > limits.max_degree {
        return Err(Error::SizeCap {
            what: "fiber degree",
            limit: limits.max_degree,
        });
    }
    if b.len() > limits.max_bases {
        return Err(Error::SizeCap {
            what: "bases for fiber enumeration",
            limit: limits.max_bases,
        });
    }
    let count = binomial((b.len() + m - 1) as u128, m as u128);
    if count > limits.max_members as u128 {
        return Err(Error::SizeCap {
            what: "fiber members",
            limit: limits.max_members,
        });
    }
    let n = b.n();
    let bounds: Vec<u64> = (0..n)
        .map(|k| b.iter().map(|u| u.get(k) as u64).max().unwrap_or(0) * m as u64 + 1)
        .collect();
    let packer = Packer::new(&bounds)?;
    let keys: Vec<u128> = b.iter().map(|u| packer.pack(u.entries())).collect();
    let lookup = keys.iter().enumerate().map(|(k, &key)| (key, k)).collect();

    let mut groups: BTreeMap<Vec<u64>, Vec<Vec<usize>>> = BTreeMap::new();
    let mut idx = vec![0usize; m];
    loop {
        let mut sum = vec![0u64; n];
        for &k in &idx {
            for (s, &x) in sum.iter_mut().zip(b.vectors()[k].entries()) {
                *s += x as u64;
            }
        }
        groups.entry(sum).or_default().push(idx.clone());
        // next nondecreasing index tuple
        let Some(p) = (0..m).rev().find(|&p| idx[p] + 1 < b.len()) else {
            break;
        };
        let next = idx[p] + 1;
        idx[p..].fill(next);
    }
    Ok(FiberIndex {
        packer,
        lookup,
        keys,
        groups,
    })
}

/// Partition of all `m`-multisets of `b` by vector sum, in lexicographic order
/// of the sums.
pub fn fibers(b: &BaseSet, m: usize) -> Result<Vec<Fiber>> {
    fibers_with(b, m, &FiberLimits::default())
}

pub fn fibers_with(b: &BaseSet, m: usize, limits: &FiberLimits) -> Result<Vec<Fiber>> {
    let index = index_fibers(b, m, limits)?;
    let vs = b.vectors();
    index
        .groups
        .into_iter()
        .map(|(sum, members)| {
            let sum = sum
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| Error::Overflow("fiber sum")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Fiber {
                degree: m,
                sum: IntVector::new(sum)?,
                members: members
                    .into_iter()
                    .map(|ix| ix.into_iter().map(|k| vs[k].clone()).collect())
                    .collect(),
            })
        })
        .collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Members of one fiber with the symmetric-exchange adjacency between them.
#[derive(Clone, Debug)]
pub struct FiberGraph {
    pub vertices: Vec<Vec<IntVector>>,
    pub edges: Vec<(usize, usize)>,
}

impl FiberGraph {
    pub fn build(b: &BaseSet, fiber: &Fiber) -> Result<Self> {
        let position: HashMap<&Vec<IntVector>, usize> = fiber
            .members
            .iter()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let mut edges = Vec::new();
        for (a, member) in fiber.members.iter().enumerate() {
            for next in exchange_neighbours(b, member) {
                let target = *position
                    .get(&next)
                    .ok_or_else(|| Error::Precondition("neighbour outside the fiber".into()))?;
                if a != target {
                    edges.push((a.min(target), a.max(target)));
                }
            }
        }
        edges.sort();
        edges.dedup();
        Ok(Self {
            vertices: fiber.members.clone(),
            edges,
        })
    }

    /// Connected components as sorted lists of vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertices.len() {
            comps.entry(uf.find(v)).or_default().push(v);
        }
        comps.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

fn exchange_neighbours(b: &BaseSet, member: &[IntVector]) -> Vec<Vec<IntVector>> {
    let n = b.n();
    let mut out = Vec::new();
    for p in 0..member.len() {
        for q in p + 1..member.len() {
            let (u, v) = (&member[p], &member[q]);
            for i in (0..n).filter(|&i| u.get(i) > v.get(i)) {
                for j in (0..n).filter(|&j| u.get(j) < v.get(j)) {
                    let u2 = u.exchange(i, j).unwrap();
                    let v2 = v.exchange(j, i).unwrap();
                    if b.contains(&u2) && b.contains(&v2) {
                        let mut next = member.to_vec();
                        next[p] = u2;
                        next[q] = v2;
                        next.sort();
                        out.push(next);
                    }
                }
            }
        }
    }
    out
}

/// A fiber whose graph is disconnected: a candidate counterexample to
/// generation by symmetric exchange relations in this degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisconnectedFiber {
    pub degree: usize,
    pub sum: IntVector,
    pub components: Vec<Vec<Vec<IntVector>>>,
}

/// Whether every degree-`m` fiber of `b` is connected under symmetric
/// exchange moves, with the default [`FiberLimits`].
///
/// A `Holds` verdict certifies this instance in this degree only; it is not a
/// proof of generation in general.
pub fn white_check(b: &BaseSet, m: usize) -> Result<Verdict<DisconnectedFiber>> {
    white_check_with(b, m, &FiberLimits::default())
}

pub fn white_check_with(
    b: &BaseSet,
    m: usize,
    limits: &FiberLimits,
) -> Result<Verdict<DisconnectedFiber>> {
    if m < 2 {
        return Err(Error::OutOfRange(format!(
            "white check degree {m} (need >= 2)"
        )));
    }
    require_base_set(b)?;
    let index = index_fibers(b, m, limits)?;
    let n = b.n();
    let vs = b.vectors();

    for (sum, members) in &index.groups {
        if members.len() < 2 {
            continue;
        }
        let position: HashMap<&[usize], usize> = members
            .iter()
            .enumerate()
            .map(|(k, ix)| (ix.as_slice(), k))
            .collect();
        let mut uf = UnionFind::new(members.len());
        let mut scratch = Vec::with_capacity(m);
        for (a, ix) in members.iter().enumerate() {
            for p in 0..m {
                for q in p + 1..m {
                    let (x, y) = (ix[p], ix[q]);
                    if x == y {
                        continue;
                    }
                    let (u, v) = (&vs[x], &vs[y]);
                    for i in 0..n {
                        if u.get(i) <= v.get(i) {
                            continue;
                        }
                        for j in 0..n {
                            if u.get(j) >= v.get(j) {
                                continue;
                            }
                            let (si, sj) = (index.packer.stride(i), index.packer.stride(j));
                            let ku = index.keys[x] - si + sj;
                            let kv = index.keys[y] - sj + si;
                            let (Some(&x2), Some(&y2)) =
                                (index.lookup.get(&ku), index.lookup.get(&kv))
                            else {
                                continue;
                            };
                            scratch.clear();
                            scratch.extend_from_slice(ix);
                            scratch[p] = x2;
                            scratch[q] = y2;
                            scratch.sort_unstable();
                            let target = position[scratch.as_slice()];
                            uf.union(a, target);
                        }
                    }
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<Vec<IntVector>>> = BTreeMap::new();
        for (k, ix) in members.iter().enumerate() {
            comps
                .entry(uf.find(k))
                .or_default()
                .push(ix.iter().map(|&t| vs[t].clone()).collect());
        }
        if comps.len() > 1 {
            let sum = sum.iter().map(|&x| x as u32).collect();
            return Ok(Verdict::Violated(DisconnectedFiber {
                degree: m,
                sum: IntVector::new(sum)?,
                components: comps.into_values().collect(),
            }));
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::rewrite_balanced;
    use crate::vector::iv;

    fn bs(n: usize, vs: &[&[u32]]) -> BaseSet {
        BaseSet::new(n, vs.iter().map(|v| iv(v)).collect()).unwrap()
    }

    fn ex_b() -> BaseSet {
        bs(
            4,
            &[&[1, 1, 1, 1], &[0, 2, 0, 2], &[0, 1, 1, 2], &[1, 2, 0, 1]],
        )
    }

    fn ex_f() -> BaseSet {
        crate::constructions::principal_borel(&iv(&[0, 1, 0, 1]))
            .unwrap()
            .try_into()
            .unwrap()
    }

    #[test]
    fn relation_examples() {
        assert!(symmetric_exchange_relations(&bs(2, &[&[1, 1]]))
            .unwrap()
            .is_empty());
        assert!(symmetric_exchange_relations(&bs(2, &[&[2, 1], &[1, 2]]))
            .unwrap()
            .is_empty());
        let rels = symmetric_exchange_relations(&ex_b()).unwrap();
        let side_a = (iv(&[0, 2, 0, 2]), iv(&[1, 1, 1, 1]));
        let side_b = (iv(&[0, 1, 1, 2]), iv(&[1, 2, 0, 1]));
        assert!(rels.iter().any(|r| {
            let sides = (
                ordered(r.left.0.clone(), r.left.1.clone()),
                ordered(r.right.0.clone(), r.right.1.clone()),
            );
            sides == (side_a.clone(), side_b.clone()) || sides == (side_b.clone(), side_a.clone())
        }));
        for r in &rels {
            assert_eq!(r.left_sum(), r.right_sum());
            assert!(r.left.0.get(r.i) > r.left.1.get(r.i));
            assert!(r.left.0.get(r.j) < r.left.1.get(r.j));
        }
        let e = bs(
            3,
            &[&[3, 0, 1], &[1, 3, 0], &[3, 1, 0], &[2, 2, 0], &[4, 0, 0]],
        );
        assert!(symmetric_exchange_relations(&e).is_err());
    }

    #[test]
    fn fiber_examples() {
        let b = ex_b();
        let f1 = fibers(&b, 1).unwrap();
        assert_eq!(f1.len(), b.len());
        assert!(f1.iter().all(|f| f.members.len() == 1));

        let small = bs(2, &[&[2, 1], &[1, 2]]);
        let f2 = fibers(&small, 2).unwrap();
        assert_eq!(f2.len(), 3);
        assert!(f2.iter().all(|f| f.members.len() == 1));

        let f2 = fibers(&b, 2).unwrap();
        let target = f2.iter().find(|f| f.sum == iv(&[1, 3, 1, 3])).unwrap();
        assert!(target
            .members
            .contains(&vec![iv(&[0, 2, 0, 2]), iv(&[1, 1, 1, 1])]));
        assert!(target
            .members
            .contains(&vec![iv(&[0, 1, 1, 2]), iv(&[1, 2, 0, 1])]));
        assert!(fibers(&b, 0).is_err());
        // |sum| = m * d everywhere
        assert!(f2.iter().all(|f| f.sum.modulus() == 2 * b.modulus()));
    }

    #[test]
    fn white_examples() {
        assert!(white_check(&ex_b(), 2).unwrap().holds());
        assert!(white_check(&ex_f(), 2).unwrap().holds());
        assert!(white_check(&ex_f(), 3).unwrap().holds());
        assert!(white_check(&bs(3, &[&[1, 1, 1]]), 2).unwrap().holds());
        let d = bs(
            3,
            &[&[2, 1, 1], &[2, 2, 0], &[3, 0, 1], &[3, 1, 0], &[4, 0, 0]],
        );
        for m in 2..=4 {
            assert!(white_check(&d, m).unwrap().holds());
        }
        assert!(white_check(&d, 1).is_err());
        assert!(matches!(white_check(&d, 5), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn disconnected_fiber_is_reported() {
        // not a base set, so rejected up front
        let e = bs(
            3,
            &[&[3, 0, 1], &[1, 3, 0], &[3, 1, 0], &[2, 2, 0], &[4, 0, 0]],
        );
        assert!(white_check(&e, 2).is_err());
        // {(2,1,0),(0,1,2)} and {(1,0,2),(1,2,0)} share a sum but no move links them
        let broken = bs(3, &[&[2, 1, 0], &[0, 1, 2], &[1, 0, 2], &[1, 2, 0]]);
        let f = fibers(&broken, 2).unwrap();
        let fib = f.iter().find(|f| f.sum == iv(&[2, 2, 2])).unwrap();
        let g = FiberGraph::build(&broken, fib).unwrap();
        assert_eq!(fib.members.len(), 2);
        assert!(!g.is_connected());
        assert_eq!(g.components(), vec![vec![0], vec![1]]);
        // moves that do exist connect the fiber
        let pair = bs(2, &[&[2, 0], &[0, 2], &[1, 1]]);
        let f = fibers(&pair, 2).unwrap();
        let fib = f.iter().find(|f| f.sum == iv(&[2, 2])).unwrap();
        assert!(FiberGraph::build(&pair, fib).unwrap().is_connected());
    }

    #[test]
    fn fiber_graph_agrees_with_white_check() {
        let b = ex_f();
        for f in fibers(&b, 2).unwrap() {
            let g = FiberGraph::build(&b, &f).unwrap();
            assert!(g.is_connected(), "{f:?} {g:?}");
        }
    }

    #[test]
    fn balancing_lands_in_the_box_of_the_fiber() {
        let b = ex_f();
        for m in 2..=3 {
            for f in fibers(&b, m).unwrap() {
                let floor: Vec<u32> = f.sum.entries().iter().map(|&w| w / m as u32).collect();
                for member in &f.members {
                    let (out, _) = rewrite_balanced(member, &b).unwrap();
                    let total = out
                        .iter()
                        .skip(1)
                        .fold(out[0].clone(), |acc, x| acc.checked_add(x).unwrap());
                    assert_eq!(total, f.sum);
                    for u in &out {
                        for (k, &f) in floor.iter().enumerate() {
                            assert!(f <= u.get(k) && u.get(k) <= f + 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn binomial_counts() {
        assert_eq!(binomial(67, 4), 766_480);
        assert_eq!(binomial(5, 0), 1);
    }
}
