//! Standard families of discrete polymatroids: Veronese type, strongly stable
//! and principal Borel sets, sublattice polymatroids, and transversal
//! polymatroids.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::check_cap;
use crate::error::{Error, Result};
use crate::polymatroid::{
    polymatroid_from_rank, rank_function, BaseSet, DiscretePolymatroid, RankFunction, VectorSet,
    MAX_RANK_GROUND_SET,
};
use crate::vector::{GroundSubset, IntVector, Verdict};

/// `{ u : 0 <= u(i) <= s(i), |u| = d }`.
pub fn veronese(s: &IntVector, d: u64) -> Result<BaseSet> {
    if s.modulus() < d {
        return Err(Error::Precondition(format!(
            "caps {s} sum to {}, below d = {d}",
            s.modulus()
        )));
    }
    let n = s.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    // Remaining cap mass after position k, for pruning.
    let mut tail = vec![0u64; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1] + s.get(k) as u64;
    }
    fn go(
        k: usize,
        left: u64,
        s: &IntVector,
        tail: &[u64],
        cur: &mut Vec<u32>,
        out: &mut Vec<IntVector>,
    ) -> Result<()> {
        if k == cur.len() {
            if left == 0 {
                out.push(IntVector::new(cur.clone())?);
                check_cap("Veronese bases", out.len())?;
            }
            return Ok(());
        }
        let hi = left.min(s.get(k) as u64);
        let lo = left.saturating_sub(tail[k + 1]);
        for x in lo..=hi {
            cur[k] = x as u32;
            go(k + 1, left - x, s, tail, cur, out)?;
        }
        cur[k] = 0;
        Ok(())
    }
    go(0, d, s, &tail, &mut cur, &mut out)?;
    BaseSet::new(n, out)
}

/// A move `u - ε_i + ε_j` with `j < i` that leaves the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityWitness {
    pub u: IntVector,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for StabilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} - e{} + e{} is missing",
            self.u,
            self.i + 1,
            self.j + 1
        )
    }
}

/// Whether `S` is closed under `u ↦ u - ε_i + ε_j` for `j < i`, `u(i) > 0`.
pub fn is_strongly_stable(s: &VectorSet) -> Result<Verdict<StabilityWitness>> {
    if let Some(first) = s.vectors().first() {
        if let Some(u) = s.iter().find(|u| u.modulus() != first.modulus()) {
            return Err(Error::ModulusMismatch {
                left: first.modulus(),
                right: u.modulus(),
            });
        }
    }
    for u in s.iter() {
        for i in 0..s.n() {
            for j in 0..i {
                if let Some(w) = u.exchange(i, j) {
                    if !s.contains(&w) {
                        return Ok(Verdict::Violated(StabilityWitness { u: u.clone(), i, j }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The smallest strongly stable set containing `u`.
pub fn principal_borel(u: &IntVector) -> Result<VectorSet> {
    let n = u.len();
    let mut seen: HashSet<IntVector> = HashSet::from([u.clone()]);
    let mut queue = vec![u.clone()];
    while let Some(v) = queue.pop() {
        for i in 0..n {
            for j in 0..i {
                if let Some(w) = v.exchange(i, j) {
                    if seen.insert(w.clone()) {
                        check_cap("principal Borel set", seen.len())?;
                        queue.push(w);
                    }
                }
            }
        }
    }
    VectorSet::new(n, seen.into_iter().collect())
}

/// [`principal_borel`] as a base set.
pub fn principal_borel_bases(u: &IntVector) -> Result<BaseSet> {
    BaseSet::try_from(principal_borel(u)?)
}

/// A sublattice of the Boolean lattice `2^[n]` containing `∅` and `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    n: usize,
    members: BTreeSet<GroundSubset>,
}

impl Sublattice {
    pub fn new(n: usize, members: impl IntoIterator<Item = GroundSubset>) -> Result<Self> {
        if n == 0 || n > MAX_RANK_GROUND_SET {
            return Err(Error::OutOfRange(format!("ground set size {n}")));
        }
        let members: BTreeSet<GroundSubset> = members.into_iter().collect();
        if let Some(a) = members.iter().find(|a| !a.fits(n)) {
            return Err(Error::InvalidParams(format!(
                "{a:?} is not a subset of [{n}]"
            )));
        }
        for required in [GroundSubset::EMPTY, GroundSubset::full(n)] {
            if !members.contains(&required) {
                return Err(Error::InvalidParams(format!(
                    "sublattice must contain {required:?}"
                )));
            }
        }
        for &a in &members {
            for &b in &members {
                for c in [a.union(b), a.intersection(b)] {
                    if !members.contains(&c) {
                        return Err(Error::InvalidParams(format!(
                            "not closed: {c:?} from {a:?} and {b:?}"
                        )));
                    }
                }
            }
        }
        Ok(Self { n, members })
    }

    /// `∅ ⊂ {n} ⊂ {n-1, n} ⊂ ... ⊂ [n]`.
    pub fn suffix_chain(n: usize) -> Result<Self> {
        Self::new(n, (0..=n).map(|k| GroundSubset::from_elements(n - k..n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> impl Iterator<Item = GroundSubset> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, a: GroundSubset) -> bool {
        self.members.contains(&a)
    }
}

/// `{ u : u(A) <= μ(A) for all A in L }`.
///
/// `μ` must be defined on every member of `L`, vanish on `∅`, and be
/// nondecreasing and submodular on `L`.
pub fn sublattice_polymatroid(
    l: &Sublattice,
    mu: &BTreeMap<GroundSubset, u64>,
) -> Result<DiscretePolymatroid> {
    let value = |a: GroundSubset| -> Result<u64> {
        mu.get(&a)
            .copied()
            .ok_or_else(|| Error::InvalidParams(format!("mu undefined on {a:?}")))
    };
    if let Some(a) = mu.keys().find(|a| !l.contains(**a)) {
        return Err(Error::InvalidParams(format!(
            "{a:?} is not in the sublattice"
        )));
    }
    if value(GroundSubset::EMPTY)? != 0 {
        return Err(Error::InvalidParams("mu of the empty set must be 0".into()));
    }
    for a in l.members() {
        for b in l.members() {
            let (ma, mb) = (value(a)?, value(b)?);
            if a.is_subset_of(b) && ma > mb {
                return Err(Error::InvalidParams(format!(
                    "mu decreases from {a:?} to {b:?}"
                )));
            }
            if value(a.union(b))? + value(a.intersection(b))? > ma + mb {
                return Err(Error::InvalidParams(format!(
                    "mu is not submodular on {a:?}, {b:?}"
                )));
            }
        }
    }
    let rho = RankFunction::from_fn(l.n, |x| {
        l.members()
            .filter(|a| x.is_subset_of(*a))
            .map(|a| mu[&a])
            .min()
            .expect("[n] is a member")
    })?;
    polymatroid_from_rank(&rho)
}

/// A family `(A_1, ..., A_d)` of nonempty subsets of `[n]`, repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalPresentation {
    n: usize,
    family: Vec<GroundSubset>,
}

impl TransversalPresentation {
    pub fn new(n: usize, family: Vec<GroundSubset>) -> Result<Self> {
        if n == 0 || n > MAX_RANK_GROUND_SET {
            return Err(Error::OutOfRange(format!("ground set size {n}")));
        }
        if family.is_empty() {
            return Err(Error::Empty("transversal family"));
        }
        if let Some(a) = family.iter().find(|a| a.is_empty() || !a.fits(n)) {
            return Err(Error::InvalidParams(format!(
                "family member {a:?} must be a nonempty subset of [{n}]"
            )));
        }
        Ok(Self { n, family })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &[GroundSubset] {
        &self.family
    }

    /// `ρ_A(X) = |{ k : A_k ∩ X ≠ ∅ }|`.
    pub fn rank_function(&self) -> RankFunction {
        RankFunction::from_fn(self.n, |x| {
            self.family
                .iter()
                .filter(|a| !a.intersection(x).is_empty())
                .count() as u64
        })
        .expect("n within table limits")
    }
}

/// `B_A = { ε_{i_1} + ... + ε_{i_d} : i_k in A_k }` and its rank function.
pub fn transversal(pres: &TransversalPresentation) -> Result<(BaseSet, RankFunction)> {
    let n = pres.n;
    let mut acc: HashSet<IntVector> = HashSet::from([IntVector::zeros(n)]);
    for a in &pres.family {
        let mut next = HashSet::new();
        for v in &acc {
            for i in a.elements() {
                next.insert(v.add_unit(i)?);
            }
            check_cap("transversal bases", next.len())?;
        }
        acc = next;
    }
    let b = BaseSet::new(n, acc.into_iter().collect())?;
    let rho = pres.rank_function();
    if rank_function(&b) != rho {
        return Err(Error::Inconsistent(
            "transversal bases disagree with the presentation rank".into(),
        ));
    }
    Ok((b, rho))
}

/// Search limits for [`is_transversal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransversalLimits {
    pub max_n: usize,
    pub max_rank: u64,
}

impl Default for TransversalLimits {
    fn default() -> Self {
        Self {
            max_n: 5,
            max_rank: 4,
        }
    }
}

/// A presentation of `P` as a transversal polymatroid, if one exists.
pub fn is_transversal(p: &DiscretePolymatroid) -> Result<Option<TransversalPresentation>> {
    is_transversal_with(p, TransversalLimits::default())
}

pub fn is_transversal_with(
    p: &DiscretePolymatroid,
    limits: TransversalLimits,
) -> Result<Option<TransversalPresentation>> {
    let n = p.n();
    let d = p.rank();
    if n > limits.max_n || d > limits.max_rank {
        return Err(Error::SizeCap {
            what: "transversal search (n, rank)",
            limit: limits.max_n.min(limits.max_rank as usize),
        });
    }
    if d == 0 {
        return Err(Error::Precondition(
            "rank 0 has no presentation with d >= 1".into(),
        ));
    }
    let target = p.rank_function();
    let universe = p
        .bases()
        .iter()
        .fold(GroundSubset::EMPTY, |acc, u| acc.union(u.support()));
    let candidates: Vec<GroundSubset> = GroundSubset::all(n)
        .skip(1)
        .filter(|a| a.is_subset_of(universe))
        .collect();

    struct Search<'a> {
        candidates: &'a [GroundSubset],
        target: &'a RankFunction,
        d: u64,
        counts: Vec<u64>,
        chosen: Vec<GroundSubset>,
    }

    impl Search<'_> {
        fn feasible(&self) -> bool {
            let left = self.d - self.chosen.len() as u64;
            self.counts
                .iter()
                .zip(self.target.values())
                .all(|(&c, &r)| c <= r && c + left >= r)
        }

        fn apply(&mut self, a: GroundSubset, sign: bool) {
            for (x, c) in self.counts.iter_mut().enumerate() {
                if a.mask() & x as u64 != 0 {
                    if sign {
                        *c += 1;
                    } else {
                        *c -= 1;
                    }
                }
            }
        }

        fn run(&mut self, start: usize) -> bool {
            if self.chosen.len() as u64 == self.d {
                return self.counts == self.target.values();
            }
            for k in start..self.candidates.len() {
                let a = self.candidates[k];
                self.apply(a, true);
                self.chosen.push(a);
                if self.feasible() && self.run(k) {
                    return true;
                }
                self.chosen.pop();
                self.apply(a, false);
            }
            false
        }
    }

    let mut search = Search {
        candidates: &candidates,
        target: &target,
        d,
        counts: vec![0; 1 << n],
        chosen: Vec::new(),
    };
    if !search.run(0) {
        return Ok(None);
    }
    let pres = TransversalPresentation::new(n, search.chosen)?;
    let (b, _) = transversal(&pres)?;
    if &b != p.bases() {
        return Err(Error::Inconsistent(
            "presentation rank matches but bases differ".into(),
        ));
    }
    Ok(Some(pres))
}

/// The vector `a` generating the principal Borel set `B_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelGenerator(IntVector);

impl BorelGenerator {
    pub fn new(a: IntVector) -> Result<Self> {
        if a.get(a.len() - 1) == 0 {
            return Err(Error::Precondition(
                "the last entry of the Borel generator must be positive".into(),
            ));
        }
        Ok(Self(a))
    }

    pub fn vector(&self) -> &IntVector {
        &self.0
    }

    pub fn bases(&self) -> Result<BaseSet> {
        principal_borel_bases(&self.0)
    }
}

/// Gorenstein test for `K[B_a]`: `a_2 + ... + a_n` divides `n` and
/// `(n - i + 2) / (a_i + ... + a_n) = n / (a_2 + ... + a_n)` for every
/// `3 <= i <= n` with `a_{i-1} ≠ 0`.
pub fn borel_gorenstein(a: &BorelGenerator) -> bool {
    let v = a.0.entries();
    let n = v.len();
    if n == 1 {
        return true;
    }
    // tail[k] = a_k + ... + a_n with 1-based k
    let mut tail = vec![0u64; n + 2];
    for k in (1..=n).rev() {
        tail[k] = tail[k + 1] + v[k - 1] as u64;
    }
    let n64 = n as u64;
    if !n64.is_multiple_of(tail[2]) {
        return false;
    }
    (3..=n)
        .filter(|&i| v[i - 2] != 0)
        .all(|i| (n64 - i as u64 + 2) * tail[2] == n64 * tail[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::{exchange_property, ExchangeMode};
    use crate::polymatroid::{is_base_set, is_discrete_polymatroid};
    use crate::vector::iv;

    fn set(n: usize, vs: &[&[u32]]) -> VectorSet {
        VectorSet::new(n, vs.iter().map(|v| iv(v)).collect()).unwrap()
    }

    #[test]
    fn veronese_examples() {
        let b = veronese(&iv(&[1, 1, 1, 1]), 2).unwrap();
        assert_eq!(b.len(), 6);
        assert!(b.iter().all(|u| u.entries().iter().all(|&x| x <= 1)));
        assert_eq!(
            veronese(&iv(&[2, 2]), 3).unwrap().vectors(),
            &[iv(&[1, 2]), iv(&[2, 1])]
        );
        assert_eq!(veronese(&iv(&[3, 3, 3]), 3).unwrap().len(), 10);
        assert!(veronese(&iv(&[1, 1]), 3).is_err());
        for (s, d) in [(vec![2, 1, 2], 3), (vec![3, 0, 2, 1], 4)] {
            let b = veronese(&iv(&s), d).unwrap();
            assert!(exchange_property(&b, ExchangeMode::Strong).holds());
        }
    }

    #[test]
    fn strongly_stable_examples() {
        let s = set(
            3,
            &[&[3, 0, 1], &[1, 3, 0], &[3, 1, 0], &[2, 2, 0], &[4, 0, 0]],
        );
        assert!(is_strongly_stable(&s).unwrap().holds());
        let s = set(2, &[&[0, 1]]);
        assert_eq!(
            is_strongly_stable(&s).unwrap().witness(),
            Some(&StabilityWitness {
                u: iv(&[0, 1]),
                i: 1,
                j: 0
            })
        );
        assert!(is_strongly_stable(&set(3, &[&[2, 0, 0]])).unwrap().holds());
        assert!(is_strongly_stable(&set(2, &[&[1, 0], &[2, 0]])).is_err());
    }

    #[test]
    fn principal_borel_examples() {
        let b = principal_borel(&iv(&[0, 1, 0, 1])).unwrap();
        let expect = set(
            4,
            &[
                &[0, 1, 0, 1],
                &[0, 1, 1, 0],
                &[0, 2, 0, 0],
                &[1, 0, 0, 1],
                &[1, 0, 1, 0],
                &[1, 1, 0, 0],
                &[2, 0, 0, 0],
            ],
        );
        assert_eq!(b, expect);
        assert_eq!(principal_borel(&iv(&[3, 0, 0])).unwrap().len(), 1);
        let b = principal_borel(&iv(&[2, 1, 1])).unwrap();
        let expect = set(
            3,
            &[&[4, 0, 0], &[3, 1, 0], &[3, 0, 1], &[2, 2, 0], &[2, 1, 1]],
        );
        assert_eq!(b, expect);
        assert!(is_base_set(&BaseSet::try_from(b).unwrap()).holds());
    }

    #[test]
    fn sublattice_examples() {
        let chain = Sublattice::new(
            2,
            [
                GroundSubset::EMPTY,
                GroundSubset::singleton(1),
                GroundSubset::full(2),
            ],
        )
        .unwrap();
        let mu = BTreeMap::from([
            (GroundSubset::EMPTY, 0),
            (GroundSubset::singleton(1), 1),
            (GroundSubset::full(2), 2),
        ]);
        let p = sublattice_polymatroid(&chain, &mu).unwrap();
        let expect = set(2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1]]);
        assert_eq!(p.points(), &expect);

        let trivial = Sublattice::new(3, [GroundSubset::EMPTY, GroundSubset::full(3)]).unwrap();
        let mu = BTreeMap::from([(GroundSubset::EMPTY, 0), (GroundSubset::full(3), 2)]);
        let p = sublattice_polymatroid(&trivial, &mu).unwrap();
        assert!(p.points().iter().all(|u| u.modulus() <= 2));
        assert_eq!(p.len(), 10);

        assert!(Sublattice::new(
            2,
            [
                GroundSubset::EMPTY,
                GroundSubset::singleton(0),
                GroundSubset::singleton(1),
                GroundSubset::full(2)
            ]
        )
        .is_ok());
        assert!(Sublattice::new(
            3,
            [
                GroundSubset::EMPTY,
                GroundSubset::singleton(0),
                GroundSubset::singleton(1),
                GroundSubset::full(3)
            ]
        )
        .is_err());
    }

    #[test]
    fn suffix_chain_matches_closed_form() {
        let a = [1u64, 0, 2, 1];
        let n = a.len();
        let chain = Sublattice::suffix_chain(n).unwrap();
        let mu: BTreeMap<_, _> = chain
            .members()
            .map(|m| (m, m.elements().map(|i| a[i]).sum()))
            .collect();
        let p = sublattice_polymatroid(&chain, &mu).unwrap();
        assert!(is_discrete_polymatroid(p.points()).holds());
        let mut brute: Vec<IntVector> = (0..5u32.pow(4))
            .map(|c| iv(&[c / 125, c / 25 % 5, c / 5 % 5, c % 5]))
            .filter(|u| {
                (0..n).all(|i| (i..n).map(|j| u.get(j) as u64).sum::<u64>() <= a[i..].iter().sum())
            })
            .collect();
        brute.sort();
        assert_eq!(p.points().vectors(), &brute[..]);
        // the bases are the principal Borel set of a
        assert_eq!(
            p.bases().to_vector_set(),
            principal_borel(&iv(&[1, 0, 2, 1])).unwrap()
        );
    }

    #[test]
    fn transversal_examples() {
        let single = |i: usize| GroundSubset::singleton(i);
        let pres = TransversalPresentation::new(3, vec![single(0), single(1), single(2)]).unwrap();
        assert_eq!(transversal(&pres).unwrap().0.vectors(), &[iv(&[1, 1, 1])]);
        let pres =
            TransversalPresentation::new(2, vec![GroundSubset::full(1), GroundSubset::full(2)])
                .unwrap();
        assert_eq!(
            transversal(&pres).unwrap().0.vectors(),
            &[iv(&[1, 1]), iv(&[2, 0])]
        );
        // nested initial segments give the principal Borel set
        let pres = TransversalPresentation::new(
            3,
            vec![
                GroundSubset::full(1),
                GroundSubset::full(3),
                GroundSubset::full(3),
                GroundSubset::full(2),
            ],
        )
        .unwrap();
        let (b, rho) = transversal(&pres).unwrap();
        assert_eq!(b.to_vector_set(), principal_borel(&iv(&[1, 1, 2])).unwrap());
        assert_eq!(rho, rank_function(&b));
        assert!(TransversalPresentation::new(2, vec![GroundSubset::EMPTY]).is_err());
    }

    #[test]
    fn non_transversal_example() {
        let rho = RankFunction::from_fn(4, |a| 3u64.min(2 * a.len() as u64)).unwrap();
        let p = polymatroid_from_rank(&rho).unwrap();
        assert_eq!(is_transversal(&p).unwrap(), None);
    }

    #[test]
    fn transversal_round_trip() {
        let full = RankFunction::from_fn(3, |a| if a.is_empty() { 0 } else { 2 }).unwrap();
        let p = polymatroid_from_rank(&full).unwrap();
        let pres = is_transversal(&p).unwrap().unwrap();
        assert_eq!(
            pres.family(),
            &[GroundSubset::full(3), GroundSubset::full(3)]
        );

        let pres = TransversalPresentation::new(
            4,
            vec![
                GroundSubset::from_elements([0, 2]),
                GroundSubset::from_elements([1, 2, 3]),
                GroundSubset::singleton(3),
            ],
        )
        .unwrap();
        let (b, _) = transversal(&pres).unwrap();
        let p = DiscretePolymatroid::from_generators(4, b.vectors().to_vec()).unwrap();
        let found = is_transversal(&p).unwrap().unwrap();
        assert_eq!(&transversal(&found).unwrap().0, p.bases());
    }

    #[test]
    fn borel_gorenstein_examples() {
        let g = |v: &[u32]| BorelGenerator::new(iv(v)).unwrap();
        assert!(borel_gorenstein(&g(&[0, 1, 1, 1, 2])));
        assert!(borel_gorenstein(&g(&[0, 1, 0, 2, 0, 3])));
        for an in 1..=6u32 {
            for n in 2..=6usize {
                let mut v = vec![0u32; n];
                v[n - 1] = an;
                assert_eq!(
                    borel_gorenstein(&g(&v)),
                    (n as u32).is_multiple_of(an),
                    "{v:?}"
                );
            }
        }
        assert!(BorelGenerator::new(iv(&[1, 0])).is_err());
    }
}
