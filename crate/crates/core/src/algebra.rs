//! Hilbert functions and h*-vectors of base rings `K[B]` and Ehrhart rings
//! `K[P]`, normality spot checks, the facet description of a polymatroid
//! polytope, and the Gorenstein and genericity criteria built on it.
//!
//! Hilbert functions are computed by enumerating distinct sums of generators.
//! Both rings are normal, so these counts are Ehrhart counts and the ring is
//! Cohen-Macaulay; Gorensteinness is then decided by Stanley's criterion
//! (palindromic h*-vector).

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::hull::in_scaled_hull;
use crate::lattice::IntegerLattice;
use crate::polymatroid::{require_valid, BaseSet, DiscretePolymatroid, RankFunction};
use crate::vector::{GroundSubset, IntVector, Packer, Verdict};
use crate::{check_cap, lattice};

/// Degree-one generators of an affine semigroup ring.
///
/// Each generator `g` stands for the monomial of `(g, 1)`, so the ring is
/// graded by the number of generators in a product.
#[derive(Clone, Debug)]
pub struct GradedGenerators {
    n: usize,
    gens: Vec<IntVector>,
    lattice: IntegerLattice,
}

impl GradedGenerators {
    pub fn new(n: usize, mut gens: Vec<IntVector>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Empty("generator set"));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
        gens.sort();
        gens.dedup();
        let lattice = IntegerLattice::of_differences(&gens)?;
        Ok(Self { n, gens, lattice })
    }

    /// Generators of `K[B]`.
    pub fn base_ring(b: &BaseSet) -> Result<Self> {
        Self::new(b.n(), b.vectors().to_vec())
    }

    /// Generators `(u, 1)` of `K[P]`.
    pub fn ehrhart_ring(p: &DiscretePolymatroid) -> Result<Self> {
        let gens = p.points().iter().map(|u| u.extended(1)).collect();
        Self::new(p.n() + 1, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[IntVector] {
        &self.gens
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    /// Affine dimension of the generators plus one.
    pub fn krull_dim(&self) -> usize {
        self.lattice.rank() + 1
    }

    fn max_coords(&self) -> Vec<u64> {
        (0..self.n)
            .map(|k| self.gens.iter().map(|g| g.get(k) as u64).max().unwrap_or(0))
            .collect()
    }

    fn min_coords(&self) -> Vec<u64> {
        (0..self.n)
            .map(|k| self.gens.iter().map(|g| g.get(k) as u64).min().unwrap_or(0))
            .collect()
    }

    fn packer(&self, t_max: u64) -> Result<Packer> {
        let bounds = self
            .max_coords()
            .into_iter()
            .map(|m| {
                m.checked_mul(t_max)
                    .and_then(|x| x.checked_add(1))
                    .ok_or(Error::Overflow("sumset bounds"))
            })
            .collect::<Result<Vec<_>>>()?;
        Packer::new(&bounds)
    }
}

/// Levels `S_0, S_1, ...` of the sumset, as packed keys.
struct Sumsets {
    gen_keys: Vec<u128>,
    current: HashSet<u128>,
}

impl Sumsets {
    fn new(gens: &GradedGenerators, packer: &Packer) -> Self {
        Self {
            gen_keys: gens.gens.iter().map(|g| packer.pack(g.entries())).collect(),
            current: HashSet::from([0]),
        }
    }

    fn advance(&mut self) -> Result<()> {
        let mut next = HashSet::with_capacity(self.current.len() * 2);
        for &s in &self.current {
            for &k in &self.gen_keys {
                next.insert(s + k);
            }
            check_cap("degree-t monomials", next.len())?;
        }
        self.current = next;
        Ok(())
    }
}

/// `H(0), ..., H(t_max)`.
pub fn hilbert_values(g: &GradedGenerators, t_max: u64) -> Result<Vec<u64>> {
    let packer = g.packer(t_max)?;
    let mut sums = Sumsets::new(g, &packer);
    let mut out = vec![1];
    for _ in 0..t_max {
        sums.advance()?;
        out.push(sums.current.len() as u64);
    }
    Ok(out)
}

/// Number of distinct sums of `t` generators.
pub fn hilbert_function(g: &GradedGenerators, t: u64) -> Result<u64> {
    Ok(*hilbert_values(g, t)?.last().expect("nonempty"))
}

/// Hilbert function values together with the h*-vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub values: Vec<u64>,
    pub krull_dim: usize,
    pub h_star: Vec<i64>,
}

impl HilbertData {
    /// `Σ h*_i`, the normalized volume of the generators' polytope.
    pub fn normalized_volume(&self) -> i64 {
        self.h_star.iter().sum()
    }

    /// `H(t)` recovered from the series `h*(λ) / (1 - λ)^D`.
    pub fn predicted(&self, t: u64) -> u128 {
        let d = self.krull_dim as u64;
        self.h_star
            .iter()
            .enumerate()
            .filter(|&(i, _)| i as u64 <= t)
            .map(|(i, &h)| h as u128 * binomial_u128(t - i as u64 + d - 1, d - 1))
            .sum()
    }

    /// The h*-vector with trailing zeros removed.
    pub fn trimmed(&self) -> &[i64] {
        let end = self
            .h_star
            .iter()
            .rposition(|&h| h != 0)
            .map_or(0, |k| k + 1);
        &self.h_star[..end]
    }
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn binomial_i128(n: usize, k: usize) -> i128 {
    binomial_u128(n as u64, k as u64) as i128
}

/// h*-vector from `H(0..=D)`, where `D` is the Krull dimension.
pub fn h_star(g: &GradedGenerators) -> Result<HilbertData> {
    let d = g.krull_dim();
    let values = hilbert_values(g, d as u64)?;
    let coeff = |i: usize| -> i128 {
        (0..=i)
            .map(|j| {
                let term = binomial_i128(d, j) * values[i - j] as i128;
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    };
    if coeff(d) != 0 {
        return Err(Error::Inconsistent(format!(
            "h*_{d} = {} does not vanish (H = {values:?})",
            coeff(d)
        )));
    }
    let h_star = (0..d)
        .map(|i| {
            let c = coeff(i);
            if c < 0 {
                Err(Error::Inconsistent(format!("h*_{i} = {c} is negative")))
            } else {
                i64::try_from(c).map_err(|_| Error::Overflow("h*-vector"))
            }
        })
        .collect::<Result<_>>()?;
    Ok(HilbertData {
        values,
        krull_dim: d,
        h_star,
    })
}

/// Whether the trimmed h*-vector is palindromic.
pub fn is_gorenstein_hstar(g: &GradedGenerators) -> Result<bool> {
    let data = h_star(g)?;
    let h = data.trimmed();
    Ok(h.iter().eq(h.iter().rev()))
}

/// A lattice point of `t · conv(G)` that is not a sum of `t` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityGap {
    pub degree: u64,
    pub point: IntVector,
}

impl fmt::Display for NormalityGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} lies in {} times the hull but is not a sum of {} generators",
            self.point, self.degree, self.degree
        )
    }
}

const PREFILTER_MAX_N: usize = 16;

/// For `t = 1..=t_max`, compares the degree-`t` sums with the points of
/// `t · conv(G)` in the affine lattice `t · g_0 + L`.
pub fn normality_check(g: &GradedGenerators, t_max: u64) -> Result<Verdict<NormalityGap>> {
    if t_max == 0 {
        return Err(Error::OutOfRange("t_max = 0".into()));
    }
    let n = g.n;
    let packer = g.packer(t_max)?;
    let mut sums = Sumsets::new(g, &packer);
    let gens: Vec<Vec<i64>> = g
        .gens
        .iter()
        .map(|u| u.entries().iter().map(|&x| x as i64).collect())
        .collect();
    let (lo, hi) = g
        .min_coords()
        .into_iter()
        .zip(g.max_coords())
        .unzip::<_, _, Vec<u64>, Vec<u64>>();

    // Subset-sum bounds over the generators.
    let bounds: Option<(Vec<u64>, Vec<u64>)> = (n <= PREFILTER_MAX_N).then(|| {
        let sums: Vec<Vec<u64>> = g.gens.iter().map(crate::polymatroid::subset_sums).collect();
        let lo = (0..1usize << n)
            .map(|m| sums.iter().map(|s| s[m]).min().unwrap())
            .collect();
        let hi = (0..1usize << n)
            .map(|m| sums.iter().map(|s| s[m]).max().unwrap())
            .collect();
        (lo, hi)
    });

    for t in 1..=t_max {
        sums.advance()?;
        let box_size = lo.iter().zip(&hi).try_fold(1usize, |acc, (&a, &b)| {
            acc.checked_mul(((b - a) * t + 1) as usize)
        });
        check_cap("normality box", box_size.unwrap_or(usize::MAX))?;

        let origin: Vec<u64> = g.gens[0].entries().iter().map(|&x| x as u64 * t).collect();
        let mut point = vec![0u32; n];
        let mut gap = None;
        let visit = |p: &[u32]| -> bool {
            if sums.current.contains(&packer.pack(p)) {
                return false;
            }
            let rel: Vec<i64> = p
                .iter()
                .zip(&origin)
                .map(|(&x, &o)| x as i64 - o as i64)
                .collect();
            if !g.lattice.contains(&rel) {
                return false;
            }
            if let Some((blo, bhi)) = &bounds {
                let ps =
                    crate::polymatroid::subset_sums(&IntVector::new(p.to_vec()).expect("n >= 1"));
                if ps
                    .iter()
                    .zip(blo.iter().zip(bhi))
                    .any(|(&s, (&a, &b))| s < a * t || s > b * t)
                {
                    return false;
                }
            }
            let pi: Vec<i64> = p.iter().map(|&x| x as i64).collect();
            in_scaled_hull(&gens, &pi, t as i64)
        };
        for_each_in_box(&lo, &hi, t, 0, &mut point, &mut |p| {
            if gap.is_none() && visit(p) {
                gap = Some(p.to_vec());
            }
            gap.is_none()
        });
        if let Some(p) = gap {
            return Ok(Verdict::Violated(NormalityGap {
                degree: t,
                point: IntVector::new(p)?,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Visits the box `[t·lo, t·hi]` in lexicographic order; stops when `f`
/// returns false.
fn for_each_in_box(
    lo: &[u64],
    hi: &[u64],
    t: u64,
    k: usize,
    point: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]) -> bool,
) -> bool {
    if k == point.len() {
        return f(point);
    }
    for x in lo[k] * t..=hi[k] * t {
        point[k] = x as u32;
        if !for_each_in_box(lo, hi, t, k + 1, point, f) {
            return false;
        }
    }
    true
}

/// Non-coordinate facets `u(A) <= ρ(A)` of the polytope of `ρ`, together with
/// the coordinate facets `u(i) >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDescription {
    pub coordinate: Vec<usize>,
    pub rank: Vec<(GroundSubset, u64)>,
}

/// Every proper superset of `A` has strictly larger rank.
pub fn is_closed(rho: &RankFunction, a: GroundSubset) -> bool {
    (0..rho.n())
        .filter(|&i| !a.contains(i))
        .all(|i| rho.value(a.with(i)) > rho.value(a))
}

/// `A` admits no split `A = A_1 ⊔ A_2` into nonempty parts with
/// `ρ(A) = ρ(A_1) + ρ(A_2)`.
pub fn is_inseparable(rho: &RankFunction, a: GroundSubset) -> bool {
    let m = a.mask();
    let mut s = (m - 1) & m;
    while s != 0 {
        let part = GroundSubset(s);
        let rest = GroundSubset(m & !s);
        if rho.value(part) + rho.value(rest) == rho.value(a) {
            return false;
        }
        s = (s - 1) & m;
    }
    true
}

fn require_units(rho: &RankFunction) -> Result<()> {
    require_valid(rho)?;
    match (0..rho.n()).find(|&i| rho.value(GroundSubset::singleton(i)) == 0) {
        Some(i) => Err(Error::Precondition(format!(
            "rank of {{{}}} is 0, so the unit vector is not in P",
            i + 1
        ))),
        None => Ok(()),
    }
}

/// The closed and inseparable nonempty subsets, in increasing bitmask order.
pub fn closed_inseparable_subsets(rho: &RankFunction) -> Result<FacetDescription> {
    require_units(rho)?;
    let rank = GroundSubset::all(rho.n())
        .skip(1)
        .filter(|&a| is_closed(rho, a) && is_inseparable(rho, a))
        .map(|a| (a, rho.value(a)))
        .collect();
    Ok(FacetDescription {
        coordinate: (0..rho.n()).collect(),
        rank,
    })
}

/// The `δ` with `δ · ρ(A) = |A| + 1` on every closed inseparable `A`, if one
/// exists; `K[P]` is Gorenstein exactly when it does.
pub fn ehrhart_gorenstein(rho: &RankFunction) -> Result<Option<u64>> {
    let facets = closed_inseparable_subsets(rho)?;
    let mut delta = None;
    for &(a, r) in &facets.rank {
        let num = a.len() as u64 + 1;
        if !num.is_multiple_of(r) {
            return Ok(None);
        }
        let q = num / r;
        match delta {
            None => delta = Some(q),
            Some(d) if d != q => return Ok(None),
            _ => {}
        }
    }
    Ok(delta)
}

/// Which genericity condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenericityFailure {
    /// A base with a zero coordinate.
    ZeroCoordinate { base: IntVector, i: usize },
    /// The bases span less than a hyperplane.
    BasesNotFacet { dim: usize },
    /// `{u in B : u(A) = ρ(A)}` is not a facet of `conv(B)`.
    FaceTooSmall { subset: GroundSubset, dim: usize },
}

impl fmt::Display for GenericityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroCoordinate { base, i } => {
                write!(f, "(G1) base {base} has coordinate {} equal to 0", i + 1)
            }
            Self::BasesNotFacet { dim } => write!(f, "(G2) the bases span dimension {dim}"),
            Self::FaceTooSmall { subset, dim } => {
                write!(f, "(G3) the face cut out by {subset:?} has dimension {dim}")
            }
        }
    }
}

/// Checks (G1) positive bases, (G2) `dim conv(B) = n - 1`, and (G3) every
/// `A` with `∅ ≠ A ⊊ [n]` cuts a face of dimension `n - 2` from `conv(B)`.
pub fn is_generic(p: &DiscretePolymatroid) -> Result<Verdict<GenericityFailure>> {
    let n = p.n();
    if n < 2 {
        return Err(Error::Precondition("genericity needs n >= 2".into()));
    }
    if !p.contains_units() {
        return Err(Error::Precondition("some unit vector is not in P".into()));
    }
    let b = p.bases();
    for u in b.iter() {
        if let Some(i) = (0..n).find(|&i| u.get(i) == 0) {
            return Ok(Verdict::Violated(GenericityFailure::ZeroCoordinate {
                base: u.clone(),
                i,
            }));
        }
    }
    let dim = lattice::affine_dimension(b.vectors())?;
    if dim != n - 1 {
        return Ok(Verdict::Violated(GenericityFailure::BasesNotFacet { dim }));
    }
    let rho = p.rank_function();
    let full = GroundSubset::full(n);
    for a in GroundSubset::all(n).skip(1).filter(|&a| a != full) {
        let r = rho.value(a);
        let face: Vec<IntVector> = b
            .iter()
            .filter(|u| u.eval_on_subset(a) == r)
            .cloned()
            .collect();
        let dim = lattice::affine_dimension(&face)?;
        if dim != n - 2 {
            return Ok(Verdict::Violated(GenericityFailure::FaceTooSmall {
                subset: a,
                dim,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Parameters `(α, d)` of the generic Gorenstein family on `[n]`,
/// `n = len(α) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericGorensteinParams {
    alpha: Vec<u64>,
    d: u64,
}

impl GenericGorensteinParams {
    pub fn new(alpha: Vec<u64>, d: u64) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "need n >= 3, got alpha of length {}",
                alpha.len()
            )));
        }
        if alpha.len() + 1 > crate::polymatroid::MAX_RANK_GROUND_SET {
            return Err(Error::InvalidParams("alpha too long".into()));
        }
        if let Some(k) = alpha.iter().position(|&x| x <= 1) {
            return Err(Error::InvalidParams(format!(
                "alpha_{} must exceed 1",
                k + 1
            )));
        }
        let total: u64 = alpha.iter().sum();
        if d <= total + 1 {
            return Err(Error::InvalidParams(format!(
                "d = {d} must exceed |alpha| + 1 = {}",
                total + 1
            )));
        }
        Ok(Self { alpha, d })
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.alpha.len() + 1
    }
}

/// `ρ(A) = α(A) + 1` for `∅ ≠ A ⊆ [n-1]`, `ρ(A) = d - α([n] \ A) + 1` for
/// `n ∈ A ≠ [n]`, and `ρ([n]) = d`.
pub fn generic_gorenstein_rank(params: &GenericGorensteinParams) -> RankFunction {
    let n = params.n();
    let last = n - 1;
    let full = GroundSubset::full(n);
    let alpha = |a: GroundSubset| -> u64 { a.elements().map(|i| params.alpha[i]).sum() };
    RankFunction::from_fn(n, |a| {
        if a.is_empty() {
            0
        } else if a == full {
            params.d
        } else if a.contains(last) {
            params.d - alpha(GroundSubset(full.mask() & !a.mask())) + 1
        } else {
            alpha(a) + 1
        }
    })
    .expect("n within table limits")
}

/// Gorenstein test for `K[B]` of a generic polymatroid from its rank function
/// alone. For `n = 2` this is `ρ({1}) + ρ({2}) ∈ {d + 1, d + 2}`; for `n >= 3`,
/// `ρ` must be [`generic_gorenstein_rank`] of some valid parameters.
pub fn generic_base_ring_gorenstein(p: &DiscretePolymatroid) -> Result<bool> {
    if let Verdict::Violated(w) = is_generic(p)? {
        return Err(Error::Precondition(format!("not generic: {w}")));
    }
    let rho = p.rank_function();
    let n = p.n();
    let d = rho.total();
    let single = |i: usize| rho.value(GroundSubset::singleton(i));
    if n == 2 {
        let s = single(0) + single(1);
        return Ok(s == d + 1 || s == d + 2);
    }
    let alpha: Vec<u64> = (0..n - 1).map(|i| single(i) - 1).collect();
    Ok(match GenericGorensteinParams::new(alpha, d) {
        Ok(params) => generic_gorenstein_rank(&params) == rho,
        Err(_) => false,
    })
}

/// Gorenstein test for `K[B]` by the palindromic h*-vector.
pub fn base_ring_gorenstein(b: &BaseSet) -> Result<bool> {
    is_gorenstein_hstar(&GradedGenerators::base_ring(b)?)
}

/// Gorenstein test for `K[P]` by the palindromic h*-vector.
pub fn ehrhart_ring_gorenstein(p: &DiscretePolymatroid) -> Result<bool> {
    is_gorenstein_hstar(&GradedGenerators::ehrhart_ring(p)?)
}
