//! Exact feasibility test for `p ∈ t · conv(G)` by a phase-one simplex over
//! the rationals, with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Whether `p` is a convex combination of the generators, scaled by `t`:
/// `p = Σ λ_g g` with `λ ≥ 0` and `Σ λ_g = t`.
pub fn in_scaled_hull(gens: &[Vec<i64>], p: &[i64], t: i64) -> bool {
    if t < 0 || gens.is_empty() {
        return false;
    }
    let m = gens.len();
    let rows = p.len() + 1;
    let cols = m + rows;
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));

    // Tableau rows: [A | I | b], with every b made nonnegative.
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let (coeff, rhs): (Vec<i64>, i64) = if r < p.len() {
            (gens.iter().map(|g| g[r]).collect(), p[r])
        } else {
            (vec![1; m], t)
        };
        let sign = if rhs < 0 { -1 } else { 1 };
        let mut row: Vec<BigRational> = coeff.into_iter().map(|c| q(sign * c)).collect();
        row.extend((0..rows).map(|k| if k == r { q(1) } else { q(0) }));
        row.push(q(sign * rhs));
        tab.push(row);
    }
    let mut basis: Vec<usize> = (m..cols).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<BigRational> = (0..=cols)
        .map(|j| {
            if (m..cols).contains(&j) {
                BigRational::zero()
            } else {
                -tab.iter().map(|row| row[j].clone()).sum::<BigRational>()
            }
        })
        .collect();

    while let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((s, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*s]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // The phase-one objective is bounded below by zero.
        let Some((r, _)) = leave else { break };
        let piv = tab[r][enter].clone();
        for x in tab[r].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = tab[r].clone();
        for (s, row) in tab.iter_mut().enumerate() {
            if s != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        let f = cost[enter].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
        basis[r] = enter;
    }
    // The objective value is `-cost[cols]`.
    cost[cols].is_zero()
}
