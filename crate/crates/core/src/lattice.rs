//! Integer lattices in `Z^n`, kept as a basis in row echelon (Hermite-style)
//! form.

use crate::error::{Error, Result};
use crate::vector::IntVector;

/// The subgroup of `Z^dim` generated by a finite set of integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    dim: usize,
    /// Echelon rows; row `r` has its first nonzero entry (positive) at
    /// `pivots[r]`, strictly increasing in `r`.
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        // a = q*b + r with r = a.rem_euclid(b)
        let q = (a - a.rem_euclid(b)) / b;
        (g, y, x - q * y)
    }
}

fn narrow(v: Vec<i128>) -> Result<Vec<i64>> {
    v.into_iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("lattice basis")))
        .collect()
}

fn combine(a: i128, x: &[i64], b: i128, y: &[i64]) -> Result<Vec<i64>> {
    let out: Option<Vec<i128>> = x
        .iter()
        .zip(y)
        .map(|(&p, &q)| (a.checked_mul(p as i128)?).checked_add(b.checked_mul(q as i128)?))
        .collect();
    narrow(out.ok_or(Error::Overflow("lattice basis"))?)
}

impl IntegerLattice {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn generated_by<'a>(
        dim: usize,
        vectors: impl IntoIterator<Item = &'a [i64]>,
    ) -> Result<Self> {
        let mut lat = Self::zero(dim);
        for v in vectors {
            lat.insert(v)?;
        }
        Ok(lat)
    }

    /// The lattice spanned by `g - g_0` over a nonempty point set.
    pub fn of_differences(points: &[IntVector]) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("point set"))?;
        let dim = first.len();
        let diffs: Vec<Vec<i64>> = points[1..]
            .iter()
            .map(|p| difference(p, first))
            .collect::<Result<_>>()?;
        Self::generated_by(dim, diffs.iter().map(Vec::as_slice))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn insert(&mut self, v: &[i64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut v = v.to_vec();
        let mut r = 0;
        loop {
            let Some(c) = v.iter().position(|&x| x != 0) else {
                return Ok(());
            };
            while r < self.rows.len() && self.pivots[r] < c {
                r += 1;
            }
            if r == self.rows.len() || self.pivots[r] > c {
                if v[c] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.rows.insert(r, v);
                self.pivots.insert(r, c);
                self.reduce_above(r)?;
                return Ok(());
            }
            let p = self.rows[r][c] as i128;
            let q = v[c] as i128;
            let (g, x, y) = egcd(p, q);
            let new_row = combine(x, &self.rows[r], y, &v)?;
            let rest = combine(p / g, &v, -(q / g), &self.rows[r])?;
            self.rows[r] = new_row;
            self.reduce_above(r)?;
            v = rest;
        }
    }

    /// Reduce entries above pivot `r` into `[0, pivot)`.
    fn reduce_above(&mut self, r: usize) -> Result<()> {
        let c = self.pivots[r];
        let p = self.rows[r][c];
        for s in 0..r {
            let q = self.rows[s][c].div_euclid(p);
            if q != 0 {
                let row = self.rows[r].clone();
                self.rows[s] = combine(1, &self.rows[s], -(q as i128), &row)?;
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[..c].iter().any(|&x| x != 0) {
                return false;
            }
            let p = row[c] as i128;
            if v[c] % p != 0 {
                return false;
            }
            let q = v[c] / p;
            for (x, &y) in v.iter_mut().zip(row) {
                *x -= q * y as i128;
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

pub(crate) fn difference(a: &IntVector, b: &IntVector) -> Result<Vec<i64>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: b.len(),
            found: a.len(),
        });
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(&x, &y)| x as i64 - y as i64)
        .collect())
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_dimension(points: &[IntVector]) -> Result<usize> {
    Ok(IntegerLattice::of_differences(points)?.rank())
}
