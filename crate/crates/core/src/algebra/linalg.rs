//! Exact linear algebra over `Q(i)`.
//!
//! [`bareiss_rank`] clears denominators and runs fraction-free elimination
//! over the Gaussian integers. [`EchelonBasis`] is an incremental reduced
//! echelon form over the field, used when vectors arrive one at a time and
//! the caller needs to know which ones extend the span.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::poly::{ComplexRational, GaussInt};

/// Exact rank of the span of `rows` (all of equal length).
pub fn bareiss_rank(rows: &[Vec<ComplexRational>]) -> usize {
    let mut mat: Vec<Vec<GaussInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| to_gaussian_row(r))
        .collect();
    if mat.is_empty() {
        return 0;
    }
    let ncols = mat[0].len();
    let nrows = mat.len();
    let mut prev = GaussInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        let (top, rest) = mat.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            let factor_zero = factor.is_zero();
            for c in col + 1..ncols {
                let a = &row[c];
                let b = &pivot_row[c];
                if factor_zero || b.is_zero() {
                    if a.is_zero() {
                        continue;
                    }
                    row[c] = pivot.mul(a).exact_div(&prev).expect("Bareiss step divides exactly");
                } else {
                    row[c] = pivot
                        .mul(a)
                        .sub(&factor.mul(b))
                        .exact_div(&prev)
                        .expect("Bareiss step divides exactly");
                }
            }
            row[col] = GaussInt::zero();
        }
        prev = mat[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn to_gaussian_row(row: &[ComplexRational]) -> Vec<GaussInt> {
    let scale = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    row.iter()
        .map(|c| GaussInt::from_scaled(c, &scale).expect("lcm clears denominators"))
        .collect()
}

/// Reduced row echelon basis that grows one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    /// Rows normalized to a leading 1 at `pivots[k]`, zero in all other
    /// pivot columns.
    rows: Vec<Vec<ComplexRational>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the current rows (result is zero iff `v` lies
    /// in the span).
    pub fn reduce(&self, v: &[ComplexRational]) -> Vec<ComplexRational> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wc, rc) in w.iter_mut().zip(row) {
                if !rc.is_zero() {
                    *wc -= &(&f * rc);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[ComplexRational]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Adds `v` if it is independent of the current span; returns whether
    /// the rank grew.
    pub fn insert(&mut self, v: &[ComplexRational]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().unwrap();
        for c in w.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (rc, wc) in row.iter_mut().zip(&w) {
                if !wc.is_zero() {
                    *rc -= &(&f * wc);
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Solves `Σ_j x_j · columns[j] = target` exactly. Pivots are taken on the
/// leftmost independent columns and free unknowns are set to zero, so the
/// answer is deterministic. `None` when the system is inconsistent.
pub fn solve_columns(columns: &[Vec<ComplexRational>], target: &[ComplexRational]) -> Option<Vec<ComplexRational>> {
    let m = target.len();
    let n = columns.len();
    // augmented row-major matrix [A | b]
    let mut a: Vec<Vec<ComplexRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<ComplexRational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![ComplexRational::zero(); n];
    for (k, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[k][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<ComplexRational> {
        xs.iter().map(|&x| ComplexRational::from_integer(x)).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(bareiss_rank(&[v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])]), 2);
        assert_eq!(bareiss_rank(&[v(&[0, 0]), v(&[0, 0])]), 0);
        assert_eq!(bareiss_rank(&[]), 0);
        let half = vec![ComplexRational::from_ratio(1, 2), ComplexRational::i()];
        let other = vec![
            ComplexRational::one(),
            ComplexRational::i() * ComplexRational::from_integer(2),
        ];
        assert_eq!(bareiss_rank(&[half, other]), 1);
    }

    #[test]
    fn echelon_matches_bareiss() {
        let rows = vec![v(&[1, 0, 2, 1]), v(&[0, 3, 1, 1]), v(&[1, 3, 3, 2]), v(&[2, -1, 0, 5])];
        let mut e = EchelonBasis::new(4);
        let grew: Vec<bool> = rows.iter().map(|r| e.insert(r)).collect();
        assert_eq!(grew, vec![true, true, false, true]);
        assert_eq!(e.rank(), bareiss_rank(&rows));
        assert!(e.contains(&v(&[2, 6, 6, 4])));
    }

    #[test]
    fn solve_picks_leftmost_pivots() {
        // columns e1, e1, e2: free second unknown set to zero
        let cols = vec![v(&[1, 0]), v(&[1, 0]), v(&[0, 1])];
        assert_eq!(solve_columns(&cols, &v(&[3, 4])), Some(v(&[3, 0, 4])));
        assert_eq!(solve_columns(&[v(&[1, 1])], &v(&[1, 0])), None);
    }
}
