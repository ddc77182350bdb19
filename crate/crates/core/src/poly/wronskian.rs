//! Exact Wronskian determinants.
//!
//! Polynomial families go through fraction-free (Bareiss) elimination in
//! `Q(i)[z]`; general exp-polynomial families use a division-free Laplace
//! expansion memoized over column subsets.

use std::collections::HashMap;

use super::expr::AnalyticExpr;
use super::univariate::UniPoly;

/// `det [g_j^{(k)}]_{k,j}` for `k, j < m`.
pub fn wronskian(gs: &[AnalyticExpr]) -> AnalyticExpr {
    assert!(!gs.is_empty(), "wronskian of an empty family");
    let m = gs.len();
    let mut rows: Vec<Vec<AnalyticExpr>> = Vec::with_capacity(m);
    rows.push(gs.to_vec());
    for k in 1..m {
        let next = rows[k - 1].iter().map(|g| g.derivative()).collect();
        rows.push(next);
    }
    if gs.iter().all(|g| g.is_polynomial()) {
        let mat: Vec<Vec<UniPoly>> = rows
            .iter()
            .map(|r| r.iter().map(|g| g.as_polynomial().unwrap()).collect())
            .collect();
        AnalyticExpr::polynomial(bareiss_det(mat))
    } else {
        laplace_det(&rows)
    }
}

/// Determinant over `Q(i)[z]` by Bareiss elimination with row pivoting.
pub fn bareiss_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = a.len();
    let mut sign_negative = false;
    let mut prev = UniPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_negative = !sign_negative;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_negative {
        det.neg()
    } else {
        det
    }
}

/// Laplace expansion along successive rows; `memo` is keyed by the set of
/// columns still available.
fn laplace_det(rows: &[Vec<AnalyticExpr>]) -> AnalyticExpr {
    let m = rows.len();
    let mut memo: HashMap<u64, AnalyticExpr> = HashMap::new();
    expand(rows, 0, (1u64 << m) - 1, &mut memo)
}

fn expand(rows: &[Vec<AnalyticExpr>], row: usize, cols: u64, memo: &mut HashMap<u64, AnalyticExpr>) -> AnalyticExpr {
    if row == rows.len() {
        return AnalyticExpr::from_integer(1);
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = AnalyticExpr::zero();
    let mut parity = false;
    for j in 0..rows.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &rows[row][j];
        if !entry.is_zero() {
            let minor = expand(rows, row + 1, cols & !(1 << j), memo);
            let t = entry.mul(&minor);
            acc = if parity { acc.sub(&t) } else { acc.add(&t) };
        }
        parity = !parity;
    }
    memo.insert(cols, acc.clone());
    acc
}
