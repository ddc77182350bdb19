use rayon::prelude::*;

use super::linalg::{bareiss_rank, EchelonBasis};
use super::AlgebraError;
use crate::poly::{monomial_basis, ComplexRational, HomogeneousPoly, MonomialIndex};

/// A set of vectors in `V_α` written in monomial coordinates.
#[derive(Clone, Debug)]
pub struct GradedPieceBasis {
    pub degree: u32,
    pub coordinates: MonomialIndex,
    pub vectors: Vec<Vec<ComplexRational>>,
}

impl GradedPieceBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        Self {
            degree,
            coordinates: MonomialIndex::new(nvars, degree),
            vectors: Vec::new(),
        }
    }

    pub fn push(&mut self, p: &HomogeneousPoly) {
        self.vectors.push(p.coefficient_vector(&self.coordinates));
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(&self.vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.coordinates.len()
    }
}

/// `C(a, b)` as a machine integer (small arguments only).
pub fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u64, |acc, k| acc * (a - k) / (k + 1))
}

/// `dim V_α = C(α+n, n)` for `nvars = n + 1`.
pub fn graded_dim(nvars: usize, alpha: u32) -> u64 {
    binomial(alpha as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

fn check_arity(gammas: &[HomogeneousPoly]) -> Result<usize, AlgebraError> {
    let nvars = gammas.first().ok_or(AlgebraError::EmptySystem)?.nvars();
    if gammas.iter().any(|g| g.nvars() != nvars) {
        return Err(AlgebraError::MixedArity);
    }
    if gammas.iter().any(|g| g.is_zero()) {
        return Err(AlgebraError::ZeroForm);
    }
    Ok(nvars)
}

/// Spanning set `{γ_j · m : deg m = α − deg γ_j}` of `(γ) ∩ V_α`.
pub fn ideal_piece(gammas: &[HomogeneousPoly], alpha: u32) -> Result<GradedPieceBasis, AlgebraError> {
    let nvars = check_arity(gammas)?;
    let mut piece = GradedPieceBasis::new(nvars, alpha);
    for g in gammas {
        if g.degree() > alpha {
            continue;
        }
        for m in monomial_basis(nvars, alpha - g.degree()) {
            piece.push(&g.mul_monomial(&m));
        }
    }
    Ok(piece)
}

/// `dim (γ_1, …, γ_k) ∩ V_α`, by exact fraction-free rank.
pub fn ideal_graded_dim(gammas: &[HomogeneousPoly], alpha: u32) -> Result<u64, AlgebraError> {
    Ok(ideal_piece(gammas, alpha)?.rank() as u64)
}

/// `dim V_α / ((γ) ∩ V_α)`.
pub fn hilbert_quotient(gammas: &[HomogeneousPoly], alpha: u32) -> Result<u64, AlgebraError> {
    let nvars = check_arity(gammas)?;
    Ok(graded_dim(nvars, alpha) - ideal_graded_dim(gammas, alpha)?)
}

/// Same quantity as [`hilbert_quotient`] computed through the incremental
/// field echelon form; kept as an independent route for cross-checks.
pub fn hilbert_quotient_echelon(gammas: &[HomogeneousPoly], alpha: u32) -> Result<u64, AlgebraError> {
    let piece = ideal_piece(gammas, alpha)?;
    let mut e = EchelonBasis::new(piece.ambient_dim());
    for v in &piece.vectors {
        e.insert(v);
    }
    Ok(piece.ambient_dim() as u64 - e.rank() as u64)
}

/// `n` forms in `n + 1` variables cut out a finite set iff the Hilbert
/// quotient has already stabilized at `∏ deg γ_i` in the two consecutive
/// degrees `Σ deg γ_i` and `Σ deg γ_i + 1`.
pub fn is_zero_dimensional(gammas: &[HomogeneousPoly]) -> Result<bool, AlgebraError> {
    let nvars = check_arity(gammas)?;
    if gammas.len() + 1 != nvars {
        return Err(AlgebraError::WrongCount {
            expected: nvars - 1,
            found: gammas.len(),
        });
    }
    let product: u64 = gammas.iter().map(|g| g.degree() as u64).product();
    let sum: u32 = gammas.iter().map(|g| g.degree()).sum();
    Ok(hilbert_quotient(gammas, sum)? == product && hilbert_quotient(gammas, sum + 1)? == product)
}

/// Outcome of a general-position test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPosition {
    pub holds: bool,
    /// First (lexicographic) `(n+1)`-subset with a common zero.
    pub failing_subset: Option<Vec<usize>>,
    /// A common zero of the failing subset, when it consists of linear forms.
    pub witness_point: Option<Vec<ComplexRational>>,
}

/// Macaulay degree `Σ (d_i − 1) + 1`.
pub fn macaulay_degree(forms: &[&HomogeneousPoly]) -> u32 {
    forms.iter().map(|q| q.degree().saturating_sub(1)).sum::<u32>() + 1
}

/// Every `n + 1` of the forms have no common zero in `P^n`, tested as a
/// vanishing Hilbert quotient at the Macaulay degree.
pub fn is_general_position(qs: &[HomogeneousPoly], n: usize) -> Result<GeneralPosition, AlgebraError> {
    if qs.len() <= n {
        return Err(AlgebraError::TooFewForms { q: qs.len(), n });
    }
    let nvars = check_arity(qs)?;
    if nvars != n + 1 {
        return Err(AlgebraError::WrongArity {
            expected: n + 1,
            found: nvars,
        });
    }
    let subsets = k_subsets(qs.len(), n + 1);
    let empty_locus: Vec<bool> = subsets
        .par_iter()
        .map(|s| {
            let forms: Vec<HomogeneousPoly> = s.iter().map(|&j| qs[j].clone()).collect();
            let refs: Vec<&HomogeneousPoly> = forms.iter().collect();
            hilbert_quotient(&forms, macaulay_degree(&refs)).map(|h| h == 0)
        })
        .collect::<Result<_, _>>()?;
    match empty_locus.iter().position(|ok| !ok) {
        None => Ok(GeneralPosition {
            holds: true,
            failing_subset: None,
            witness_point: None,
        }),
        Some(k) => {
            let subset = subsets[k].clone();
            let forms: Vec<&HomogeneousPoly> = subset.iter().map(|&j| &qs[j]).collect();
            Ok(GeneralPosition {
                holds: false,
                witness_point: linear_common_zero(&forms),
                failing_subset: Some(subset),
            })
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A nonzero common zero of linear forms (kernel vector of the coefficient
/// matrix), or `None` when some form is not linear or the kernel is trivial.
pub fn linear_common_zero(forms: &[&HomogeneousPoly]) -> Option<Vec<ComplexRational>> {
    if forms.iter().any(|f| f.degree() != 1) {
        return None;
    }
    let nvars = forms[0].nvars();
    let idx = MonomialIndex::new(nvars, 1);
    // Try each coordinate as the one normalized to 1 in the kernel vector.
    let rows: Vec<Vec<ComplexRational>> = forms.iter().map(|f| f.coefficient_vector(&idx)).collect();
    for free in 0..nvars {
        let mut target = vec![ComplexRational::zero(); rows.len()];
        let cols: Vec<Vec<ComplexRational>> = (0..nvars)
            .filter(|&c| c != free)
            .map(|c| rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        for (t, r) in target.iter_mut().zip(&rows) {
            *t = -&r[free];
        }
        if let Some(sol) = super::linalg::solve_columns(&cols, &target) {
            let mut point = Vec::with_capacity(nvars);
            let mut it = sol.into_iter();
            for c in 0..nvars {
                point.push(if c == free {
                    ComplexRational::one()
                } else {
                    it.next().unwrap()
                });
            }
            return Some(point);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_form;

    fn forms(src: &[&str], nvars: usize) -> Vec<HomogeneousPoly> {
        src.iter().map(|s| parse_form(s, nvars).unwrap()).collect()
    }

    #[test]
    fn ideal_dims() {
        let g = forms(&["x1^2", "x2^2"], 3);
        assert_eq!(ideal_graded_dim(&g, 4).unwrap(), 11);
        assert_eq!(hilbert_quotient(&g, 4).unwrap(), 4);
        assert_eq!(hilbert_quotient(&g, 5).unwrap(), 4);
        assert_eq!(ideal_graded_dim(&g, 1).unwrap(), 0);
        let h = forms(&["x1"], 2);
        assert_eq!(ideal_graded_dim(&h, 2).unwrap(), 2);
        assert_eq!(hilbert_quotient(&h, 3).unwrap(), 1);
    }

    #[test]
    fn zero_dimensionality() {
        assert!(is_zero_dimensional(&forms(&["x1", "x2"], 3)).unwrap());
        assert!(is_zero_dimensional(&forms(&["x1^2", "x2^2"], 3)).unwrap());
        assert!(!is_zero_dimensional(&forms(&["x1", "x1^2 + x1*x2"], 3)).unwrap());
        assert!(matches!(
            is_zero_dimensional(&forms(&["x1"], 3)),
            Err(AlgebraError::WrongCount { .. })
        ));
    }

    #[test]
    fn general_position_examples() {
        assert!(is_general_position(&forms(&["x0", "x1", "x2"], 3), 2).unwrap().holds);
        let bad = is_general_position(&forms(&["x0", "x1", "x0 + x1"], 3), 2).unwrap();
        assert!(!bad.holds);
        assert_eq!(bad.failing_subset, Some(vec![0, 1, 2]));
        let w = bad.witness_point.unwrap();
        assert!(w[0].is_zero() && w[1].is_zero() && !w[2].is_zero());
        assert!(
            is_general_position(&forms(&["x0", "x1", "x2", "x0 + x1 + x2"], 3), 2)
                .unwrap()
                .holds
        );
        assert!(matches!(
            is_general_position(&forms(&["x0", "x1"], 3), 2),
            Err(AlgebraError::TooFewForms { .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(graded_dim(3, 4), 15);
        assert_eq!(binomial(3, 5), 0);
    }
}
