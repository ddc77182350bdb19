use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::bounds::delta_lower_bound;
use super::tuples::{enumerate_tuples, MultiIndex};
use super::FiltrationError;
use crate::algebra::{bareiss_rank, graded_dim, is_zero_dimensional, AlgebraError, EchelonBasis, GradedPieceBasis};
use crate::poly::{monomial_basis, ComplexRational, HomogeneousPoly, Monomial, MonomialIndex};

/// One level `W_(i)` of the filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationLevel {
    pub index: MultiIndex,
    /// `dim W_(i)`.
    pub dim: usize,
    /// `Δ_(i) = dim W_(i) − dim W_(i')` for the lex successor `(i')`.
    pub delta: usize,
    /// Positions in [`Filtration::basis`] of the representatives of
    /// `W_(i)/W_(i')`.
    pub basis_range: Range<usize>,
}

/// `ψ = γ_1^{i_1} ⋯ γ_n^{i_n} · η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CZBasisElement {
    pub index: MultiIndex,
    pub eta: Monomial,
    pub psi: HomogeneousPoly,
}

/// The filtration of `V_α` attached to `n` forms of common degree `d`,
/// together with the adapted basis built from the last level down.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub n: usize,
    pub d: u32,
    pub alpha: u32,
    pub gammas: Vec<HomogeneousPoly>,
    pub coordinates: MonomialIndex,
    /// Ascending lexicographic order.
    pub levels: Vec<FiltrationLevel>,
    /// Construction order: the last level's representatives come first.
    pub basis: Vec<CZBasisElement>,
}

fn validate(gammas: &[HomogeneousPoly]) -> Result<(usize, u32), FiltrationError> {
    let first = gammas.first().ok_or(AlgebraError::EmptySystem)?;
    let d = first.degree();
    if gammas.iter().any(|g| g.degree() != d) {
        return Err(FiltrationError::MixedDegree);
    }
    if !is_zero_dimensional(gammas)? {
        return Err(FiltrationError::NotZeroDimensional);
    }
    Ok((gammas.len(), d))
}

struct Powers {
    cache: Vec<Vec<HomogeneousPoly>>,
}

impl Powers {
    fn new(gammas: &[HomogeneousPoly]) -> Self {
        let nvars = gammas[0].nvars();
        let one = HomogeneousPoly::monomial(Monomial::one(nvars), ComplexRational::one());
        Self {
            cache: gammas.iter().map(|g| vec![one.clone(), g.clone()]).collect(),
        }
    }

    fn product(&mut self, e: &MultiIndex) -> HomogeneousPoly {
        let mut acc: Option<HomogeneousPoly> = None;
        for (j, &k) in e.entries().iter().enumerate() {
            let c = &mut self.cache[j];
            while c.len() <= k as usize {
                let next = c.last().unwrap().mul(&c[1]).expect("same arity");
                c.push(next);
            }
            acc = Some(match acc {
                None => c[k as usize].clone(),
                Some(a) => a.mul(&c[k as usize]).expect("same arity"),
            });
        }
        acc.expect("n ≥ 1")
    }
}

impl Filtration {
    /// Runs the whole construction: every level's dimension and the greedy
    /// graded-lex choice of `η` extending the span one level at a time.
    pub fn build(gammas: &[HomogeneousPoly], alpha: u32) -> Result<Self, FiltrationError> {
        let (n, d) = validate(gammas)?;
        let nvars = n + 1;
        let coordinates = MonomialIndex::new(nvars, alpha);
        let total = coordinates.len();
        let tuples = enumerate_tuples(n, alpha / d.max(1));
        let mut powers = Powers::new(gammas);
        let mut echelon = EchelonBasis::new(total);
        let mut basis = Vec::with_capacity(total);
        let mut levels = Vec::with_capacity(tuples.len());
        for e in tuples.iter().rev() {
            let start = basis.len();
            if echelon.rank() < total {
                let prod = powers.product(e);
                for eta in monomial_basis(nvars, alpha - d * e.weight()) {
                    let psi = prod.mul_monomial(&eta);
                    if echelon.insert(&psi.coefficient_vector(&coordinates)) {
                        basis.push(CZBasisElement {
                            index: e.clone(),
                            eta,
                            psi,
                        });
                        if echelon.rank() == total {
                            break;
                        }
                    }
                }
            }
            levels.push(FiltrationLevel {
                index: e.clone(),
                dim: basis.len(),
                delta: basis.len() - start,
                basis_range: start..basis.len(),
            });
        }
        levels.reverse();
        if basis.len() != total {
            return Err(FiltrationError::RankDeficient {
                expected: total,
                found: basis.len(),
            });
        }
        Ok(Self {
            n,
            d,
            alpha,
            gammas: gammas.to_vec(),
            coordinates,
            levels,
            basis,
        })
    }

    /// `M = dim V_α`.
    pub fn dimension(&self) -> usize {
        self.coordinates.len()
    }

    pub fn level(&self, index: &MultiIndex) -> Option<&FiltrationLevel> {
        self.levels
            .binary_search_by(|l| l.index.cmp(index))
            .ok()
            .map(|k| &self.levels[k])
    }

    /// Spanning set of `W_(i)` (a basis, in fact) in monomial coordinates.
    pub fn span(&self, level: &FiltrationLevel) -> GradedPieceBasis {
        let mut piece = GradedPieceBasis::new(self.n + 1, self.alpha);
        for el in &self.basis[..level.basis_range.end] {
            piece.push(&el.psi);
        }
        piece
    }

    pub fn delta_map(&self) -> BTreeMap<MultiIndex, u64> {
        self.levels.iter().map(|l| (l.index.clone(), l.delta as u64)).collect()
    }

    /// `Σ_(i) i_j Δ_(i)` for each coordinate `j`.
    pub fn weighted_sums(&self) -> Vec<u64> {
        (0..self.n)
            .map(|j| {
                self.levels
                    .iter()
                    .map(|l| l.index.entries()[j] as u64 * l.delta as u64)
                    .sum()
            })
            .collect()
    }

    /// `Δ` from the first coordinate, after checking every coordinate gives
    /// the same value and that the closed-form lower bound holds when `d | α`.
    pub fn big_delta(&self) -> Result<u64, FiltrationError> {
        let sums = self.weighted_sums();
        if sums.windows(2).any(|w| w[0] != w[1]) {
            return Err(FiltrationError::AsymmetricDelta(sums));
        }
        let delta = sums[0];
        if self.alpha.is_multiple_of(self.d) {
            let bound = delta_lower_bound(self.n as u64, self.d as u64, self.alpha as u64);
            if BigRational::from_integer(BigInt::from(delta)) < bound {
                return Err(FiltrationError::LowerBoundViolated {
                    delta,
                    bound: bound.to_string(),
                });
            }
        }
        Ok(delta)
    }

    /// Exact rank of the adapted basis, recomputed from scratch.
    pub fn basis_rank(&self) -> usize {
        let rows: Vec<_> = self
            .basis
            .iter()
            .map(|el| el.psi.coefficient_vector(&self.coordinates))
            .collect();
        bareiss_rank(&rows)
    }
}

/// `dim W_(i)` from the full spanning set `{γ^e · m : (e) ≥ (i)}`, by
/// fraction-free rank.
pub fn filtration_dim(gammas: &[HomogeneousPoly], alpha: u32, i: &MultiIndex) -> Result<usize, FiltrationError> {
    let (n, d) = validate(gammas)?;
    let product = d as u64 * i.weight() as u64;
    if product > alpha as u64 {
        return Err(FiltrationError::WeightTooLarge {
            index: i.to_string(),
            weight: i.weight(),
            product,
            alpha,
        });
    }
    let nvars = n + 1;
    let coordinates = MonomialIndex::new(nvars, alpha);
    let mut powers = Powers::new(gammas);
    let mut rows = Vec::new();
    for e in enumerate_tuples(n, alpha / d).iter().filter(|e| *e >= i) {
        let prod = powers.product(e);
        for m in monomial_basis(nvars, alpha - d * e.weight()) {
            rows.push(prod.mul_monomial(&m).coefficient_vector(&coordinates));
        }
    }
    let rank = bareiss_rank(&rows);
    debug_assert!(rank as u64 <= graded_dim(nvars, alpha));
    Ok(rank)
}

pub fn delta_map(gammas: &[HomogeneousPoly], alpha: u32) -> Result<BTreeMap<MultiIndex, u64>, FiltrationError> {
    Ok(Filtration::build(gammas, alpha)?.delta_map())
}

pub fn cz_basis(gammas: &[HomogeneousPoly], alpha: u32) -> Result<Vec<CZBasisElement>, FiltrationError> {
    Ok(Filtration::build(gammas, alpha)?.basis)
}

pub fn big_delta(gammas: &[HomogeneousPoly], alpha: u32) -> Result<u64, FiltrationError> {
    Filtration::build(gammas, alpha)?.big_delta()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_form;

    fn forms(src: &[&str], nvars: usize) -> Vec<HomogeneousPoly> {
        src.iter().map(|s| parse_form(s, nvars).unwrap()).collect()
    }

    fn t(xs: &[u32]) -> MultiIndex {
        MultiIndex::new(xs.to_vec())
    }

    #[test]
    fn line_in_p1() {
        let g = forms(&["x1"], 2);
        let f = Filtration::build(&g, 3).unwrap();
        let dims: Vec<usize> = f.levels.iter().map(|l| l.dim).collect();
        assert_eq!(dims, vec![4, 3, 2, 1]);
        assert!(f.levels.iter().all(|l| l.delta == 1));
        assert_eq!(f.big_delta().unwrap(), 6);
        for k in 0..4 {
            assert_eq!(filtration_dim(&g, 3, &t(&[k])).unwrap(), 4 - k as usize);
        }
    }

    #[test]
    fn basis_for_small_alpha() {
        let g = forms(&["x1"], 2);
        let b = cz_basis(&g, 2).unwrap();
        let got: Vec<(String, String)> = b.iter().map(|e| (e.index.to_string(), e.psi.to_string())).collect();
        assert_eq!(
            got,
            vec![
                ("(2)".to_string(), "x1^2".to_string()),
                ("(1)".to_string(), "x0*x1".to_string()),
                ("(0)".to_string(), "x0^2".to_string()),
            ]
        );
    }

    #[test]
    fn quadrics_in_p2() {
        let g = forms(&["x1^2", "x2^2"], 3);
        assert_eq!(filtration_dim(&g, 4, &t(&[0, 1])).unwrap(), 11);
        assert_eq!(filtration_dim(&g, 4, &t(&[0, 0])).unwrap(), 15);
        let f = Filtration::build(&g, 4).unwrap();
        assert_eq!(f.basis.len(), 15);
        assert_eq!(f.level(&t(&[0, 0])).unwrap().delta, 4);
        assert_eq!(f.basis_rank(), 15);
        assert!(f.basis.iter().all(|e| 2 * e.index.weight() + e.eta.degree() == 4));
        let f8 = Filtration::build(&g, 8).unwrap();
        for l in &f8.levels {
            if l.index.weight() <= 2 {
                assert_eq!(l.delta, 4, "level {}", l.index);
            }
        }
    }

    #[test]
    fn weight_too_large() {
        let g = forms(&["x1"], 2);
        assert!(matches!(
            filtration_dim(&g, 2, &t(&[3])),
            Err(FiltrationError::WeightTooLarge { .. })
        ));
    }

    #[test]
    fn rejects_positive_dimensional() {
        let g = forms(&["x1", "x1^2 + x1*x2"], 3);
        assert!(matches!(Filtration::build(&g, 3), Err(FiltrationError::MixedDegree)));
        let g = forms(&["x1", "x1 + x0 - x0"], 3);
        assert!(matches!(
            Filtration::build(&g, 3),
            Err(FiltrationError::NotZeroDimensional)
        ));
    }
}
