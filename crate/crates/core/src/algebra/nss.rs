use super::linalg::solve_columns;
use super::AlgebraError;
use crate::poly::{monomial_basis, HomogeneousPoly, Monomial, MonomialIndex};

/// `x_k^{m_k} = Σ_j b_j · Q_j`, with each `b_j` of degree `m_k − d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NssCertificate {
    pub k: usize,
    pub exponent: u32,
    pub cofactors: Vec<HomogeneousPoly>,
}

impl NssCertificate {
    /// Expands `Σ b_j Q_j` exactly and compares with `x_k^{m_k}`.
    pub fn verify(&self, qs: &[HomogeneousPoly]) -> bool {
        if qs.len() != self.cofactors.len() || qs.is_empty() {
            return false;
        }
        let nvars = qs[0].nvars();
        let mut sum = HomogeneousPoly::zero(nvars, self.exponent);
        for (b, q) in self.cofactors.iter().zip(qs) {
            let Ok(t) = b.mul(q) else { return false };
            let Ok(s) = sum.add(&t) else { return false };
            sum = s;
        }
        sum == HomogeneousPoly::variable(nvars, self.k).pow(self.exponent)
    }
}

/// Smallest `m ≥ d` with `x_k^m` in the ideal of `qs` at degree `m`, plus
/// the cofactors of one solution. The search stops at the Macaulay degree.
pub fn nss_certificate(qs: &[HomogeneousPoly], k: usize) -> Result<NssCertificate, AlgebraError> {
    let first = qs.first().ok_or(AlgebraError::EmptySystem)?;
    let nvars = first.nvars();
    let d = first.degree();
    if qs.iter().any(|q| q.nvars() != nvars) {
        return Err(AlgebraError::MixedArity);
    }
    if qs.iter().any(|q| q.degree() != d) {
        return Err(AlgebraError::MixedDegree);
    }
    if qs.iter().any(|q| q.is_zero()) {
        return Err(AlgebraError::ZeroForm);
    }
    if k >= nvars {
        return Err(AlgebraError::VariableOutOfRange(k));
    }
    let refs: Vec<&HomogeneousPoly> = qs.iter().collect();
    let top = super::macaulay_degree(&refs).max(d);
    for m in d..=top {
        let coords = MonomialIndex::new(nvars, m);
        let etas = monomial_basis(nvars, m - d);
        let columns: Vec<_> = qs
            .iter()
            .flat_map(|q| etas.iter().map(move |eta| q.mul_monomial(eta)))
            .map(|p| p.coefficient_vector(&coords))
            .collect();
        let target = HomogeneousPoly::variable(nvars, k).pow(m).coefficient_vector(&coords);
        if let Some(x) = solve_columns(&columns, &target) {
            let cofactors = x
                .chunks(etas.len())
                .map(|chunk| {
                    let terms: Vec<(Monomial, _)> = etas.iter().cloned().zip(chunk.iter().cloned()).collect();
                    HomogeneousPoly::from_terms(nvars, m - d, terms).expect("cofactor degree")
                })
                .collect();
            return Ok(NssCertificate {
                k,
                exponent: m,
                cofactors,
            });
        }
    }
    Err(AlgebraError::NotGeneralPosition(top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_form, ComplexRational};

    fn forms(src: &[&str], nvars: usize) -> Vec<HomogeneousPoly> {
        src.iter().map(|s| parse_form(s, nvars).unwrap()).collect()
    }

    #[test]
    fn linear_pair() {
        let qs = forms(&["x0 + x1", "x0 - x1"], 2);
        let c = nss_certificate(&qs, 0).unwrap();
        assert_eq!(c.exponent, 1);
        let half =
            HomogeneousPoly::from_terms(2, 0, vec![(Monomial::one(2), ComplexRational::from_ratio(1, 2))]).unwrap();
        assert_eq!(c.cofactors, vec![half.clone(), half]);
        assert!(c.verify(&qs));
    }

    #[test]
    fn coordinate_forms() {
        let qs = forms(&["x0", "x1", "x2"], 3);
        let c = nss_certificate(&qs, 2).unwrap();
        assert_eq!(c.exponent, 1);
        let b: Vec<String> = c.cofactors.iter().map(|p| p.to_string()).collect();
        assert_eq!(b, vec!["0", "0", "1"]);
    }

    #[test]
    fn quadric_system() {
        let qs = forms(&["x1^2", "x2^2", "x0^2 + x1*x2"], 3);
        let c = nss_certificate(&qs, 0).unwrap();
        assert_eq!(c.exponent, 4);
        let expected = vec![
            parse_form("x2^2", 3).unwrap(),
            HomogeneousPoly::zero(3, 2),
            parse_form("x0^2 - x1*x2", 3).unwrap(),
        ];
        assert_eq!(c.cofactors, expected);
        assert!(c.verify(&qs));
    }

    #[test]
    fn common_zero_has_no_certificate() {
        let qs = forms(&["x0", "x1", "x0 + x1"], 3);
        assert!(matches!(
            nss_certificate(&qs, 2),
            Err(AlgebraError::NotGeneralPosition(_))
        ));
    }
}
