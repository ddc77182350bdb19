use super::report::Table;
use super::HarnessError;
use crate::algebra::bareiss_rank;
use crate::nevanlinna::{safe_radius, CircleQuadrature, TargetZeros, Truncation};
use crate::poly::{curve_compose, wronskian, Curve, HomogeneousPoly, MonomialIndex};

const MAX_FORMS: usize = 12;

/// Nonempty subsets (as sorted index lists) of linearly independent forms,
/// found by exhaustive enumeration over bitmasks with an exact rank test.
pub fn independent_subsets(forms: &[HomogeneousPoly]) -> Vec<Vec<usize>> {
    let Some(first) = forms.first() else {
        return Vec::new();
    };
    let nvars = first.nvars();
    let index = MonomialIndex::new(nvars, 1);
    let vectors: Vec<_> = forms.iter().map(|f| f.coefficient_vector(&index)).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << forms.len()) {
        let size = mask.count_ones() as usize;
        if size > nvars {
            continue;
        }
        let subset: Vec<usize> = (0..forms.len()).filter(|&j| mask & (1 << j) != 0).collect();
        let rows: Vec<_> = subset.iter().map(|&j| vectors[j].clone()).collect();
        if bareiss_rank(&rows) == size {
            out.push(subset);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremRRow {
    pub requested_r: f64,
    pub r: f64,
    pub characteristic: f64,
    /// Circle mean of the maximal subset sum.
    pub proximity_sum: f64,
    /// `N_W(r, 0)` for the Wronskian of the components.
    pub wronskian_counting: f64,
    pub lhs: f64,
    /// `(m + 1) T_F(r)`.
    pub rhs: f64,
    pub difference: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremRReport {
    pub m: usize,
    pub forms: Vec<String>,
    pub independent_subsets: usize,
    pub wronskian: String,
    /// Linear non-degeneracy is certified by a nonzero polynomial Wronskian;
    /// otherwise the nonzero exp-polynomial Wronskian is the certificate.
    pub nondegeneracy: &'static str,
    pub rows: Vec<TheoremRRow>,
}

impl TheoremRReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new([
            "r",
            "T",
            "proximity_sum",
            "N_W",
            "LHS",
            "RHS",
            "LHS_minus_RHS",
            "perturbed",
        ]);
        t.meta("m", self.m)
            .meta("forms", self.forms.join("; "))
            .meta("independent_subsets", self.independent_subsets)
            .meta("wronskian", &self.wronskian)
            .meta("nondegeneracy", self.nondegeneracy);
        for row in &self.rows {
            t.push(vec![
                row.r.into(),
                row.characteristic.into(),
                row.proximity_sum.into(),
                row.wronskian_counting.into(),
                row.lhs.into(),
                row.rhs.into(),
                row.difference.into(),
                (row.r != row.requested_r).into(),
            ]);
        }
        t
    }

    /// `LHS − RHS` at consecutive radii never increases by more than `tol`
    /// from index `from` onwards.
    pub fn non_increasing_from(&self, from: usize, tol: f64) -> bool {
        self.rows[from.min(self.rows.len())..]
            .windows(2)
            .all(|w| w[1].difference <= w[0].difference + tol)
    }
}

/// Both sides of the linear-form estimate
/// `∫ max_K Σ_{j∈K} log(‖F‖‖L_j‖/|L_j(F)|) dθ/2π + N_W(r, 0) ≤ (m+1) T_F(r) + O(1)`
/// on each grid radius.
pub fn theorem_r_check(
    f: &Curve,
    forms: &[HomogeneousPoly],
    r_grid: &[f64],
    tol: f64,
) -> Result<TheoremRReport, HarnessError> {
    let m = f.n();
    for l in forms {
        if l.degree() != 1 {
            return Err(HarnessError::NonLinearForm(l.to_string()));
        }
        if l.nvars() != m + 1 {
            return Err(crate::poly::PolyError::ArityMismatch {
                expected: m + 1,
                found: l.nvars(),
            }
            .into());
        }
    }
    if forms.len() > MAX_FORMS {
        return Err(HarnessError::TooManyForms(forms.len()));
    }
    let subsets = independent_subsets(forms);
    let w = wronskian(f.components());
    if w.is_zero() {
        return Err(HarnessError::DegenerateCurve);
    }
    let r_max = r_grid.iter().cloned().fold(0.0, f64::max);
    let search = r_max * 1.01;
    let w_zeros = TargetZeros::of_expr(&w, search, 1e-10)?;
    let mut moduli: Vec<f64> = w_zeros.zeros.zeros.iter().map(|z| z.location.norm()).collect();
    for l in forms {
        let g = curve_compose(l, f)?;
        if g.is_zero() {
            return Err(HarnessError::CurveInTarget(l.to_string()));
        }
        let tz = TargetZeros::of_expr(&g, search, 1e-10)?;
        moduli.extend(tz.zeros.zeros.iter().map(|z| z.location.norm()));
    }
    let norms: Vec<f64> = forms.iter().map(|l| l.max_coefficient_modulus()).collect();
    let c = f.compile();
    let quad = CircleQuadrature::with_tol(tol);
    let mut rows = Vec::with_capacity(r_grid.len());
    for &r0 in r_grid {
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(crate::nevanlinna::NevanlinnaError::InvalidRadius(r0).into());
        }
        let r = safe_radius(r0, moduli.iter().cloned());
        let characteristic = quad
            .mean(|t| c.norm(num_complex::Complex64::from_polar(r, t)).ln())?
            .value;
        let proximity_sum = quad
            .mean(|t| {
                let z = num_complex::Complex64::from_polar(r, t);
                let mut vals = Vec::with_capacity(m + 1);
                c.eval_into(z, &mut vals);
                let norm = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
                let terms: Vec<f64> = forms
                    .iter()
                    .zip(&norms)
                    .map(|(l, &nl)| (norm * nl / l.eval_c64(&vals).norm()).ln())
                    .collect();
                subsets
                    .iter()
                    .map(|k| k.iter().map(|&j| terms[j]).sum::<f64>())
                    .fold(f64::NEG_INFINITY, f64::max)
            })?
            .value;
        let wronskian_counting = w_zeros.counting(r, Truncation::Infinite);
        let lhs = proximity_sum + wronskian_counting;
        let rhs = (m + 1) as f64 * characteristic;
        rows.push(TheoremRRow {
            requested_r: r0,
            r,
            characteristic,
            proximity_sum,
            wronskian_counting,
            lhs,
            rhs,
            difference: lhs - rhs,
        });
    }
    Ok(TheoremRReport {
        m,
        forms: forms.iter().map(|l| l.to_string()).collect(),
        independent_subsets: subsets.len(),
        wronskian: w.to_string(),
        nondegeneracy: if w.is_polynomial() {
            "certified: nonzero polynomial Wronskian"
        } else {
            "certified: nonzero exp-polynomial Wronskian"
        },
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_expr, parse_form};

    fn curve(parts: &[&str]) -> Curve {
        Curve::new(parts.iter().map(|s| parse_expr(s).unwrap()).collect()).unwrap()
    }

    fn forms(src: &[&str], nvars: usize) -> Vec<HomogeneousPoly> {
        src.iter().map(|s| parse_form(s, nvars).unwrap()).collect()
    }

    #[test]
    fn subsets_of_three_points() {
        let ls = forms(&["x0", "x1", "x0 - x1"], 2);
        // three singletons and all three pairs
        assert_eq!(independent_subsets(&ls).len(), 6);
        let dup = forms(&["x0", "2*x0"], 2);
        assert_eq!(independent_subsets(&dup).len(), 2);
    }

    #[test]
    fn line_in_projective_line() {
        let f = curve(&["1", "z"]);
        let ls = forms(&["x0", "x1", "x0 - x1"], 2);
        let rep = theorem_r_check(&f, &ls, &[2.0, 4.0, 8.0, 16.0], 1e-6).unwrap();
        assert_eq!(rep.wronskian, "1");
        for row in &rep.rows {
            assert_eq!(row.wronskian_counting, 0.0);
            // T = log r; the best pair is {x0, x1} off the unit circle
            assert!(row.difference < 2.0, "{row:?}");
        }
    }

    #[test]
    fn exp_curve_wronskian() {
        let f = curve(&["1", "z", "exp(z)"]);
        let ls = forms(&["x0", "x1", "x2", "x0 + x1 + x2"], 3);
        let rep = theorem_r_check(&f, &ls, &[5.0, 10.0], 1e-4).unwrap();
        assert_eq!(rep.wronskian, "exp(z)");
        assert!(rep.rows.iter().all(|r| r.wronskian_counting == 0.0));
    }

    #[test]
    fn rejects_nonlinear_and_oversized() {
        let f = curve(&["1", "z"]);
        assert!(matches!(
            theorem_r_check(&f, &forms(&["x0^2"], 2), &[2.0], 1e-4),
            Err(HarnessError::NonLinearForm(_))
        ));
        let many: Vec<HomogeneousPoly> = (1..=13)
            .map(|k| parse_form(&format!("x0 - {k}*x1"), 2).unwrap())
            .collect();
        assert!(matches!(
            theorem_r_check(&f, &many, &[2.0], 1e-4),
            Err(HarnessError::TooManyForms(13))
        ));
    }
}
