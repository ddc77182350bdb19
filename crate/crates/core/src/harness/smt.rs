use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::report::{Cell, Table};
use super::scenario::Scenario;
use super::HarnessError;
use crate::algebra::is_general_position;
use crate::filtration::{m_exact, truncation_report, TruncationReport};
use crate::nevanlinna::{nevanlinna_rows, CircleQuadrature, NevanlinnaRow, Truncation};

/// Where the truncation level of a run came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationMode {
    /// `M = C(α+n, n)` for the ε-driven `α`.
    Exact,
    /// `M = C(α+n, n)` for a user-supplied `α`.
    AlphaOverride(u32),
    /// `M` given directly.
    Override(u64),
}

impl TruncationMode {
    fn label(&self) -> &'static str {
        match self {
            TruncationMode::Exact => "M_exact",
            TruncationMode::AlphaOverride(_) => "alpha_override",
            TruncationMode::Override(_) => "M_override",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmtReportRow {
    pub requested_r: f64,
    /// Radius actually used (nudged off circles through zeros).
    pub r: f64,
    pub characteristic: f64,
    /// `N_f^M(r, D_j)` in target order.
    pub counting_truncated: Vec<f64>,
    /// `Σ N_f^M(r, D_j) / d_j`.
    pub rhs: f64,
    /// `(q − n − 1 − ε) T_f(r)`.
    pub lhs: f64,
    pub margin: f64,
    pub negative_margin: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmtReport {
    pub n: usize,
    pub q: usize,
    pub d: u64,
    pub epsilon: BigRational,
    pub bounds: TruncationReport,
    pub mode: TruncationMode,
    /// `None` when the level does not fit in 64 bits (no truncation then).
    pub truncation: Option<u64>,
    pub targets: Vec<String>,
    pub degrees: Vec<u32>,
    pub assumption: Option<String>,
    pub rows: Vec<SmtReportRow>,
}

struct Resolved {
    bounds: TruncationReport,
    mode: TruncationMode,
    level: Option<u64>,
}

impl Resolved {
    fn truncation(&self) -> Truncation {
        self.level.map_or(Truncation::Infinite, Truncation::Finite)
    }
}

fn resolve(s: &Scenario) -> Result<Resolved, HarnessError> {
    let bounds = truncation_report(s.n as u64, s.degree_lcm(), &s.epsilon, None)?;
    let (mode, level): (TruncationMode, Option<u64>) = match (s.m_override, s.alpha_override) {
        (Some(m), _) => (TruncationMode::Override(m), Some(m)),
        (None, Some(a)) => (TruncationMode::AlphaOverride(a), m_exact(s.n as u64, a as u64).to_u64()),
        (None, None) => (TruncationMode::Exact, bounds.m_exact.to_u64()),
    };
    Ok(Resolved { bounds, mode, level })
}

fn check_general_position(s: &Scenario) -> Result<(), HarnessError> {
    let gp = is_general_position(&s.targets, s.n)?;
    if let Some(subset) = gp.failing_subset {
        return Err(HarnessError::GeneralPosition {
            forms: subset.iter().map(|&j| s.targets[j].to_string()).collect(),
            subset,
            witness: gp.witness_point.map(|p| {
                let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                format!("({})", coords.join(" : "))
            }),
        });
    }
    Ok(())
}

fn labels(s: &Scenario) -> Vec<String> {
    s.targets.iter().map(|t| t.to_string()).collect()
}

fn rows_for(s: &Scenario, truncation: Truncation) -> Result<Vec<NevanlinnaRow>, HarnessError> {
    let quad = CircleQuadrature::with_tol(s.tol);
    Ok(nevanlinna_rows(&s.curve, &s.targets, &s.r_grid, truncation, &quad)?)
}

/// Evaluates both sides of the truncated inequality on every grid radius.
/// Negative margins are flagged on the row, never treated as errors.
pub fn run_smt_scenario(s: &Scenario) -> Result<SmtReport, HarnessError> {
    if s.n >= 2 && s.curve.is_polynomial() {
        return Err(HarnessError::PolynomialCurve(s.n));
    }
    check_general_position(s)?;
    let resolved = resolve(s)?;
    let raw = rows_for(s, resolved.truncation())?;
    let eps = s.epsilon.to_f64().expect("ε is a small rational");
    let coefficient = s.q() as f64 - s.n as f64 - 1.0 - eps;
    let degrees = s.degrees();
    let rows = s
        .r_grid
        .iter()
        .zip(raw)
        .map(|(&requested_r, row)| {
            let rhs: f64 = row
                .counting_truncated
                .iter()
                .zip(&degrees)
                .map(|(nm, &d)| nm / d as f64)
                .sum();
            let lhs = coefficient * row.characteristic;
            let margin = rhs - lhs;
            SmtReportRow {
                requested_r,
                r: row.r,
                characteristic: row.characteristic,
                counting_truncated: row.counting_truncated,
                rhs,
                lhs,
                margin,
                negative_margin: margin < 0.0,
            }
        })
        .collect();
    Ok(SmtReport {
        n: s.n,
        q: s.q(),
        d: s.degree_lcm(),
        epsilon: s.epsilon.clone(),
        bounds: resolved.bounds,
        mode: resolved.mode,
        truncation: resolved.level,
        targets: labels(s),
        degrees,
        assumption: s.assumption.clone(),
        rows,
    })
}

fn level_text(level: Option<u64>) -> String {
    level.map_or_else(|| "none".to_owned(), |m| m.to_string())
}

fn bound_metadata(
    t: &mut Table,
    n: usize,
    q: usize,
    d: u64,
    resolved_mode: TruncationMode,
    level: Option<u64>,
    b: &TruncationReport,
) {
    t.meta("n", n)
        .meta("q", q)
        .meta("d", d)
        .meta("epsilon", &b.epsilon)
        .meta("truncation_source", resolved_mode.label())
        .meta("M", level_text(level));
    if let TruncationMode::AlphaOverride(a) = resolved_mode {
        t.meta("alpha_override", a);
    }
    t.meta("alpha", b.alpha)
        .meta("M_exact", &b.m_exact)
        .meta("M_paper", &b.m_paper)
        .meta("M_exact_exceeds_M_paper", b.paper_bound_exceeded);
}

impl SmtReport {
    pub fn to_table(&self) -> Table {
        let mut cols = vec!["r".to_owned(), "T".to_owned()];
        cols.extend(self.targets.iter().map(|t| format!("N_M[{t}]")));
        cols.extend(["RHS", "LHS", "margin", "negative_margin", "perturbed"].map(String::from));
        let mut t = Table::new(cols);
        bound_metadata(&mut t, self.n, self.q, self.d, self.mode, self.truncation, &self.bounds);
        if let Some(a) = &self.assumption {
            t.meta("assumption", a);
        }
        for row in &self.rows {
            let mut cells: Vec<Cell> = vec![row.r.into(), row.characteristic.into()];
            cells.extend(row.counting_truncated.iter().map(|&x| Cell::from(x)));
            cells.extend([
                row.rhs.into(),
                row.lhs.into(),
                row.margin.into(),
                row.negative_margin.into(),
                (row.r != row.requested_r).into(),
            ]);
            t.push(cells);
        }
        t
    }

    pub fn m_exact(&self) -> &BigUint {
        &self.bounds.m_exact
    }
}

/// All Nevanlinna functionals of the scenario's curve against each target,
/// with the First Main Theorem residual `m + N − d_j T` per target and its
/// spread over the grid in the metadata.
pub fn nevanlinna_table(s: &Scenario) -> Result<Table, HarnessError> {
    let resolved = resolve(s)?;
    let rows = rows_for(s, resolved.truncation())?;
    let names = labels(s);
    let degrees = s.degrees();
    let mut cols = vec!["r".to_owned(), "T".to_owned()];
    for name in &names {
        for key in ["m", "n", "n_M", "N", "N_M", "fmt_residual"] {
            cols.push(format!("{key}[{name}]"));
        }
    }
    let mut t = Table::new(cols);
    bound_metadata(
        &mut t,
        s.n,
        s.q(),
        s.degree_lcm(),
        resolved.mode,
        resolved.level,
        &resolved.bounds,
    );
    let residual =
        |row: &NevanlinnaRow, j: usize| row.proximity[j] + row.counting[j] - degrees[j] as f64 * row.characteristic;
    for (j, name) in names.iter().enumerate() {
        let (lo, hi) = rows
            .iter()
            .map(|row| residual(row, j))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        t.meta(&format!("fmt_spread[{name}]"), super::format_sig12(hi - lo));
    }
    for row in &rows {
        let mut cells: Vec<Cell> = vec![row.r.into(), row.characteristic.into()];
        for j in 0..names.len() {
            cells.extend([
                row.proximity[j].into(),
                row.count[j].into(),
                row.count_truncated[j].into(),
                row.counting[j].into(),
                row.counting_truncated[j].into(),
                residual(row, j).into(),
            ]);
        }
        t.push(cells);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(json: &str) -> Scenario {
        Scenario::from_json(json).unwrap()
    }

    #[test]
    fn point_targets_closed_form() {
        let s = scenario(
            r#"{"n":1,"curve":["z","1"],"targets":[{"form":"x0 - x1","degree":1},{"form":"x0 - 2*x1","degree":1},
            {"form":"x0 - 3*x1","degree":1},{"form":"x0 - 4*x1","degree":1},{"form":"x0 - 5*x1","degree":1}],
            "epsilon":"1/2","r_grid":[20,40,80],"M_override":1}"#,
        );
        let rep = run_smt_scenario(&s).unwrap();
        assert_eq!(rep.truncation, Some(1));
        for row in &rep.rows {
            let r = row.r;
            let expected = 2.5 * r.ln() - 120f64.ln();
            assert!((row.margin - expected).abs() < 1e-4, "{} vs {expected}", row.margin);
            assert!(!row.negative_margin);
        }
    }

    #[test]
    fn transcendental_rows() {
        let s = scenario(
            r#"{"n":2,"curve":["1","z","exp(z)"],"targets":[{"form":"x0","degree":1},{"form":"x1","degree":1},
            {"form":"x2","degree":1},{"form":"x0 + x1 + x2","degree":1}],"epsilon":0.5,"r_grid":[5,10,15,20]}"#,
        );
        let rep = run_smt_scenario(&s).unwrap();
        assert_eq!(rep.mode, TruncationMode::Exact);
        assert_eq!(rep.truncation, Some(11476));
        assert_eq!(rep.rows.len(), 4);
        for row in &rep.rows {
            assert_eq!(row.counting_truncated[2], 0.0);
            assert_eq!(row.counting_truncated[0], 0.0);
        }
    }

    #[test]
    fn general_position_failure_names_subset() {
        let s = scenario(
            r#"{"n":2,"curve":["1","z","exp(z)"],"targets":[{"form":"x0","degree":1},{"form":"x1","degree":1},
            {"form":"x0 + x1","degree":1},{"form":"x2","degree":1}],"epsilon":0.5,"r_grid":[5]}"#,
        );
        match run_smt_scenario(&s) {
            Err(HarnessError::GeneralPosition { subset, .. }) => assert_eq!(subset, vec![0, 1, 2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn polynomial_curve_rejected_in_higher_dimension() {
        let s = scenario(
            r#"{"n":2,"curve":["1","z","z^2"],"targets":[{"form":"x0","degree":1},{"form":"x1","degree":1},
            {"form":"x2","degree":1},{"form":"x0 + x1 + x2","degree":1}],"epsilon":0.5,"r_grid":[5]}"#,
        );
        assert!(matches!(run_smt_scenario(&s), Err(HarnessError::PolynomialCurve(2))));
    }
}
