use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::poly::{parse_expr, parse_form, parse_rational, Curve, HomogeneousPoly};

/// A target hypersurface as written in a scenario file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub form: String,
    pub degree: u32,
}

/// `ε` may be given as a JSON number or as an exact rational string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EpsilonSpec {
    Number(serde_json::Number),
    Text(String),
}

/// On-disk scenario layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub n: usize,
    pub curve: Vec<String>,
    pub targets: Vec<TargetSpec>,
    pub epsilon: EpsilonSpec,
    pub r_grid: Vec<f64>,
    #[serde(default)]
    pub alpha_override: Option<u32>,
    #[serde(default, rename = "M_override")]
    pub m_override: Option<u64>,
    #[serde(default)]
    pub tol: Option<f64>,
    /// Free-text non-degeneracy assumption for transcendental curves.
    #[serde(default)]
    pub assumption: Option<String>,
}

/// A parsed and validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub n: usize,
    pub curve: Curve,
    pub curve_source: Vec<String>,
    pub targets: Vec<HomogeneousPoly>,
    pub target_source: Vec<String>,
    pub epsilon: BigRational,
    pub r_grid: Vec<f64>,
    pub alpha_override: Option<u32>,
    pub m_override: Option<u64>,
    pub tol: f64,
    pub assumption: Option<String>,
}

pub const DEFAULT_TOL: f64 = 1e-4;

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| HarnessError::Scenario(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_file(file: ScenarioFile) -> Result<Self, HarnessError> {
        let bad = |m: String| Err(HarnessError::Scenario(m));
        let n = file.n;
        if n == 0 {
            return bad("n must be at least 1".into());
        }
        if file.curve.len() != n + 1 {
            return bad(format!("curve needs {} components, got {}", n + 1, file.curve.len()));
        }
        let components = file
            .curve
            .iter()
            .map(|s| parse_expr(s))
            .collect::<Result<Vec<_>, _>>()?;
        let curve = Curve::new(components)?;
        if file.targets.len() <= n {
            return bad(format!("need more than n = {n} targets, got {}", file.targets.len()));
        }
        let mut targets = Vec::with_capacity(file.targets.len());
        for t in &file.targets {
            let q = parse_form(&t.form, n + 1)?;
            if q.is_zero() {
                return bad(format!("target `{}` is the zero form", t.form));
            }
            if q.degree() != t.degree {
                return bad(format!(
                    "target `{}` has degree {}, declared {}",
                    t.form,
                    q.degree(),
                    t.degree
                ));
            }
            targets.push(q);
        }
        let epsilon = match &file.epsilon {
            EpsilonSpec::Number(x) => parse_rational(&x.to_string())?,
            EpsilonSpec::Text(s) => parse_rational(s)?,
        };
        if epsilon <= BigRational::zero() || epsilon >= BigRational::one() {
            return bad(format!("epsilon = {epsilon} must lie strictly between 0 and 1"));
        }
        if file.r_grid.is_empty() {
            return bad("r_grid is empty".into());
        }
        if file.r_grid.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return bad("r_grid entries must be positive and finite".into());
        }
        if file.r_grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad("r_grid must be strictly ascending".into());
        }
        let tol = file.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return bad(format!("tol = {tol} must be positive"));
        }
        Ok(Self {
            n,
            curve,
            curve_source: file.curve,
            target_source: file.targets.iter().map(|t| t.form.clone()).collect(),
            targets,
            epsilon,
            r_grid: file.r_grid,
            alpha_override: file.alpha_override,
            m_override: file.m_override,
            tol,
            assumption: file.assumption,
        })
    }

    pub fn q(&self) -> usize {
        self.targets.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.targets.iter().map(|t| t.degree()).collect()
    }

    /// `d = lcm(d_1, …, d_q)`.
    pub fn degree_lcm(&self) -> u64 {
        self.targets
            .iter()
            .fold(BigInt::one(), |acc, t| acc.lcm(&BigInt::from(t.degree())))
            .try_into()
            .expect("lcm of u32 degrees of a desk-scale scenario fits in u64")
    }
}
