use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponent vector `x0^e0 · … · xn^en`.
///
/// Ordered graded-lexicographically: higher total degree is larger, ties are
/// broken by the first differing exponent (larger exponent of `x0` wins).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    /// The variable `x_k` in `nvars` variables.
    pub fn variable(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial::new(self.exponents.iter().map(|e| e * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{k}")?;
            } else {
                write!(f, "x{k}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `deg` in `nvars` variables, leading
/// (graded-lex largest) first: `(deg,0,…,0)` through `(0,…,0,deg)`.
pub fn monomial_basis(nvars: usize, deg: u32) -> Vec<Monomial> {
    assert!(nvars >= 1, "monomial_basis needs at least one variable");
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut current, 0, deg, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Coordinate system on `V_deg`: the monomial basis plus reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    lookup: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomial_basis(nvars, degree);
        let lookup = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self {
            nvars,
            degree,
            monomials,
            lookup,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.lookup.get(m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        let b = monomial_basis(2, 1);
        assert_eq!(b, vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])]);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(1, 5), vec![Monomial::new(vec![5])]);
        assert_eq!(monomial_basis(4, 0), vec![Monomial::one(4)]);
    }

    #[test]
    fn basis_is_strictly_descending() {
        let b = monomial_basis(3, 4);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(vec![2, 0, 1]).to_string(), "x0^2*x2");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }
}
