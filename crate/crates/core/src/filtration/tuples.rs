use std::fmt;

/// An `n`-tuple `(i_1, …, i_n)`; the derived order is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self { entries }
    }

    pub fn zero(n: usize) -> Self {
        Self { entries: vec![0; n] }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `σ(i) = Σ i_j`.
    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All `n`-tuples with `σ ≤ bound`, in ascending lexicographic order.
pub fn enumerate_tuples(n: usize, bound: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if cur.len() == n {
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, bound, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(xs: &[u32]) -> MultiIndex {
        MultiIndex::new(xs.to_vec())
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_tuples(2, 1), vec![t(&[0, 0]), t(&[0, 1]), t(&[1, 0])]);
        assert_eq!(enumerate_tuples(1, 3), vec![t(&[0]), t(&[1]), t(&[2]), t(&[3])]);
        let six = enumerate_tuples(2, 2);
        assert_eq!(six.len(), 6);
        assert_eq!(six.last(), Some(&t(&[2, 0])));
    }

    #[test]
    fn order_is_by_first_difference() {
        assert!(t(&[1, 0]) > t(&[0, 5]));
        assert!(t(&[0, 2, 0]) > t(&[0, 1, 9]));
        assert_eq!(t(&[2, 1, 0]).weight(), 3);
        assert_eq!(t(&[0, 2]).to_string(), "(0,2)");
    }
}
