//! Named graded bases.

use std::sync::Arc;

use crate::error::{Error, Result};

/// A named basis of a finite-dimensional graded space. Degrees are the
/// degrees in `V`; the shifted degree of basis vector `i` (its degree in
/// `V[1]`) is always derived as `degrees[i] - 1`, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<i64>,
}

impl GradedBasis {
    pub fn new(names: Vec<String>, degrees: Vec<i64>) -> Result<Arc<Self>> {
        if names.len() != degrees.len() {
            return Err(Error::LengthMismatch(format!(
                "{} names vs {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        for (i, a) in names.iter().enumerate() {
            for b in names.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::InvalidInput(format!("duplicate basis name `{a}`")));
                }
            }
        }
        Ok(Arc::new(GradedBasis { names, degrees }))
    }

    /// Basis `e1, .., en` concentrated in degree 0.
    pub fn ungraded(dim: usize) -> Arc<Self> {
        GradedBasis::new((1..=dim).map(|i| format!("e{i}")).collect(), vec![0; dim]).unwrap()
    }

    pub fn with_degrees(degrees: Vec<i64>) -> Arc<Self> {
        GradedBasis::new(
            (1..=degrees.len()).map(|i| format!("e{i}")).collect(),
            degrees,
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Degree in `V`.
    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Degree in `V[1]`.
    pub fn shifted_degree(&self, i: usize) -> i64 {
        self.degrees[i] - 1
    }

    pub fn shifted_degrees_of(&self, tuple: &[usize]) -> Vec<i64> {
        tuple.iter().map(|&i| self.shifted_degree(i)).collect()
    }

    pub fn total_shifted_degree(&self, tuple: &[usize]) -> i64 {
        tuple.iter().map(|&i| self.shifted_degree(i)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_degree_is_derived() {
        let b = GradedBasis::with_degrees(vec![0, 3, -2]);
        assert_eq!(b.shifted_degree(0), -1);
        assert_eq!(b.shifted_degree(1), 2);
        assert_eq!(b.shifted_degree(2), -3);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(GradedBasis::new(vec!["a".into(), "a".into()], vec![0, 0]).is_err());
        assert!(GradedBasis::new(vec!["a".into()], vec![0, 0]).is_err());
    }
}
