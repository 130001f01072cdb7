use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphBuilder, StructureError};

/// Permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self, StructureError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(StructureError::InvalidPermutation(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at 0-based position `i` (1-based value).
    pub fn get(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `i ↦ n + 1 - σ(i)`.
    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation { values: self.values.iter().map(|&v| n + 1 - v).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    /// Positions `i < j` are adjacent iff `σ(i) > σ(j)`.
    pub fn inversion_graph(&self) -> Graph {
        let n = self.len();
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if self.values[i] > self.values[j] {
                    b.add_edge_unchecked(i, j);
                }
            }
        }
        b.build()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = super::compact(s);
        if s.is_empty() {
            return Ok(Permutation { values: Vec::new() });
        }
        let values = s
            .split(',')
            .map(|t| t.parse::<usize>().map_err(|_| StructureError::Parse(format!("bad value {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let p: Permutation = " 2, 1 ,3".parse().unwrap();
        assert_eq!(p.to_string(), "2,1,3");
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn inversion_graph_of_2413() {
        let p = Permutation::new(vec![2, 4, 1, 3]).unwrap();
        // inversions: (2,1), (4,1), (4,3)
        assert_eq!(p.inversion_graph().edges(), vec![(0, 2), (1, 2), (1, 3)]);
        assert_eq!(p.inverse().inverse(), p);
        assert_eq!(p.complement().to_string(), "3,1,4,2");
    }
}
