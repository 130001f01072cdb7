use std::fmt;
use std::str::FromStr;

use super::StructureError;

/// Graphs up to this many vertices use a bitset adjacency matrix; larger
/// ones use sorted adjacency lists.
pub const DENSE_LIMIT: usize = 1 << 14;

/// Undirected simple graph on vertices `0..n`. Immutable once built.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Adjacency,
}

#[derive(Clone, Debug)]
enum Adjacency {
    Dense { words: usize, bits: Vec<u64> },
    Sparse(Vec<Vec<u32>>),
}

/// Incremental construction of a [`Graph`]; duplicate edges are merged.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    adj: Adjacency,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let adj = if n <= DENSE_LIMIT {
            let words = n.div_ceil(64);
            Adjacency::Dense { words, bits: vec![0; words * n] }
        } else {
            Adjacency::Sparse(vec![Vec::new(); n])
        };
        GraphBuilder { n, adj }
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<(), StructureError> {
        for v in [i, j] {
            if v >= self.n {
                return Err(StructureError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(StructureError::SelfLoop(i));
        }
        self.add_edge_unchecked(i, j);
        Ok(())
    }

    pub(crate) fn add_edge_unchecked(&mut self, i: usize, j: usize) {
        match &mut self.adj {
            Adjacency::Dense { words, bits } => {
                bits[i * *words + j / 64] |= 1 << (j % 64);
                bits[j * *words + i / 64] |= 1 << (i % 64);
            }
            Adjacency::Sparse(lists) => {
                lists[i].push(j as u32);
                lists[j].push(i as u32);
            }
        }
    }

    pub fn build(mut self) -> Graph {
        if let Adjacency::Sparse(lists) = &mut self.adj {
            for l in lists.iter_mut() {
                l.sort_unstable();
                l.dedup();
            }
        }
        Graph { n: self.n, adj: self.adj }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            for j in i + 1..n {
                b.add_edge_unchecked(i, j);
            }
        }
        b.build()
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (i, j) in edges {
            b.add_edge(i, j)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.adj, Adjacency::Dense { .. })
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i >= self.n || j >= self.n || i == j {
            return false;
        }
        match &self.adj {
            Adjacency::Dense { words, bits } => bits[i * words + j / 64] >> (j % 64) & 1 == 1,
            Adjacency::Sparse(lists) => lists[i].binary_search(&(j as u32)).is_ok(),
        }
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        match &self.adj {
            Adjacency::Dense { words, bits } => {
                let row = &bits[v * words..(v + 1) * words];
                Neighbors::Dense { row, word: 0, cur: row.first().copied().unwrap_or(0) }
            }
            Adjacency::Sparse(lists) => Neighbors::Sparse(lists[v].iter()),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        match &self.adj {
            Adjacency::Dense { words, bits } => {
                bits[v * words..(v + 1) * words].iter().map(|w| w.count_ones() as usize).sum()
            }
            Adjacency::Sparse(lists) => lists[v].len(),
        }
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.neighbors(i) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    b.add_edge_unchecked(i, j);
                }
            }
        }
        b.build()
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (a, &i) in vertices.iter().enumerate() {
            for (c, &j) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    b.add_edge_unchecked(a, c);
                }
            }
        }
        b.build()
    }
}

pub enum Neighbors<'a> {
    Dense { row: &'a [u64], word: usize, cur: u64 },
    Sparse(std::slice::Iter<'a, u32>),
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            Neighbors::Dense { row, word, cur } => loop {
                if *cur != 0 {
                    let b = cur.trailing_zeros() as usize;
                    *cur &= *cur - 1;
                    return Some(*word * 64 + b);
                }
                *word += 1;
                if *word >= row.len() {
                    return None;
                }
                *cur = row[*word];
            },
            Neighbors::Sparse(it) => it.next().map(|&v| v as usize),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        match (&self.adj, &other.adj) {
            (Adjacency::Dense { bits: a, .. }, Adjacency::Dense { bits: b, .. }) => a == b,
            (Adjacency::Sparse(a), Adjacency::Sparse(b)) => a == b,
            _ => self.edges() == other.edges(),
        }
    }
}

impl Eq for Graph {}

/// First line `n`, then one `i j` line per edge (1-based, `i < j`).
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (i, j) in self.edges() {
            writeln!(f, "{} {}", i + 1, j + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace().map(|t| {
            t.parse::<usize>().map_err(|_| StructureError::Parse(format!("bad integer {t:?}")))
        });
        let n = tokens
            .next()
            .ok_or_else(|| StructureError::Parse("missing vertex count".into()))??;
        let mut b = GraphBuilder::new(n);
        while let Some(i) = tokens.next() {
            let i = i?;
            let j = tokens
                .next()
                .ok_or_else(|| StructureError::Parse("dangling endpoint".into()))??;
            if i == 0 || j == 0 {
                return Err(StructureError::Parse("vertices are 1-based".into()));
            }
            b.add_edge(i - 1, j - 1)?;
        }
        Ok(b.build())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = g.to_string();
        assert_eq!(s, "4\n1 2\n2 3\n3 4\n");
        assert_eq!(s.parse::<Graph>().unwrap(), g);
        assert_eq!("4 \n 3 4   2 3\n1 2".parse::<Graph>().unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(StructureError::SelfLoop(1))));
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!("3\n1".parse::<Graph>().is_err());
        assert!("3\n0 1".parse::<Graph>().is_err());
    }

    #[test]
    fn neighbours_cross_word_boundaries() {
        let g = Graph::from_edges(130, [(0, 63), (0, 64), (0, 129)]).unwrap();
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![63, 64, 129]);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.complement().edge_count(), 130 * 129 / 2 - 3);
    }

    #[test]
    fn dense_and_sparse_agree() {
        let n = DENSE_LIMIT + 3;
        let g = Graph::from_edges(n, [(5, 2), (n - 1, 0), (2, 5)]).unwrap();
        assert!(!g.is_dense());
        assert!(g.has_edge(2, 5) && g.has_edge(0, n - 1));
        assert_eq!(g.edges(), vec![(0, n - 1), (2, 5)]);
        let small = Graph::from_edges(6, [(5, 2)]).unwrap();
        assert!(small.is_dense());
        assert_eq!(small.induced(&[2, 5]), Graph::complete(2));
    }
}
