//! Graphs, cotrees, permutations and Schröder trees, with the bijections
//! between them and their text forms.
//!
//! Vertices and leaf labels are 0-based in the API; the text forms are
//! 1-based (`L1`, `1 2`, `2,1,3`).

mod cotree;
mod graph;
mod permutation;
mod schroder;

pub use cotree::{Cotree, CotreeNode, Decoration};
pub use graph::{Graph, GraphBuilder, DENSE_LIMIT};
pub use permutation::Permutation;
pub use schroder::{SchroderNode, SchroderTree, Sign};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    /// Both the induced subgraph on `witness` and its complement are connected.
    #[error("not a cograph: prime vertex set {witness:?} (0-based)")]
    NotACograph { witness: Vec<usize> },
    /// Position blocks (0-based, inclusive) that could not be merged into
    /// a common interval.
    #[error("not separable: unmergeable position blocks {blocks:?}")]
    NotSeparable { blocks: Vec<(usize, usize)> },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

/// Graph of a cotree: vertices are leaf labels, adjacent iff their lowest
/// common ancestor is decorated 1.
pub fn cograph_of_cotree(t: &Cotree) -> Graph {
    t.to_graph()
}

/// Inverse of [`cograph_of_cotree`] up to canonical child order.
pub fn cotree_of_cograph(g: &Graph) -> Result<Cotree, StructureError> {
    Cotree::from_graph(g)
}

pub fn is_cograph(g: &Graph) -> bool {
    Cotree::from_graph(g).is_ok()
}

pub fn perm_of_tree(t: &SchroderTree) -> Permutation {
    t.to_permutation()
}

pub fn tree_of_perm(p: &Permutation) -> Result<SchroderTree, StructureError> {
    SchroderTree::from_permutation(p)
}

pub fn inversion_graph(p: &Permutation) -> Graph {
    p.inversion_graph()
}

pub fn swap_decorations(t: &Cotree) -> Cotree {
    t.swapped()
}

/// Forgets the plane order, maps ⊖ to 1 and ⊕ to 0, and labels leaves by
/// their left-to-right position.
pub fn cotree_of_schroder(t: &SchroderTree) -> Cotree {
    Cotree::from_schroder(t)
}

/// Strips all whitespace from a text form.
pub(crate) fn compact(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}
