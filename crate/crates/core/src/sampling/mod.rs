//! Exact-uniform random cotrees and Schröder trees of a given size, and
//! Monte-Carlo tables of the independence number and the longest
//! increasing subsequence.

mod montecarlo;
mod random;
mod tables;

pub use montecarlo::{monte_carlo, monte_carlo_objects, quantile, McRecord, McSummary, McTable};
pub use random::RandomSource;
pub use tables::CountTables;

use serde::Serialize;
use thiserror::Error;

use crate::structures::{Cotree, CotreeNode, Decoration, Graph, Permutation, SchroderNode, SchroderTree, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Cograph,
    Separable,
}

impl std::str::FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cograph" => Ok(Model::Cograph),
            "separable" => Ok(Model::Separable),
            _ => Err(format!("unknown model {s:?} (expected cograph or separable)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplingError {
    #[error("size {n} exceeds the count tables (built up to {max_n})")]
    TableTooSmall { n: usize, max_n: usize },
    #[error("count tables were built for the other model")]
    ModelMismatch,
    #[error("size must be at least 1")]
    EmptySize,
}

fn random_sign_bit(rng: &mut RandomSource) -> bool {
    rng.uniform_index(2) == 1
}

/// Uniform labeled cotree on `n` leaves.
pub fn sample_cotree(n: usize, tables: &CountTables, rng: &mut RandomSource) -> Result<Cotree, SamplingError> {
    tables::check_tables(tables, Model::Cograph, n)?;
    if n == 1 {
        return Ok(Cotree::leaf());
    }
    let root_dec = if random_sign_bit(rng) { Decoration::One } else { Decoration::Zero };
    let mut nodes: Vec<CotreeNode> = vec![CotreeNode::Leaf(0)];
    let mut work: Vec<(Vec<usize>, Decoration, usize)> = vec![((0..n).collect(), root_dec, 0)];
    while let Some((mut labels, dec, slot)) = work.pop() {
        if labels.len() == 1 {
            nodes[slot] = CotreeNode::Leaf(labels[0]);
            continue;
        }
        let mut children = Vec::new();
        let mut need = 2usize;
        while !labels.is_empty() {
            let r = labels.len();
            let m = tables.sample_block_size(r, need, rng);
            need = need.saturating_sub(1);
            // The distinguished label is the last one; its m-1 companions are
            // a uniform subset of the others, moved just before it.
            let x = labels.pop().unwrap();
            let others = labels.len();
            for t in 0..m - 1 {
                let i = rng.uniform_index(others - t);
                labels.swap(i, others - 1 - t);
            }
            let mut block = labels.split_off(others - (m - 1));
            block.push(x);
            let id = nodes.len();
            nodes.push(CotreeNode::Leaf(0));
            children.push(id);
            work.push((block, dec.flip(), id));
        }
        nodes[slot] = CotreeNode::Internal { decoration: dec, children };
    }
    Ok(Cotree::from_nodes(nodes, 0).expect("sampler builds valid cotrees"))
}

/// Uniform Schröder tree on `n` leaves.
pub fn sample_schroder(n: usize, tables: &CountTables, rng: &mut RandomSource) -> Result<SchroderTree, SamplingError> {
    tables::check_tables(tables, Model::Separable, n)?;
    if n == 1 {
        return Ok(SchroderTree::leaf());
    }
    let root_sign = if random_sign_bit(rng) { Sign::Minus } else { Sign::Plus };
    let mut nodes: Vec<SchroderNode> = vec![SchroderNode::Leaf];
    let mut work: Vec<(usize, Sign, usize)> = vec![(n, root_sign, 0)];
    while let Some((size, sign, slot)) = work.pop() {
        if size == 1 {
            continue;
        }
        let mut children = Vec::new();
        let (mut left, mut need) = (size, 2usize);
        while left > 0 {
            let m = tables.sample_block_size(left, need, rng);
            need = need.saturating_sub(1);
            left -= m;
            let id = nodes.len();
            nodes.push(SchroderNode::Leaf);
            children.push(id);
            work.push((m, sign.flip(), id));
        }
        nodes[slot] = SchroderNode::Internal { sign, children };
    }
    Ok(SchroderTree::from_nodes(nodes, 0).expect("sampler builds valid trees"))
}

pub fn sample_cograph(n: usize, tables: &CountTables, rng: &mut RandomSource) -> Result<Graph, SamplingError> {
    Ok(sample_cotree(n, tables, rng)?.to_graph())
}

pub fn sample_separable(n: usize, tables: &CountTables, rng: &mut RandomSource) -> Result<Permutation, SamplingError> {
    Ok(sample_schroder(n, tables, rng)?.to_permutation())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_checks() {
        let t = CountTables::build(Model::Cograph, 5);
        let mut rng = RandomSource::from_seed(0);
        assert_eq!(sample_cotree(6, &t, &mut rng), Err(SamplingError::TableTooSmall { n: 6, max_n: 5 }));
        assert_eq!(sample_schroder(3, &t, &mut rng), Err(SamplingError::ModelMismatch));
        assert_eq!(sample_cotree(0, &t, &mut rng), Err(SamplingError::EmptySize));
        assert_eq!(sample_cotree(1, &t, &mut rng).unwrap().to_string(), "L1");
    }

    #[test]
    fn samples_are_valid_and_reproducible() {
        let t = CountTables::build(Model::Cograph, 300);
        let s = CountTables::build(Model::Separable, 300);
        for seed in 0..5 {
            let a = sample_cotree(300, &t, &mut RandomSource::from_seed(seed)).unwrap();
            let b = sample_cotree(300, &t, &mut RandomSource::from_seed(seed)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.n(), 300);
            let p = sample_schroder(300, &s, &mut RandomSource::from_seed(seed)).unwrap();
            assert_eq!(p.n(), 300);
            assert_eq!(SchroderTree::from_permutation(&p.to_permutation()).unwrap(), p);
        }
    }
}
