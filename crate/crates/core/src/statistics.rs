//! Tree dynamic programs for the independence number, the clique number,
//! the longest increasing subsequence and their counting polynomials.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::structures::{Cotree, CotreeNode, Decoration, Graph, Permutation, SchroderNode, SchroderTree, Sign};

/// Largest graph accepted by [`alpha_graph_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("size {n} exceeds the brute-force limit {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Polynomial in `u` with non-negative integer coefficients, lowest degree
/// first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SizePolynomial {
    coeffs: Vec<BigUint>,
}

impl SizePolynomial {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SizePolynomial { coeffs }
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// `1 + u`, the polynomial of a single vertex.
    fn atom() -> Self {
        SizePolynomial { coeffs: vec![BigUint::one(), BigUint::one()] }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return SizePolynomial { coeffs: Vec::new() };
        }
        let mut out = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        SizePolynomial::new(out)
    }
}

impl fmt::Display for SizePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for SizePolynomial {
    type Err = StatsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Ok(SizePolynomial::new(Vec::new()));
        }
        let coeffs = s
            .split(',')
            .map(|t| t.parse::<BigUint>().map_err(|_| StatsError::Parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SizePolynomial::new(coeffs))
    }
}

/// Product of many polynomials, always multiplying the two of smallest
/// degree so operand sizes stay balanced.
fn balanced_product(polys: Vec<SizePolynomial>) -> SizePolynomial {
    let mut heap: BinaryHeap<(Reverse<usize>, usize)> = BinaryHeap::new();
    let mut slots: Vec<Option<SizePolynomial>> = Vec::with_capacity(polys.len());
    for p in polys {
        heap.push((Reverse(p.coeffs.len()), slots.len()));
        slots.push(Some(p));
    }
    loop {
        let (_, a) = heap.pop().expect("product of no polynomials");
        let Some((_, b)) = heap.pop() else {
            return slots[a].take().unwrap();
        };
        let p = slots[a].take().unwrap().mul(slots[b].as_ref().unwrap());
        slots[b] = None;
        heap.push((Reverse(p.coeffs.len()), slots.len()));
        slots.push(Some(p));
    }
}

/// `1 + Σ (p_i - 1)`: choose a non-empty substructure in at most one child.
fn exclusive_sum(polys: Vec<SizePolynomial>) -> SizePolynomial {
    let len = polys.iter().map(|p| p.coeffs.len()).max().unwrap_or(1);
    let mut out = vec![BigUint::zero(); len.max(1)];
    out[0] = BigUint::one();
    for p in polys {
        for (k, c) in p.coeffs.into_iter().enumerate().skip(1) {
            out[k] += c;
        }
    }
    SizePolynomial::new(out)
}

/// Bottom-up fold over a pre-order arena: children always have larger ids
/// than their parent, so a reverse sweep is a post-order.
fn fold_cotree<T>(t: &Cotree, leaf: impl Fn() -> T, node: impl Fn(Decoration, Vec<T>) -> T) -> T {
    let mut val: Vec<Option<T>> = (0..t.nodes().len()).map(|_| None).collect();
    for v in (0..t.nodes().len()).rev() {
        val[v] = Some(match t.node(v) {
            CotreeNode::Leaf(_) => leaf(),
            CotreeNode::Internal { decoration, children } => {
                node(*decoration, children.iter().map(|&c| val[c].take().unwrap()).collect())
            }
        });
    }
    val[0].take().unwrap()
}

fn fold_schroder<T>(t: &SchroderTree, leaf: impl Fn() -> T, node: impl Fn(Sign, Vec<T>) -> T) -> T {
    let mut val: Vec<Option<T>> = (0..t.nodes().len()).map(|_| None).collect();
    for v in (0..t.nodes().len()).rev() {
        val[v] = Some(match t.node(v) {
            SchroderNode::Leaf => leaf(),
            SchroderNode::Internal { sign, children } => {
                node(*sign, children.iter().map(|&c| val[c].take().unwrap()).collect())
            }
        });
    }
    val[0].take().unwrap()
}

/// Independence number of the cograph of `t`.
pub fn alpha(t: &Cotree) -> usize {
    fold_cotree(t, || 1, |d, xs| match d {
        Decoration::Zero => xs.iter().sum(),
        Decoration::One => xs.into_iter().max().unwrap(),
    })
}

/// Clique number of the cograph of `t`.
pub fn omega(t: &Cotree) -> usize {
    fold_cotree(t, || 1, |d, xs| match d {
        Decoration::Zero => xs.into_iter().max().unwrap(),
        Decoration::One => xs.iter().sum(),
    })
}

/// Longest increasing subsequence of the permutation of `t`.
pub fn lis(t: &SchroderTree) -> usize {
    fold_schroder(t, || 1, |s, xs| match s {
        Sign::Plus => xs.iter().sum(),
        Sign::Minus => xs.into_iter().max().unwrap(),
    })
}

/// Longest decreasing subsequence of the permutation of `t`.
pub fn lds(t: &SchroderTree) -> usize {
    fold_schroder(t, || 1, |s, xs| match s {
        Sign::Plus => xs.into_iter().max().unwrap(),
        Sign::Minus => xs.iter().sum(),
    })
}

/// `Σ_k (#independent sets of size k) u^k`.
pub fn independent_set_polynomial(t: &Cotree) -> SizePolynomial {
    fold_cotree(t, SizePolynomial::atom, |d, xs| match d {
        Decoration::Zero => balanced_product(xs),
        Decoration::One => exclusive_sum(xs),
    })
}

/// `Σ_k (#increasing subsequences of length k) u^k`.
pub fn increasing_subsequence_polynomial(t: &SchroderTree) -> SizePolynomial {
    fold_schroder(t, SizePolynomial::atom, |s, xs| match s {
        Sign::Plus => balanced_product(xs),
        Sign::Minus => exclusive_sum(xs),
    })
}

/// Exact independence number by branch and bound, for `n ≤ 25`.
pub fn alpha_graph_bruteforce(g: &Graph) -> Result<usize, StatsError> {
    let n = g.n();
    if n > BRUTEFORCE_LIMIT {
        return Err(StatsError::SizeLimitExceeded { n, limit: BRUTEFORCE_LIMIT });
    }
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w)).collect();
    fn go(cand: u32, size: usize, best: &mut usize, nbr: &[u32]) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(cand & !(1 << v) & !nbr[v], size + 1, best, nbr);
        // Excluding v only helps if some neighbour of v can be taken instead.
        if cand & nbr[v] != 0 {
            go(cand & !(1 << v), size, best, nbr);
        }
    }
    let mut best = 0;
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    go(all, 0, &mut best, &nbr);
    Ok(best)
}

/// Exact clique number, for `n ≤ 25`.
pub fn omega_graph_bruteforce(g: &Graph) -> Result<usize, StatsError> {
    if g.n() > BRUTEFORCE_LIMIT {
        return Err(StatsError::SizeLimitExceeded { n: g.n(), limit: BRUTEFORCE_LIMIT });
    }
    alpha_graph_bruteforce(&g.complement())
}

/// Longest increasing subsequence by patience sorting.
pub fn lis_of_permutation(p: &Permutation) -> usize {
    let mut tails: Vec<usize> = Vec::new();
    for &v in p.values() {
        let i = tails.partition_point(|&t| t < v);
        if i == tails.len() {
            tails.push(v);
        } else {
            tails[i] = v;
        }
    }
    tails.len()
}
