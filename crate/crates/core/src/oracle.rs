//! Brute-force ground truth at small sizes. Nothing here goes through
//! cotrees, Schröder trees or generating functions: graphs are edge
//! bitmasks, patterns and subsets are checked by exhaustive search.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::sampling::Model;
use crate::series::{Rational, TruncatedBiSeries};
use crate::structures::{Graph, Permutation};

pub const COGRAPH_LIMIT: usize = 5;
pub const SEPARABLE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("size {n} exceeds the exhaustive limit {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
}

fn check(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::SizeLimitExceeded { n, limit })
    } else {
        Ok(())
    }
}

/// Every object of one size.
#[derive(Clone, Debug, PartialEq)]
pub struct ExhaustiveCatalog<T> {
    pub n: usize,
    pub items: Vec<T>,
}

/// Adjacency rows as bitmasks for the graph with edge set `mask` over the
/// pairs `(i, j)`, `i < j`, in lexicographic order.
fn rows_of_mask(n: usize, mask: u64) -> Vec<u32> {
    let mut rows = vec![0u32; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    rows
}

/// A 4-vertex induced subgraph is a `P₄` iff it has 3 edges and degrees
/// 1, 1, 2, 2.
fn has_induced_p4(rows: &[u32]) -> bool {
    let n = rows.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let set = (1u32 << a) | (1 << b) | (1 << c) | (1 << d);
                    let mut degs: Vec<u32> = [a, b, c, d].iter().map(|&v| (rows[v] & set).count_ones()).collect();
                    degs.sort_unstable();
                    if degs == [1, 1, 2, 2] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn graph_of_rows(rows: &[u32]) -> Graph {
    let n = rows.len();
    let edges = (0..n).flat_map(|i| (i + 1..n).filter(move |&j| rows[i] >> j & 1 == 1).map(move |j| (i, j)));
    Graph::from_edges(n, edges).expect("valid edges")
}

fn cograph_rows(n: usize) -> Vec<Vec<u32>> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs)
        .into_par_iter()
        .map(|mask| rows_of_mask(n, mask))
        .filter(|rows| !has_induced_p4(rows))
        .collect()
}

/// All labeled `P₄`-free graphs on `n ≤ 5` vertices.
pub fn enumerate_cographs(n: usize) -> Result<ExhaustiveCatalog<Graph>, OracleError> {
    check(n, COGRAPH_LIMIT)?;
    let items = cograph_rows(n).iter().map(|r| graph_of_rows(r)).collect();
    Ok(ExhaustiveCatalog { n, items })
}

/// 0-based values of all permutations of size `n`, in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

fn contains_2413_or_3142(v: &[usize]) -> bool {
    let n = v.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let (w, x, y, z) = (v[a], v[b], v[c], v[d]);
                    // 2413: y < w < z < x;  3142: x < z < w < y
                    if (y < w && w < z && z < x) || (x < z && z < w && w < y) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn separable_values(n: usize) -> Vec<Vec<usize>> {
    all_permutations(n).into_par_iter().filter(|v| !contains_2413_or_3142(v)).collect()
}

/// All permutations of size `n ≤ 8` avoiding 2413 and 3142.
pub fn enumerate_separable(n: usize) -> Result<ExhaustiveCatalog<Permutation>, OracleError> {
    check(n, SEPARABLE_LIMIT)?;
    let items = separable_values(n)
        .into_iter()
        .map(|v| Permutation::new(v.into_iter().map(|x| x + 1).collect()).expect("valid permutation"))
        .collect();
    Ok(ExhaustiveCatalog { n, items })
}

fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0..1u32 << n).filter(move |s| s.count_ones() as usize == k)
}

fn average(total: u64, count: usize) -> Rational {
    Rational::new(BigInt::from(total), BigInt::from(count))
}

/// Mean number of independent `k`-sets over all cographs on `n` vertices.
pub fn oracle_expected_x(n: usize, k: usize) -> Result<Rational, OracleError> {
    check(n, COGRAPH_LIMIT)?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    let catalog = cograph_rows(n);
    let total: u64 = catalog
        .iter()
        .map(|rows| k_subsets(n, k).filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || rows[v] & s == 0)).count() as u64)
        .sum();
    Ok(average(total, catalog.len()))
}

/// Mean number of increasing subsequences of length `k` over all separable
/// permutations of size `n`.
pub fn oracle_expected_z(n: usize, k: usize) -> Result<Rational, OracleError> {
    check(n, SEPARABLE_LIMIT)?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    let catalog = separable_values(n);
    let total: u64 = catalog
        .par_iter()
        .map(|v| {
            k_subsets(n, k)
                .filter(|&s| {
                    let picked: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).map(|i| v[i]).collect();
                    picked.windows(2).all(|w| w[0] < w[1])
                })
                .count() as u64
        })
        .sum();
    Ok(average(total, catalog.len()))
}

/// One disagreement between a series coefficient ratio and the oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub model: Model,
    pub n: usize,
    pub k: usize,
    pub series: String,
    pub oracle: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn ratio_of(series: &TruncatedBiSeries, n: usize, k: usize) -> Option<Rational> {
    if n > series.order() {
        return None;
    }
    let den = series.coeff(n, 0);
    if den.is_zero() {
        return None;
    }
    Some(series.coeff(n, k) / den)
}

/// Compares `[zⁿuᵏ]F / [zⁿu⁰]F` with the brute-force mean for `F = C` (cographs,
/// `n ≤ max_x`) and `F = Z` (separable permutations, `n ≤ max_z`), all `k ≤ n`.
pub fn check_equivalence(
    c: &TruncatedBiSeries,
    z: &TruncatedBiSeries,
    max_x: usize,
    max_z: usize,
) -> Result<EquivalenceReport, OracleError> {
    check(max_x, COGRAPH_LIMIT)?;
    check(max_z, SEPARABLE_LIMIT)?;
    let mut report = EquivalenceReport::default();
    let mut run = |model: Model, series: &TruncatedBiSeries, max: usize| -> Result<(), OracleError> {
        for n in 1..=max {
            for k in 0..=n {
                let oracle = match model {
                    Model::Cograph => oracle_expected_x(n, k)?,
                    Model::Separable => oracle_expected_z(n, k)?,
                };
                let got = ratio_of(series, n, k);
                report.checked += 1;
                if got.as_ref() != Some(&oracle) {
                    report.mismatches.push(Mismatch {
                        model,
                        n,
                        k,
                        series: got.map_or_else(|| "missing".into(), |q| q.to_string()),
                        oracle: oracle.to_string(),
                    });
                }
            }
        }
        Ok(())
    };
    run(Model::Cograph, c, max_x)?;
    run(Model::Separable, z, max_z)?;
    Ok(report)
}

/// Float view of an exact mean, for reports.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
