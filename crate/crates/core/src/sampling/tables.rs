//! Count tables for the recursive method.
//!
//! A tree of size `n ≥ 2` with fixed root sign is a collection of at least
//! two blocks, each a leaf (weight 1) or a tree of opposite sign (weight
//! `t[m]`). `A[n][j]` counts collections of total size `n` with at least `j`
//! blocks, so `t[n] = A[n][2]`. Cographs use sets of labeled blocks
//! (`A[n][j] = Σ_m C(n-1, m-1) c_m A[n-m][j-1]`, splitting off the block of a
//! distinguished label); separable permutations use sequences
//! (`A[n][j] = Σ_m c_m A[n-m][j-1]`, splitting off the first child).
//!
//! Block sizes are drawn exactly with probability `weight/A[n][j]`. A
//! double-precision copy of the tables with a rigorous relative error bound
//! settles almost every comparison; the rare ambiguous one is redone in
//! exact integer arithmetic, so the samplers are exactly uniform.

use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::random::{LazyUniform, RandomSource};
use super::{Model, SamplingError};

const U: f64 = f64::EPSILON / 2.0;

pub struct CountTables {
    model: Model,
    max_n: usize,
    float: FloatTables,
    exact: Mutex<ExactTables>,
}

struct FloatTables {
    /// Block weights, rescaled: `γ_m = c_m λ^m` (divided by `m!` for cographs).
    gamma: Vec<f64>,
    /// Rescaled `A[r][j]`, same normalisation.
    a: Vec<[f64; 3]>,
    /// Bound on the relative error of any entry of `gamma` and `a`.
    err: f64,
}

struct ExactTables {
    c: Vec<BigUint>,
    a: Vec<[BigUint; 3]>,
}

/// Neumaier-compensated sum of non-negative terms; relative error ≤ 2u + n u².
fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut comp) = (0.0f64, 0.0f64);
    for x in terms {
        let t = s + x;
        comp += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + comp
}

impl FloatTables {
    fn build(model: Model, max_n: usize) -> Self {
        let lambda = match model {
            // Any positive scale works; these keep the entries O(1).
            Model::Cograph => 2.0 * std::f64::consts::LN_2 - 1.0,
            Model::Separable => 3.0 - 2.0 * std::f64::consts::SQRT_2,
        };
        let mut gamma = vec![0.0; max_n + 1];
        let mut egamma = vec![0.0; max_n + 1];
        let mut a = vec![[0.0; 3]; max_n + 1];
        let mut ea = vec![[0.0f64; 3]; max_n + 1];
        a[0] = [1.0, 0.0, 0.0];
        for r in 1..=max_n {
            // A[r][2] involves only blocks smaller than r, and fixes c_r.
            for j in [2usize, 1, 0] {
                let jp = j.saturating_sub(1);
                let top = if j == 2 { r - 1 } else { r };
                let term = |m: usize| match model {
                    Model::Cograph => m as f64 * gamma[m] * a[r - m][jp],
                    Model::Separable => gamma[m] * a[r - m][jp],
                };
                let s = compensated_sum((1..=top).map(term));
                a[r][j] = match model {
                    Model::Cograph => s / r as f64,
                    Model::Separable => s,
                };
                let worst = (1..=top)
                    .filter(|&m| a[r - m][jp] > 0.0)
                    .map(|m| egamma[m] + ea[r - m][jp])
                    .fold(0.0, f64::max);
                ea[r][j] = (worst + 6.0 * U + 4.0 * r as f64 * U * U) * (1.0 + 1e-9);
                if j == 2 {
                    (gamma[r], egamma[r]) = if r == 1 { (lambda, 0.0) } else { (a[r][2], ea[r][2]) };
                }
            }
        }
        let err = egamma.iter().chain(ea.iter().flatten()).fold(0.0f64, |m, &e| m.max(e));
        FloatTables { gamma, a, err }
    }
}

impl ExactTables {
    fn new() -> Self {
        ExactTables { c: vec![BigUint::zero()], a: vec![[BigUint::one(), BigUint::zero(), BigUint::zero()]] }
    }

    fn extend(&mut self, model: Model, n: usize) {
        while self.a.len() <= n {
            let r = self.a.len();
            let binom = binomial_row(r - 1);
            let mut row: [BigUint; 3] = Default::default();
            for j in [2usize, 1, 0] {
                let jp = j.saturating_sub(1);
                let top = if j == 2 { r - 1 } else { r };
                let mut s = BigUint::zero();
                for m in 1..=top {
                    let rest = &self.a[r - m][jp];
                    if rest.is_zero() {
                        continue;
                    }
                    let mut t = &self.c[m] * rest;
                    if model == Model::Cograph {
                        t *= &binom[m - 1];
                    }
                    s += t;
                }
                row[j] = s;
                if j == 2 {
                    self.c.push(if r == 1 { BigUint::one() } else { row[2].clone() });
                }
            }
            self.a.push(row);
        }
    }
}

fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for i in 1..=n {
        c = c * BigUint::from(n + 1 - i) / BigUint::from(i);
        row.push(c.clone());
    }
    row
}

impl CountTables {
    pub fn build(model: Model, max_n: usize) -> Self {
        let float = FloatTables::build(model, max_n);
        let mut exact = ExactTables::new();
        exact.extend(model, max_n.min(64));
        CountTables { model, max_n, float, exact: Mutex::new(exact) }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Bound on the relative error of the floating-point tables.
    pub fn float_error_bound(&self) -> f64 {
        self.float.err
    }

    fn with_exact<T>(&self, n: usize, f: impl FnOnce(&ExactTables) -> T) -> T {
        let mut ex = self.exact.lock().unwrap();
        ex.extend(self.model, n);
        f(&ex)
    }

    /// `A[n][j]`.
    pub fn block_count(&self, n: usize, j: usize) -> BigUint {
        assert!(j <= 2);
        self.with_exact(n, |ex| ex.a[n][j].clone())
    }

    /// Trees of size `n` with a fixed root sign (`1` for the leaf).
    pub fn tree_count(&self, n: usize) -> BigUint {
        match n {
            0 => BigUint::zero(),
            1 => BigUint::one(),
            _ => self.block_count(n, 2),
        }
    }

    /// Labeled cographs, or separable permutations, of size `n`.
    pub fn structure_count(&self, n: usize) -> BigUint {
        match n {
            0 => BigUint::zero(),
            1 => BigUint::one(),
            _ => self.tree_count(n) * BigUint::from(2u32),
        }
    }

    fn exact_weight(&self, ex: &ExactTables, binom: &[BigUint], r: usize, jp: usize, m: usize) -> BigUint {
        let mut w = &ex.c[m] * &ex.a[r - m][jp];
        if self.model == Model::Cograph {
            w *= &binom[m - 1];
        }
        w
    }

    /// Exact check of `U < (Σ_{m∈range} w_m) / A[r][j]`.
    fn exact_less(&self, u: &mut LazyUniform, rng: &mut RandomSource, r: usize, j: usize, range: std::ops::RangeInclusive<usize>, complement: bool) -> bool {
        let (num, den) = self.with_exact(r, |ex| {
            let binom = if self.model == Model::Cograph { binomial_row(r - 1) } else { Vec::new() };
            let jp = j.saturating_sub(1);
            let mut s = BigUint::zero();
            for m in range {
                s += self.exact_weight(ex, &binom, r, jp, m);
            }
            let total = ex.a[r][j].clone();
            if complement {
                (&total - s, total)
            } else {
                (s, total)
            }
        });
        u.less_than(&num, &den, rng)
    }

    fn prob(&self, r: usize, j: usize, m: usize) -> f64 {
        let f = &self.float;
        let jp = j.saturating_sub(1);
        match self.model {
            Model::Cograph => (m as f64 * f.gamma[m] * f.a[r - m][jp]) / (r as f64 * f.a[r][j]),
            Model::Separable => (f.gamma[m] * f.a[r - m][jp]) / f.a[r][j],
        }
    }

    /// Size of the next block when `r` atoms remain and at least `j` more
    /// blocks are required; probability `w_m / A[r][j]`.
    pub fn sample_block_size(&self, r: usize, j: usize, rng: &mut RandomSource) -> usize {
        debug_assert!(r >= 1 && r <= self.max_n && j <= 2 && !(j == 2 && r < 2));
        let mut u = LazyUniform::new(rng);
        let (lo, hi) = u.bounds();
        let (mut front, mut back) = (1usize, r);
        let (mut fcum, mut bcum) = (0.0f64, 0.0f64);
        let mut scanned = 0usize;
        let margin = |k: usize| 4.0 * (3.0 * self.float.err + (k as f64 + 10.0) * U);
        loop {
            if front == back {
                return front;
            }
            // Is U below the cumulative mass of 1..=front?
            fcum += self.prob(r, j, front);
            scanned += 1;
            let d = margin(scanned);
            let below = if hi <= fcum - d {
                true
            } else if lo >= fcum + d {
                false
            } else {
                self.exact_less(&mut u, rng, r, j, 1..=front, false)
            };
            if below {
                return front;
            }
            front += 1;
            if front == back {
                return front;
            }
            // Is U at or above 1 − mass of back..=r?
            bcum += self.prob(r, j, back);
            scanned += 1;
            let t = 1.0 - bcum;
            let d = margin(scanned);
            let above = if lo >= t + d {
                true
            } else if hi <= t - d {
                false
            } else {
                !self.exact_less(&mut u, rng, r, j, back..=r, true)
            };
            if above {
                return back;
            }
            back -= 1;
        }
    }

    /// Reference implementation: exact inverse transform on a uniform
    /// integer below `A[r][j]`.
    pub fn sample_block_size_exact(&self, r: usize, j: usize, rng: &mut RandomSource) -> usize {
        self.with_exact(r, |ex| {
            let binom = if self.model == Model::Cograph { binomial_row(r - 1) } else { Vec::new() };
            let jp = j.saturating_sub(1);
            let x = rng.uniform_below(&ex.a[r][j]);
            let mut acc = BigUint::zero();
            for m in 1..=r {
                acc += self.exact_weight(ex, &binom, r, jp, m);
                if x < acc {
                    return m;
                }
            }
            unreachable!("weights sum to the total")
        })
    }
}

pub(crate) fn check_tables(tables: &CountTables, model: Model, n: usize) -> Result<(), SamplingError> {
    if tables.model != model {
        return Err(SamplingError::ModelMismatch);
    }
    if n == 0 {
        return Err(SamplingError::EmptySize);
    }
    if n > tables.max_n {
        return Err(SamplingError::TableTooSmall { n, max_n: tables.max_n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{count_labeled_cographs, count_separable};

    #[test]
    fn exact_counts() {
        let t = CountTables::build(Model::Cograph, 8);
        let l: Vec<u64> = (1..=6).map(|n| t.tree_count(n).try_into().unwrap()).collect();
        assert_eq!(l, [1, 1, 4, 26, 236, 2752]);
        for n in 1..=8 {
            assert_eq!(t.structure_count(n), count_labeled_cographs(n).unwrap());
            let a2 = t.block_count(n, 2);
            assert_eq!(t.tree_count(n), if n == 1 { BigUint::one() } else { a2 });
        }
        let s = CountTables::build(Model::Separable, 9);
        for n in 1..=9 {
            assert_eq!(s.structure_count(n), count_separable(n).unwrap());
        }
        // Beyond the eager range the exact tables extend lazily.
        let big = CountTables::build(Model::Separable, 70);
        assert_eq!(big.structure_count(70), count_separable(70).unwrap());
    }

    #[test]
    fn float_tables_match_exact() {
        for model in [Model::Cograph, Model::Separable] {
            let t = CountTables::build(model, 60);
            assert!(t.float_error_bound() < 1e-12);
            for r in 2..=60 {
                for j in 0..=2 {
                    let total: f64 = (1..=r).map(|m| t.prob(r, j, m)).sum();
                    if !(j == 2 && r < 2) {
                        assert!((total - 1.0).abs() < 1e-12, "{model:?} r={r} j={j} {total}");
                    }
                }
            }
        }
    }

    #[test]
    fn block_size_distribution_matches_exact_sampler() {
        let t = CountTables::build(Model::Cograph, 10);
        let mut rng = RandomSource::from_seed(5);
        let mut fast = [0usize; 11];
        let mut slow = [0usize; 11];
        for _ in 0..20000 {
            fast[t.sample_block_size(10, 2, &mut rng)] += 1;
            slow[t.sample_block_size_exact(10, 2, &mut rng)] += 1;
        }
        for m in 1..=10 {
            let p = t.prob(10, 2, m);
            let sd = (20000.0 * p * (1.0 - p)).sqrt().max(1.0);
            assert!((fast[m] as f64 - 20000.0 * p).abs() < 5.0 * sd, "{m}: {fast:?}");
            assert!((slow[m] as f64 - 20000.0 * p).abs() < 5.0 * sd, "{m}: {slow:?}");
        }
    }
}
