use std::collections::HashMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use super::{check_p, BlockRmq, BrownianError};
use crate::sampling::RandomSource;
use crate::statistics;
use crate::structures::{Graph, GraphBuilder};
use crate::structures::Cotree;

/// A uniform Dyck path of length `2N` together with lazily drawn signs:
/// each queried position independently gets sign 0 with probability `p`.
///
/// Signs are a deterministic function of `(sign seed, position)`, so the
/// decoration does not depend on the order of queries.
#[derive(Clone, Debug)]
pub struct DecoratedExcursion {
    rmq: BlockRmq,
    p: f64,
    sign_rng: ChaCha12Rng,
    signs: HashMap<usize, bool>,
}

/// A sampled graph, plus the number of times the `k` positions had to be
/// redrawn because two of them coincided.
#[derive(Clone, Debug, PartialEq)]
pub struct CographonSample {
    pub graph: Graph,
    pub degenerate: usize,
}

/// Uniform Dyck path with `n` up-steps: rotate a uniform arrangement of
/// `n` up- and `n+1` down-steps to start just after its first minimum
/// (cycle lemma), then drop the final down-step.
pub fn sample_excursion(n: usize, p: f64, rng: &mut RandomSource) -> Result<DecoratedExcursion, BrownianError> {
    if n == 0 {
        return Err(BrownianError::InvalidParameter("N must be at least 1".into()));
    }
    check_p(p)?;
    let len = 2 * n + 1;
    let mut up = vec![false; len];
    up[..n].iter_mut().for_each(|s| *s = true);
    for i in (1..len).rev() {
        let j = rng.uniform_index(i + 1);
        up.swap(i, j);
    }
    let (mut h, mut min, mut at) = (0i64, 0i64, 0usize);
    for (t, &s) in up.iter().enumerate() {
        h += if s { 1 } else { -1 };
        if h < min {
            min = h;
            at = t + 1;
        }
    }
    let mut path = Vec::with_capacity(2 * n + 1);
    let mut h = 0u32;
    path.push(0);
    for t in 0..len - 1 {
        if up[(at + t) % len] {
            h += 1;
        } else {
            h -= 1;
        }
        path.push(h);
    }
    let sign_rng = ChaCha12Rng::seed_from_u64(rng.next_u64());
    Ok(DecoratedExcursion { rmq: BlockRmq::new(path), p, sign_rng, signs: HashMap::new() })
}

impl DecoratedExcursion {
    /// Semi-length `N`.
    pub fn n(&self) -> usize {
        (self.rmq.len() - 1) / 2
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn path(&self) -> &[u32] {
        self.rmq.values()
    }

    pub fn max_height(&self) -> u32 {
        self.path().iter().copied().max().unwrap_or(0)
    }

    /// Leftmost position of the minimum of the path between `a` and `b`.
    pub fn argmin(&self, a: usize, b: usize) -> usize {
        self.rmq.argmin(a.min(b), a.max(b))
    }

    /// Decoration at `pos` (`true` for 1).
    pub fn sign(&mut self, pos: usize) -> bool {
        let (p, rng) = (self.p, &mut self.sign_rng);
        *self.signs.entry(pos).or_insert_with(|| {
            rng.set_word_pos(2 * pos as u128);
            let x = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            x >= p
        })
    }

    /// Number of positions whose sign has been drawn.
    pub fn signs_drawn(&self) -> usize {
        self.signs.len()
    }

    /// `Sample_k`: `k` uniform positions in `0..=2N`; vertices `i`, `j` are
    /// adjacent iff the decoration at the minimum between them is 1.
    pub fn sample_graph(&mut self, k: usize, rng: &mut RandomSource) -> Result<CographonSample, BrownianError> {
        let len = self.rmq.len();
        if k == 0 {
            return Err(BrownianError::InvalidParameter("k must be at least 1".into()));
        }
        if k > len {
            return Err(BrownianError::InvalidParameter(format!("k = {k} exceeds the 2N+1 = {len} positions")));
        }
        let mut degenerate = 0;
        let positions = loop {
            let xs: Vec<usize> = (0..k).map(|_| rng.uniform_index(len)).collect();
            let mut sorted = xs.clone();
            sorted.sort_unstable();
            if sorted.windows(2).all(|w| w[0] != w[1]) {
                break xs;
            }
            degenerate += 1;
        };
        let mut b = GraphBuilder::new(k);
        for i in 0..k {
            for j in i + 1..k {
                let m = self.argmin(positions[i], positions[j]);
                if self.sign(m) {
                    b.add_edge_unchecked(i, j);
                }
            }
        }
        Ok(CographonSample { graph: b.build(), degenerate })
    }
}

/// Replicated prefix estimates `α(Sample_k)/k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaTildeTable {
    pub k: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub values: Vec<f64>,
    pub degenerate: usize,
}

impl AlphaTildeTable {
    pub fn csv(&self) -> String {
        let mut out = format!("# seed={} p={}\nk,N,rep,alpha_over_k\n", self.seed, self.p);
        for (rep, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", self.k, self.n, rep, v));
        }
        out
    }

    pub fn median(&self) -> f64 {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        crate::sampling::quantile(&v, 0.5)
    }
}

/// Each replication draws its own excursion from worker stream `rep`.
pub fn estimate_alpha_tilde(k: usize, n: usize, p: f64, reps: usize, seed: u64) -> Result<AlphaTildeTable, BrownianError> {
    let results: Vec<Result<(f64, usize), BrownianError>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = RandomSource::for_worker(seed, rep as u64);
            let mut exc = sample_excursion(n, p, &mut rng)?;
            let s = exc.sample_graph(k, &mut rng)?;
            let t = Cotree::from_graph(&s.graph).expect("cographon samples are cographs");
            Ok((statistics::alpha(&t) as f64 / k as f64, s.degenerate))
        })
        .collect();
    let mut values = Vec::with_capacity(reps);
    let mut degenerate = 0;
    for r in results {
        let (v, d) = r?;
        values.push(v);
        degenerate += d;
    }
    Ok(AlphaTildeTable { k, n, p, seed, values, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::is_cograph;

    #[test]
    fn dyck_paths_are_valid() {
        let mut rng = RandomSource::from_seed(1);
        assert_eq!(sample_excursion(1, 0.5, &mut rng).unwrap().path(), &[0, 1, 0]);
        for n in [2, 3, 10, 1000] {
            let e = sample_excursion(n, 0.5, &mut rng).unwrap();
            let path = e.path();
            assert_eq!(path.len(), 2 * n + 1);
            assert_eq!((path[0], path[2 * n]), (0, 0));
            assert!(path.windows(2).all(|w| w[0].abs_diff(w[1]) == 1));
        }
        assert!(sample_excursion(0, 0.5, &mut rng).is_err());
        assert!(sample_excursion(3, 1.0, &mut rng).is_err());
    }

    #[test]
    fn signs_do_not_depend_on_query_order() {
        let mut a = sample_excursion(100, 0.5, &mut RandomSource::from_seed(9)).unwrap();
        let mut b = a.clone();
        let fwd: Vec<bool> = (0..50).map(|i| a.sign(i)).collect();
        let mut bwd: Vec<bool> = (0..50).rev().map(|i| b.sign(i)).collect();
        bwd.reverse();
        assert_eq!(fwd, bwd);
        assert_eq!(a.signs_drawn(), 50);
    }

    #[test]
    fn samples_are_cographs() {
        let mut rng = RandomSource::from_seed(5);
        for _ in 0..50 {
            let mut e = sample_excursion(200, 0.4, &mut rng).unwrap();
            let s = e.sample_graph(10, &mut rng).unwrap();
            assert!(is_cograph(&s.graph));
        }
        let mut e = sample_excursion(500, 0.0, &mut rng).unwrap();
        assert_eq!(e.sample_graph(5, &mut rng).unwrap().graph, Graph::complete(5));
    }

    #[test]
    fn alpha_tilde_at_p_zero() {
        let t = estimate_alpha_tilde(8, 1000, 0.0, 5, 3).unwrap();
        assert!(t.values.iter().all(|&v| v == 1.0 / 8.0));
        assert!(t.csv().starts_with("# seed=3"));
    }
}
