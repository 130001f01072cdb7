use super::{check_p, BrownianError};
use crate::sampling::{quantile, RandomSource};

/// A finite sample of a law on `[0, 1]`, kept sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self, BrownianError> {
        if samples.is_empty() {
            return Err(BrownianError::InvalidParameter("empty distribution".into()));
        }
        if let Some(x) = samples.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(BrownianError::InvalidParameter(format!("sample {x} outside [0, 1]")));
        }
        samples.sort_by(f64::total_cmp);
        Ok(EmpiricalDistribution { samples })
    }

    pub fn dirac(x: f64, particles: usize) -> Result<Self, BrownianError> {
        Self::new(vec![x; particles.max(1)])
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample standard deviation (0 for a single particle).
    pub fn std_dev(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        (self.samples.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64).sqrt()
    }

    pub fn median(&self) -> f64 {
        quantile(&self.samples, 0.5)
    }

    /// 1-Wasserstein distance `∫ |F − G|`, computed from the two sorted
    /// samples; for equal sizes it is the mean absolute difference.
    pub fn wasserstein(&self, other: &Self) -> f64 {
        let (a, b) = (&self.samples, &other.samples);
        if a.len() == b.len() {
            return a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64;
        }
        let (wa, wb) = (1.0 / a.len() as f64, 1.0 / b.len() as f64);
        let (mut i, mut j) = (0, 0);
        let (mut fa, mut fb, mut total) = (0.0, 0.0, 0.0);
        let mut x = a[0].min(b[0]);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&p), Some(&q)) => p.min(q),
                (Some(&p), None) => p,
                (None, Some(&q)) => q,
                (None, None) => unreachable!(),
            };
            total += (fa - fb as f64).abs() * (next - x);
            x = next;
            while i < a.len() && a[i] == x {
                fa += wa;
                i += 1;
            }
            while j < b.len() && b[j] == x {
                fb += wb;
                j += 1;
            }
        }
        total
    }
}

/// Symmetric Dirichlet(½, ½, ½) triple, from three Gamma(½) variables
/// drawn as halved squared normals.
pub fn dirichlet_half(rng: &mut RandomSource) -> [f64; 3] {
    loop {
        let g = [0; 3].map(|_| {
            let z = rng.standard_normal();
            0.5 * z * z
        });
        let sum = g[0] + g[1] + g[2];
        if sum > 0.0 {
            return g.map(|x| x / sum);
        }
    }
}

/// One application of `Φ_p`: `B Y₁ + (1 − B) Y₀` with `B ~ Bernoulli(1 − p)`,
/// `Y₀ = Δ₀X₀ + Δ₁X₁ + Δ₂X₂` and `Y₁ = Δ₀X₀ + max(Δ₁X₁, Δ₂X₂)`.
pub fn phi_p_apply(
    dist: &EmpiricalDistribution,
    p: f64,
    particles: usize,
    rng: &mut RandomSource,
) -> Result<EmpiricalDistribution, BrownianError> {
    check_p(p)?;
    if particles == 0 {
        return Err(BrownianError::InvalidParameter("need at least one particle".into()));
    }
    let xs = dist.samples();
    let out = (0..particles)
        .map(|_| {
            let x = [0; 3].map(|_| xs[rng.uniform_index(xs.len())]);
            let d = dirichlet_half(rng);
            phi_particle(x, d, rng.bernoulli(1.0 - p))
        })
        .collect();
    EmpiricalDistribution::new(out)
}

/// `Y₁` if `b`, else `Y₀`, clamped to `[0, 1]`.
pub fn phi_particle(x: [f64; 3], d: [f64; 3], b: bool) -> f64 {
    let y = if b {
        d[0] * x[0] + (d[1] * x[1]).max(d[2] * x[2])
    } else {
        // Written relative to X₀ so that a constant law maps to itself
        // exactly, whatever the rounding of Δ₀ + Δ₁ + Δ₂.
        x[0] + d[1] * (x[1] - x[0]) + d[2] * (x[2] - x[0])
    };
    y.clamp(0.0, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiSummary {
    pub iter: usize,
    pub mean: f64,
    pub median: f64,
    pub std_dev: f64,
    /// Distance to the previous iterate (the start `δ₁` for `iter = 1`).
    pub w1_prev: f64,
}

/// Iterates `Φ_p` from `δ₁`.
pub fn phi_p_iterate(p: f64, iterations: usize, particles: usize, seed: u64) -> Result<Vec<PhiSummary>, BrownianError> {
    let mut rng = RandomSource::from_seed(seed);
    let mut cur = EmpiricalDistribution::dirac(1.0, particles)?;
    let mut out = Vec::with_capacity(iterations);
    for iter in 1..=iterations {
        let next = phi_p_apply(&cur, p, particles, &mut rng)?;
        out.push(PhiSummary {
            iter,
            mean: next.mean(),
            median: next.median(),
            std_dev: next.std_dev(),
            w1_prev: next.wasserstein(&cur),
        });
        cur = next;
    }
    Ok(out)
}

pub fn phi_csv(p: f64, seed: u64, rows: &[PhiSummary]) -> String {
    let mut out = format!("# seed={seed} p={p}\niter,mean,median,w1_prev\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.iter, r.mean, r.median, r.w1_prev));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points() {
        let mut rng = RandomSource::from_seed(2);
        let zero = EmpiricalDistribution::dirac(0.0, 1000).unwrap();
        let one = EmpiricalDistribution::dirac(1.0, 1000).unwrap();
        assert!(phi_p_apply(&zero, 0.3, 1000, &mut rng).unwrap().samples().iter().all(|&x| x == 0.0));
        assert!(phi_p_apply(&one, 0.5, 1000, &mut rng).unwrap().samples().iter().all(|&x| x <= 1.0));
        for _ in 0..10_000 {
            let d = dirichlet_half(&mut rng);
            assert_eq!(phi_particle([1.0; 3], d, false), 1.0);
            assert_eq!(phi_particle([0.0; 3], d, true), 0.0);
        }
    }

    #[test]
    fn wasserstein_general_matches_equal_size() {
        let a = EmpiricalDistribution::new(vec![0.1, 0.4, 0.9]).unwrap();
        let b = EmpiricalDistribution::new(vec![0.2, 0.2, 0.5]).unwrap();
        let mut bb = b.samples().to_vec();
        bb.extend_from_slice(b.samples());
        let b2 = EmpiricalDistribution::new(bb).unwrap();
        assert!((a.wasserstein(&b) - a.wasserstein(&b2)).abs() < 1e-12);
        assert!((a.wasserstein(&b) - (0.1 + 0.2 + 0.4) / 3.0).abs() < 1e-12);
        assert_eq!(a.wasserstein(&a), 0.0);
    }

    #[test]
    fn dirichlet_on_simplex() {
        let mut rng = RandomSource::from_seed(4);
        for _ in 0..1000 {
            let d = dirichlet_half(&mut rng);
            assert!(d.iter().all(|&x| (0.0..=1.0).contains(&x)));
            assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(EmpiricalDistribution::new(vec![]).is_err());
        assert!(EmpiricalDistribution::new(vec![1.5]).is_err());
        let d = EmpiricalDistribution::dirac(1.0, 5).unwrap();
        assert!(phi_p_apply(&d, 1.0, 5, &mut RandomSource::from_seed(0)).is_err());
    }
}
