use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{sample_cotree, sample_schroder, CountTables, Model, RandomSource, SamplingError};
use crate::statistics::{alpha, lds, lis, omega};

/// One replication: the statistic (α or LIS), its dual (ω or LDS) and the
/// statistic divided by n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McRecord {
    pub n: usize,
    pub rep: usize,
    pub stat: usize,
    pub dual: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McSummary {
    pub n: usize,
    pub reps: usize,
    pub mean: f64,
    pub median: f64,
    /// `(q, value)` pairs for the requested quantiles of `stat / n`.
    pub quantiles: Vec<(f64, f64)>,
    /// Replications where `max(stat, dual) < ⌈√n⌉`; always 0 for perfect
    /// graphs, kept as a sanity check.
    pub sqrt_bound_violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McTable {
    pub model: Model,
    pub seed: u64,
    pub records: Vec<McRecord>,
    pub summaries: Vec<McSummary>,
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Replication `rep` at size index `i` uses worker stream `i·reps + rep`, so
/// results do not depend on scheduling or thread count.
pub fn monte_carlo(model: Model, sizes: &[usize], reps: usize, quantiles: &[f64], seed: u64) -> Result<McTable, SamplingError> {
    let max_n = sizes.iter().copied().max().unwrap_or(1);
    let tables = CountTables::build(model, max_n);
    let mut records = Vec::with_capacity(sizes.len() * reps);
    let mut summaries = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let recs: Vec<McRecord> = (0..reps)
            .into_par_iter()
            .map(|rep| {
                let mut rng = RandomSource::for_worker(seed, (i * reps + rep) as u64);
                let (stat, dual) = match model {
                    Model::Cograph => {
                        let t = sample_cotree(n, &tables, &mut rng)?;
                        (alpha(&t), omega(&t))
                    }
                    Model::Separable => {
                        let t = sample_schroder(n, &tables, &mut rng)?;
                        (lis(&t), lds(&t))
                    }
                };
                Ok(McRecord { n, rep, stat, dual, ratio: stat as f64 / n as f64 })
            })
            .collect::<Result<_, SamplingError>>()?;
        let mut ratios: Vec<f64> = recs.iter().map(|r| r.ratio).collect();
        ratios.sort_by(f64::total_cmp);
        let bound = ceil_sqrt(n);
        summaries.push(McSummary {
            n,
            reps,
            mean: if reps == 0 { f64::NAN } else { ratios.iter().sum::<f64>() / reps as f64 },
            median: if reps == 0 { f64::NAN } else { quantile(&ratios, 0.5) },
            quantiles: quantiles
                .iter()
                .map(|&q| (q, if reps == 0 { f64::NAN } else { quantile(&ratios, q) }))
                .collect(),
            sqrt_bound_violations: recs.iter().filter(|r| r.stat.max(r.dual) < bound).count(),
        });
        records.extend(recs);
    }
    Ok(McTable { model, seed, records, summaries })
}

/// Serialised samples (cotree or Schröder tree text) for the same worker
/// streams as [`monte_carlo`], as `(n, rep, text)`.
pub fn monte_carlo_objects(model: Model, sizes: &[usize], reps: usize, seed: u64) -> Result<Vec<(usize, usize, String)>, SamplingError> {
    let max_n = sizes.iter().copied().max().unwrap_or(1);
    let tables = CountTables::build(model, max_n);
    let mut out = Vec::with_capacity(sizes.len() * reps);
    for (i, &n) in sizes.iter().enumerate() {
        let objs: Vec<(usize, usize, String)> = (0..reps)
            .into_par_iter()
            .map(|rep| {
                let mut rng = RandomSource::for_worker(seed, (i * reps + rep) as u64);
                let text = match model {
                    Model::Cograph => sample_cotree(n, &tables, &mut rng)?.to_string(),
                    Model::Separable => sample_schroder(n, &tables, &mut rng)?.to_string(),
                };
                Ok((n, rep, text))
            })
            .collect::<Result<_, SamplingError>>()?;
        out.extend(objs);
    }
    Ok(out)
}

impl McTable {
    fn names(&self) -> (&'static str, &'static str) {
        match self.model {
            Model::Cograph => ("alpha", "omega"),
            Model::Separable => ("lis", "lds"),
        }
    }

    /// Per-replication CSV, `n,rep,alpha,omega,alpha_over_n` (or the LIS
    /// analogue), after a `# seed=` comment line.
    pub fn records_csv(&self) -> String {
        let (s, d) = self.names();
        let mut out = format!("# seed={}\nn,rep,{s},{d},{s}_over_n\n", self.seed);
        for r in &self.records {
            writeln!(out, "{},{},{},{},{}", r.n, r.rep, r.stat, r.dual, r.ratio).unwrap();
        }
        out
    }

    /// One row per size: mean, median, then each requested quantile.
    pub fn summary_csv(&self) -> String {
        let mut out = format!("# seed={}\nn,reps,mean,median", self.seed);
        if let Some(first) = self.summaries.first() {
            for (q, _) in &first.quantiles {
                write!(out, ",q{q}").unwrap();
            }
        }
        out.push_str(",sqrt_bound_violations\n");
        for s in &self.summaries {
            write!(out, "{},{},{},{}", s.n, s.reps, s.mean, s.median).unwrap();
            for (_, v) in &s.quantiles {
                write!(out, ",{v}").unwrap();
            }
            writeln!(out, ",{}", s.sqrt_bound_violations).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&xs, 0.5), 2.5);
        assert_eq!(quantile(&xs, 0.0), 1.0);
        assert_eq!(quantile(&xs, 1.0), 4.0);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(17), 5);
        assert_eq!(ceil_sqrt(1), 1);
    }

    #[test]
    fn table_is_deterministic() {
        let a = monte_carlo(Model::Cograph, &[20, 40], 16, &[0.1, 0.9], 9).unwrap();
        let b = monte_carlo(Model::Cograph, &[20, 40], 16, &[0.1, 0.9], 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records.len(), 32);
        assert!(a.summaries.iter().all(|s| s.sqrt_bound_violations == 0));
        let csv = a.records_csv();
        assert!(csv.starts_with("# seed=9\nn,rep,alpha,omega,alpha_over_n\n"));
        assert!(a.summary_csv().contains("n,reps,mean,median,q0.1,q0.9"));
    }
}
