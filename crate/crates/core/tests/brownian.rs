use std::collections::HashMap;

use cographon::brownian::*;
use cographon::sampling::RandomSource;
use cographon::structures::is_cograph;
use rayon::prelude::*;

fn path_word(e: &DecoratedExcursion) -> String {
    e.path().windows(2).map(|w| if w[1] > w[0] { 'U' } else { 'D' }).collect()
}

#[test]
fn small_dyck_paths_are_uniform() {
    let mut rng = RandomSource::from_seed(17);
    let draws = 10_000;
    let mut counts: HashMap<String, usize> = HashMap::new();
    for _ in 0..draws {
        *counts.entry(path_word(&sample_excursion(2, 0.5, &mut rng).unwrap())).or_default() += 1;
    }
    assert_eq!(counts.len(), 2);
    let sigma = (draws as f64 * 0.25).sqrt();
    assert!((counts["UUDD"] as f64 - draws as f64 / 2.0).abs() <= 3.0 * sigma);

    let mut counts: HashMap<String, usize> = HashMap::new();
    for _ in 0..draws {
        *counts.entry(path_word(&sample_excursion(3, 0.5, &mut rng).unwrap())).or_default() += 1;
    }
    assert_eq!(counts.len(), 5);
    let p = 0.2;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    for c in counts.values() {
        assert!((*c as f64 - draws as f64 * p).abs() <= 3.5 * sigma, "{counts:?}");
    }
}

/// Mean height of a Dyck path of semi-length N is about √(πN); per unit
/// of the length-2N time axis it is √(π/2) ≈ 1.2533, the mean maximum of the
/// normalised Brownian excursion.
#[test]
fn height_scales_like_square_root() {
    let n = 10_000;
    let reps = 400;
    let mean: f64 = (0..reps)
        .into_par_iter()
        .map(|i| sample_excursion(n, 0.5, &mut RandomSource::for_worker(3, i)).unwrap().max_height() as f64)
        .sum::<f64>()
        / reps as f64;
    let per_length = mean / (2.0 * n as f64).sqrt();
    assert!((1.0..=1.6).contains(&per_length), "{per_length}");
    let per_semilength = mean / (n as f64).sqrt();
    assert!((per_semilength - std::f64::consts::PI.sqrt()).abs() < 0.1, "{per_semilength}");
}

fn edge_frequency(k: usize, p: f64, draws: u64, seed: u64) -> f64 {
    let hits: usize = (0..draws)
        .into_par_iter()
        .map(|i| {
            let mut rng = RandomSource::for_worker(seed, i);
            let mut e = sample_excursion(2_000, p, &mut rng).unwrap();
            let s = e.sample_graph(k, &mut rng).unwrap();
            s.graph.has_edge(0, 1) as usize
        })
        .sum();
    hits as f64 / draws as f64
}

#[test]
fn edge_probability_and_restriction() {
    let draws = 10_000;
    for p in [0.0, 0.3, 0.5] {
        let f2 = edge_frequency(2, p, draws, 1);
        let sigma = ((p * (1.0 - p)) / draws as f64).sqrt();
        assert!((f2 - (1.0 - p)).abs() <= 3.0 * sigma + 1e-12, "p={p}: {f2}");
        let f5 = edge_frequency(5, p, draws, 2);
        assert!((f5 - f2).abs() <= 3.0 * (2.0f64).sqrt() * sigma + 1e-12, "p={p}: {f5} vs {f2}");
    }
}

#[test]
fn samples_are_always_cographs() {
    let bad = (0..1000u64)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = RandomSource::for_worker(8, i);
            let k = 1 + (i as usize % 10);
            let mut e = sample_excursion(500, 0.5, &mut rng).unwrap();
            !is_cograph(&e.sample_graph(k, &mut rng).unwrap().graph)
        })
        .count();
    assert_eq!(bad, 0);
}

#[test]
fn coinciding_positions_are_redrawn() {
    let mut rng = RandomSource::from_seed(4);
    let mut e = sample_excursion(3, 0.5, &mut rng).unwrap();
    let mut degenerate = 0;
    for _ in 0..200 {
        let s = e.sample_graph(5, &mut rng).unwrap();
        assert_eq!(s.graph.n(), 5);
        degenerate += s.degenerate;
    }
    assert!(degenerate > 0);
    assert!(e.sample_graph(8, &mut rng).is_err());
}

#[test]
fn alpha_tilde_values() {
    let t = estimate_alpha_tilde(32, 20_000, 0.5, 20, 1).unwrap();
    assert!(t.values.iter().all(|&v| v > 0.0 && v <= 1.0));
    assert_eq!(t, estimate_alpha_tilde(32, 20_000, 0.5, 20, 1).unwrap());
    let csv = t.csv();
    assert!(csv.lines().nth(1) == Some("k,N,rep,alpha_over_k"));
    assert_eq!(csv.lines().count(), 22);
}

#[test]
fn dirichlet_marginals() {
    let mut rng = RandomSource::from_seed(6);
    let draws = 100_000;
    let mut sums = [0.0; 3];
    for _ in 0..draws {
        let d = dirichlet_half(&mut rng);
        for i in 0..3 {
            sums[i] += d[i];
        }
    }
    // Var Δᵢ = (1/3)(2/3)/(3/2 + 1) = 4/45.
    let sigma = (4.0 / 45.0 / draws as f64).sqrt();
    for s in sums {
        assert!((s / draws as f64 - 1.0 / 3.0).abs() <= 3.0 * sigma);
    }
}

#[test]
fn phi_iteration_contracts() {
    let rows = phi_p_iterate(0.5, 40, 20_000, 9).unwrap();
    for w in rows.windows(2) {
        let slack = 2.0 * ((w[0].std_dev.powi(2) + w[1].std_dev.powi(2)) / 20_000.0).sqrt();
        assert!(w[1].mean <= w[0].mean + slack, "{:?}", w);
    }
    let first: f64 = rows[..10].iter().map(|r| r.w1_prev).sum();
    let last: f64 = rows[30..].iter().map(|r| r.w1_prev).sum();
    assert!(last < first);
    let zero = EmpiricalDistribution::dirac(0.0, 1000).unwrap();
    let mut rng = RandomSource::from_seed(0);
    for p in [0.0, 0.5, 0.9] {
        assert_eq!(phi_p_apply(&zero, p, 1000, &mut rng).unwrap(), zero);
    }
    assert!(phi_csv(0.5, 9, &rows).lines().nth(1) == Some("iter,mean,median,w1_prev"));
}

#[test]
fn alpha_tilde_shrinks_with_k() {
    let small = estimate_alpha_tilde(64, 1_000_000, 0.5, 100, 3).unwrap().median();
    let large = estimate_alpha_tilde(512, 1_000_000, 0.5, 100, 3).unwrap().median();
    assert!(large < small, "median α̃/k: k=64 {small}, k=512 {large}");
}
