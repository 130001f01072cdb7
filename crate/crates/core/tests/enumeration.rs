use cographon::oracle::{self, check_equivalence, enumerate_cographs, enumerate_separable};
use cographon::series::{self, CographSeries, EnumerationError, Rational, SeparableSeries};
use cographon::statistics::{increasing_subsequence_polynomial, independent_set_polynomial};
use cographon::structures::{Cotree, SchroderTree};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[test]
fn series_match_exhaustive_averages() {
    let c = CographSeries::compute(5).unwrap();
    let z = SeparableSeries::compute(7).unwrap();
    let report = check_equivalence(c.c(), z.z(), 5, 7).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches);
    assert_eq!(report.checked, (2..=6).sum::<usize>() + (2..=8).sum::<usize>());
}

#[test]
fn corrupted_coefficient_is_detected() {
    let mut c = CographSeries::compute(5).unwrap().c().clone();
    let z = SeparableSeries::compute(7).unwrap().z().clone();
    c.set_coeff(4, 2, c.coeff(4, 2) + Rational::from_integer(BigInt::from(1)));
    let report = check_equivalence(&c, &z, 5, 7).unwrap();
    assert_eq!(report.mismatches.len(), 1);
    assert_eq!((report.mismatches[0].n, report.mismatches[0].k), (4, 2));
}

#[test]
fn counts_match_catalogs() {
    for n in 1..=5 {
        let catalog = enumerate_cographs(n).unwrap();
        assert_eq!(series::count_labeled_cographs(n).unwrap(), catalog.items.len().into());
    }
    for n in 1..=8 {
        let catalog = enumerate_separable(n).unwrap();
        assert_eq!(series::count_separable(n).unwrap(), catalog.items.len().into());
    }
}

/// Per-object agreement of the tree polynomials with subset counting.
#[test]
fn polynomials_match_subset_counts() {
    for n in 1..=5 {
        for g in enumerate_cographs(n).unwrap().items {
            let poly = independent_set_polynomial(&Cotree::from_graph(&g).unwrap());
            for k in 0..=n {
                let brute = (0u32..1 << n)
                    .filter(|s| s.count_ones() as usize == k)
                    .filter(|&s| (0..n).all(|i| (i + 1..n).all(|j| s >> i & 1 == 0 || s >> j & 1 == 0 || !g.has_edge(i, j))))
                    .count();
                assert_eq!(poly.coeff(k), brute.into());
            }
        }
    }
    for n in 1..=7 {
        for p in enumerate_separable(n).unwrap().items {
            let poly = increasing_subsequence_polynomial(&SchroderTree::from_permutation(&p).unwrap());
            for k in 0..=n {
                let brute = (0u32..1 << n)
                    .filter(|s| s.count_ones() as usize == k)
                    .filter(|&s| {
                        let v: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).map(|i| p.get(i)).collect();
                        v.windows(2).all(|w| w[0] < w[1])
                    })
                    .count();
                assert_eq!(poly.coeff(k), brute.into());
            }
        }
    }
}

#[test]
fn expectation_examples() {
    let q = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
    assert_eq!(series::expected_x(2, 2).unwrap(), q(1, 2));
    assert_eq!(series::expected_x(1, 1).unwrap(), q(1, 1));
    assert_eq!(series::expected_z(3, 3).unwrap(), q(1, 6));
    assert_eq!(series::expected_x(3, 0).unwrap(), q(1, 1));
    // Every vertex is an independent 1-set and every entry an increasing 1-subsequence.
    assert_eq!(series::expected_x(7, 1).unwrap(), q(7, 1));
    assert_eq!(series::expected_z(7, 1).unwrap(), q(7, 1));
    assert_eq!(series::expected_x(4, 5).unwrap(), q(0, 1));
    assert!(matches!(series::expected_x(0, 0), Err(EnumerationError::IndexOutOfRange { .. })));
    assert_eq!(oracle::oracle_expected_x(4, 3).unwrap(), series::expected_x(4, 3).unwrap());
}

#[test]
fn float_pipeline_tracks_exact_at_moderate_order() {
    let n = 60;
    let exact = CographSeries::compute(n).unwrap();
    let float = series::FloatCographSeries::compute(n);
    for k in [0, 1, 15, 30, 45, 60] {
        let e = exact.expected_x(n, k).unwrap().to_f64().unwrap();
        let f = float.expected_x(n, k).unwrap();
        assert!((f / e - 1.0).abs() < 1e-10, "k={k}: {f} vs {e}");
    }
    let exact = SeparableSeries::compute(n).unwrap();
    let float = series::FloatSeparableSeries::compute(n);
    for k in [0, 1, 15, 30, 45, 60] {
        let e = exact.expected_z(n, k).unwrap().to_f64().unwrap();
        let f = float.expected_z(n, k).unwrap();
        assert!((f / e - 1.0).abs() < 1e-10, "k={k}: {f} vs {e}");
    }
}
