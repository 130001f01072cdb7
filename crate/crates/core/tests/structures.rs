use cographon::sampling::{sample_cotree, sample_schroder, CountTables, Model, RandomSource};
use cographon::statistics::{self, alpha, lds, lis, omega};
use cographon::structures::*;
use proptest::prelude::*;

/// Independent `P₄` test on an adjacency matrix.
fn has_p4(n: usize, adj: &[Vec<bool>]) -> bool {
    let idx: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [idx[a], idx[b], idx[c], idx[d]];
                    let mut edges = 0;
                    let mut deg = [0; 4];
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if adj[q[i]][q[j]] {
                                edges += 1;
                                deg[i] += 1;
                                deg[j] += 1;
                            }
                        }
                    }
                    deg.sort();
                    if edges == 3 && deg == [1, 1, 2, 2] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[test]
fn exhaustive_cographs_up_to_six() {
    let expected = [1usize, 2, 8, 64 - 12, 472, 5504];
    for n in 1..=6 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut count = 0;
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
            let mut adj = vec![vec![false; n]; n];
            for &(i, j) in &edges {
                adj[i][j] = true;
                adj[j][i] = true;
            }
            let p4 = has_p4(n, &adj);
            match Cotree::from_graph(&g) {
                Ok(t) => {
                    assert!(!p4);
                    count += 1;
                    assert_eq!(t.to_graph(), g);
                    let text = t.to_string();
                    assert_eq!(text.parse::<Cotree>().unwrap(), t);
                    assert_eq!(alpha(&t), statistics::alpha_graph_bruteforce(&g).unwrap());
                    assert_eq!(omega(&t), statistics::omega_graph_bruteforce(&g).unwrap());
                    assert_eq!(alpha(&t.swapped()), omega(&t));
                    assert_eq!(t.swapped().to_graph(), g.complement());
                }
                Err(StructureError::NotACograph { witness }) => {
                    assert!(p4);
                    assert_eq!(witness.len(), witness.iter().collect::<std::collections::BTreeSet<_>>().len());
                    let sub = g.induced(&witness);
                    assert!(!is_cograph(&g) && sub.n() >= 4);
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert_eq!(count, expected[n - 1], "n = {n}");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn has_bad_pattern(v: &[usize]) -> bool {
    let n = v.len();
    (0..n).any(|a| {
        (a + 1..n).any(|b| {
            (b + 1..n).any(|c| {
                (c + 1..n).any(|d| {
                    let (w, x, y, z) = (v[a], v[b], v[c], v[d]);
                    (y < w && w < z && z < x) || (x < z && z < w && w < y)
                })
            })
        })
    })
}

#[test]
fn exhaustive_permutations_up_to_six() {
    let expected = [1usize, 2, 6, 22, 90, 394];
    for n in 1..=6 {
        let mut count = 0;
        for v in permutations(n) {
            let p = Permutation::new(v.clone()).unwrap();
            match SchroderTree::from_permutation(&p) {
                Ok(t) => {
                    assert!(!has_bad_pattern(&v));
                    count += 1;
                    assert_eq!(t.to_permutation(), p);
                    assert_eq!(t.to_string().parse::<SchroderTree>().unwrap(), t);
                    assert_eq!(lis(&t), statistics::lis_of_permutation(&p));
                    assert_eq!(lds(&t), statistics::lis_of_permutation(&p.complement()));
                    assert_eq!(t.swapped().to_permutation(), p.complement());
                    let g = p.inversion_graph();
                    let c = cotree_of_schroder(&t);
                    assert_eq!(c.to_graph(), g);
                    assert_eq!(alpha(&c), lis(&t));
                }
                Err(StructureError::NotSeparable { .. }) => assert!(has_bad_pattern(&v)),
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert_eq!(count, expected[n - 1], "n = {n}");
    }
}

#[test]
fn random_large_round_trips() {
    let ct = CountTables::build(Model::Cograph, 200);
    let st = CountTables::build(Model::Separable, 200);
    let mut rng = RandomSource::from_seed(2024);
    for case in 0..1000 {
        let n = 1 + rng.uniform_index(200);
        let t = sample_cotree(n, &ct, &mut rng).unwrap();
        let g = t.to_graph();
        assert_eq!(Cotree::from_graph(&g).unwrap(), t, "case {case}");
        assert_eq!(t.to_string().parse::<Cotree>().unwrap(), t);
        assert_eq!(alpha(&t.swapped()), omega(&t));
        assert_eq!(omega(&t.swapped()), alpha(&t));
        assert_eq!(t.swapped().swapped(), t);
        if n <= 25 {
            assert_eq!(alpha(&t), statistics::alpha_graph_bruteforce(&g).unwrap());
        }

        let s = sample_schroder(n, &st, &mut rng).unwrap();
        let p = s.to_permutation();
        assert_eq!(SchroderTree::from_permutation(&p).unwrap(), s);
        assert_eq!(s.to_string().parse::<SchroderTree>().unwrap(), s);
        assert_eq!(lis(&s), statistics::lis_of_permutation(&p));
        let ig = inversion_graph(&p);
        assert!(is_cograph(&ig));
        assert_eq!(alpha(&Cotree::from_graph(&ig).unwrap()), lis(&s));
    }
}

#[test]
fn text_formats() {
    let g: Graph = "3\n1 2\n2 3\n".parse().unwrap();
    assert_eq!(g.to_string().parse::<Graph>().unwrap(), g);
    assert!(matches!("2\n1 3\n".parse::<Graph>(), Err(StructureError::VertexOutOfRange { .. })));
    assert!(matches!("2\n1 1\n".parse::<Graph>(), Err(StructureError::SelfLoop(_))));
    let t: Cotree = "1(0(L1,L2),L3)".parse().unwrap();
    assert_eq!(t.to_string(), "1(0(L1,L2),L3)");
    assert!("1(1(L1,L2),L3)".parse::<Cotree>().is_err());
    let s: SchroderTree = "+(-(L,L),L)".parse().unwrap();
    assert_eq!(s.to_permutation().to_string(), "2,1,3");
    assert!("3,1,4,2".parse::<Permutation>().map(|p| SchroderTree::from_permutation(&p).is_err()).unwrap());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn cograph_recognition_is_complement_invariant(g in arb_graph(9)) {
        prop_assert_eq!(is_cograph(&g), is_cograph(&g.complement()));
        if let Ok(t) = Cotree::from_graph(&g) {
            prop_assert_eq!(Cotree::from_graph(&g.complement()).unwrap(), t.swapped());
            prop_assert_eq!(t.to_graph(), g);
        }
    }

    #[test]
    fn sqrt_bound_on_cographs(seed in any::<u64>(), n in 1usize..120) {
        let tables = CountTables::build(Model::Cograph, n);
        let t = sample_cotree(n, &tables, &mut RandomSource::from_seed(seed)).unwrap();
        let (a, w) = (alpha(&t), omega(&t));
        prop_assert!(a * w >= n);
        prop_assert!(a.max(w) * a.max(w) >= n);
    }

    #[test]
    fn inverse_of_separable_is_separable(seed in any::<u64>(), n in 1usize..60) {
        let tables = CountTables::build(Model::Separable, n);
        let p = sample_schroder(n, &tables, &mut RandomSource::from_seed(seed)).unwrap().to_permutation();
        prop_assert!(SchroderTree::from_permutation(&p.inverse()).is_ok());
        prop_assert_eq!(statistics::lis_of_permutation(&p.inverse()), statistics::lis_of_permutation(&p));
    }
}
