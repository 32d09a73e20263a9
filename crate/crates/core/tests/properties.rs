use num_complex::Complex64;
use proptest::prelude::*;

use stabent::graphstate::{amplitude_transform, AmplitudeRecurrence};
use stabent::oracle::{dense_pauli, inner, stabilizer_state_dense};
use stabent::random::{random_group_pair, seeded};
use stabent::{EntropySpec, Graph, PauliOperator, ProbabilityDistribution, StabilizerGroup};

fn pauli(max_n: usize) -> impl Strategy<Value = PauliOperator> {
    (1..=max_n).prop_flat_map(|n| {
        let m = (1u64 << n) - 1;
        (Just(n), 0..=m, 0..=m, 0u8..4)
            .prop_map(|(n, x, z, ph)| PauliOperator::new(n, x, z, ph).unwrap())
    })
}

fn pauli_pair(max_n: usize) -> impl Strategy<Value = (PauliOperator, PauliOperator)> {
    (1..=max_n).prop_flat_map(|n| {
        let m = (1u64 << n) - 1;
        (0..=m, 0..=m, 0u8..4, 0..=m, 0..=m, 0u8..4).prop_map(move |(x1, z1, p1, x2, z2, p2)| {
            (
                PauliOperator::new(n, x1, z1, p1).unwrap(),
                PauliOperator::new(n, x2, z2, p2).unwrap(),
            )
        })
    })
}

fn graph_on(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        let edges: Vec<_> = pairs
            .zip(bits)
            .filter(|(_, b)| *b)
            .map(|(e, _)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(graph_on)
}

proptest! {
    #[test]
    fn product_matches_matrices((a, b) in pauli_pair(4)) {
        let want = dense_pauli(&a).unwrap().matmul(&dense_pauli(&b).unwrap());
        let got = dense_pauli(&a.multiply(&b).unwrap()).unwrap();
        prop_assert!(got.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn commutation_matches_matrices((a, b) in pauli_pair(4)) {
        let (ma, mb) = (dense_pauli(&a).unwrap(), dense_pauli(&b).unwrap());
        let mut comm = ma.matmul(&mb);
        comm.add_scaled(&mb.matmul(&ma), Complex64::new(-1.0, 0.0));
        prop_assert_eq!(a.commutes(&b).unwrap(), comm.is_zero(1e-12));
    }

    #[test]
    fn trace_inner_matches_matrices((a, b) in pauli_pair(4)) {
        let tr = dense_pauli(&a).unwrap().matmul(&dense_pauli(&b).unwrap()).trace();
        let got = a.trace_inner(&b).unwrap();
        prop_assert!((tr - Complex64::new(got.re as f64, got.im as f64)).norm() < 1e-9);
    }

    #[test]
    fn text_round_trip(p in pauli(8)) {
        let back: PauliOperator = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn hermitian_iff_dense_hermitian(p in pauli(3)) {
        prop_assert_eq!(p.is_hermitian(), dense_pauli(&p).unwrap().is_hermitian(1e-12));
    }

    #[test]
    fn amplitude_routes_agree(g in graph(9)) {
        let t = amplitude_transform(&g).unwrap();
        let r = AmplitudeRecurrence::new(&g).table().unwrap();
        prop_assert_eq!(t.values(), r.values());
    }

    #[test]
    fn graph_file_round_trip(g in graph(7)) {
        prop_assert_eq!(Graph::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn graph_and_group_routes_agree((a, b) in (1usize..=6).prop_flat_map(|n| (graph_on(n), graph_on(n)))) {
        let via_graphs = stabent::graphstate::mu_bound_graphs(&a, &b).unwrap();
        let sa = a.stabilizer_group().unwrap();
        let via_groups = sa.mu_bound_stabilizer(&b.stabilizer_group().unwrap()).unwrap();
        prop_assert_eq!(via_graphs, via_groups);
    }

    #[test]
    fn overlap_formula_matches_enumeration(seed in any::<u64>(), n in 1usize..=5) {
        let (s, t) = random_group_pair(n, &mut seeded(seed)).unwrap();
        let fast = s.overlap_squared(&t).unwrap();
        let slow = s.overlap_squared_by_enumeration(&t).unwrap();
        prop_assert_eq!(fast.overlap_squared, slow.overlap_squared);
        let dense = inner(
            stabilizer_state_dense(&s).unwrap().vector().unwrap(),
            stabilizer_state_dense(&t).unwrap().vector().unwrap(),
        )
        .norm_sqr();
        prop_assert!((fast.overlap_squared.to_f64() - dense).abs() < 1e-12);
    }

    #[test]
    fn generator_text_round_trip(seed in any::<u64>(), n in 1usize..=6) {
        let (s, _) = random_group_pair(n, &mut seeded(seed)).unwrap();
        let text: String = s.generators().iter().map(|g| format!("{g}\n")).collect();
        prop_assert_eq!(StabilizerGroup::from_text(&text).unwrap(), s);
    }

    #[test]
    fn tsallis_approaches_shannon_in_nats(raw in proptest::collection::vec(0.01f64..1.0, 2..6)) {
        let total: f64 = raw.iter().sum();
        let p = ProbabilityDistribution::new(raw.iter().map(|v| v / total).collect()).unwrap();
        let nats = EntropySpec::Shannon.entropy(&p).unwrap() * std::f64::consts::LN_2;
        let near = EntropySpec::tsallis(1.0 + 1e-7).unwrap().entropy(&p).unwrap();
        prop_assert!((near - nats).abs() < 1e-6, "{} vs {}", near, nats);
    }

    #[test]
    fn entropies_bounded_by_flat(raw in proptest::collection::vec(0.0f64..1.0, 2..=2), q in 1.01f64..9.0) {
        let total: f64 = raw.iter().sum();
        prop_assume!(total > 0.0);
        let p = ProbabilityDistribution::new(raw.iter().map(|v| v / total).collect()).unwrap();
        for spec in [EntropySpec::Shannon, EntropySpec::Min, EntropySpec::tsallis(q).unwrap()] {
            let h = spec.entropy(&p).unwrap();
            prop_assert!(h >= -1e-15 && h <= spec.flat_entropy().unwrap() + 1e-12);
        }
    }
}
