mod common;

use proptest::prelude::*;

use qaoa_topobench::encoding::{
    build_mvc_qubo, ising_energy, qubo_cost, qubo_to_ising, spins_from_bits, Bitstring, QuboParams,
};
use qaoa_topobench::oracle::solve_classical_mvc;

fn params() -> impl Strategy<Value = QuboParams> {
    (0.1f64..3.0, 0.05f64..3.0).prop_map(|(b, gap)| QuboParams {
        penalty_a: b + gap,
        cost_b: b,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qubo_matches_the_objective_written_from_the_graph(g in common::arb_graph(1, 8), p in params()) {
        let q = build_mvc_qubo(&g, &g.natural_order(), p).unwrap();
        for b in 0..1usize << g.node_count() {
            let x = Bitstring::from_index(b, g.node_count());
            let direct = common::mvc_cost(&g, p.penalty_a, p.cost_b, b as u64);
            prop_assert!((qubo_cost(&q, &x).unwrap() - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn ising_round_trip_is_exact(g in common::arb_graph(1, 10), p in params()) {
        let q = build_mvc_qubo(&g, &g.natural_order(), p).unwrap();
        let ham = qubo_to_ising(&q).unwrap();
        for b in 0..1usize << g.node_count() {
            let x = Bitstring::from_index(b, g.node_count());
            let lhs = qubo_cost(&q, &x).unwrap();
            let rhs = ising_energy(&ham, &spins_from_bits(&x)).unwrap() + ham.offset;
            prop_assert!((lhs - rhs).abs() < 1e-9, "{x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn minimizers_are_exactly_the_minimum_covers(g in common::arb_graph(2, 9), p in params()) {
        let n = g.node_count();
        let q = build_mvc_qubo(&g, &g.natural_order(), p).unwrap();
        let costs: Vec<f64> = (0..1usize << n)
            .map(|b| qubo_cost(&q, &Bitstring::from_index(b, n)).unwrap())
            .collect();
        let min = costs.iter().copied().fold(f64::INFINITY, f64::min);
        let argmins: Vec<u64> = (0..costs.len())
            .filter(|&b| (costs[b] - min).abs() < 1e-9)
            .map(|b| b as u64)
            .collect();

        let (opt, covers) = common::all_minimum_covers(&g);
        prop_assert_eq!(argmins, covers);
        prop_assert!((min - p.cost_b * opt as f64).abs() < 1e-9);
        prop_assert_eq!(solve_classical_mvc(&g).unwrap().size, opt);
    }

    #[test]
    fn invalid_covers_pay_at_least_the_penalty_gap(g in common::arb_graph(2, 8), p in params()) {
        let n = g.node_count();
        let q = build_mvc_qubo(&g, &g.natural_order(), p).unwrap();
        let optimal_cost = p.cost_b * common::all_minimum_covers(&g).0 as f64;
        for b in 0..1u64 << n {
            if !common::mask_covers(&g, b) {
                let c = qubo_cost(&q, &Bitstring::from_index(b as usize, n)).unwrap();
                prop_assert!(c >= optimal_cost + (p.penalty_a - p.cost_b) - 1e-9);
            }
        }
    }

    #[test]
    fn coupling_pairs_are_upper_triangular(g in common::arb_graph(1, 10)) {
        let ham = qubo_to_ising(&build_mvc_qubo(&g, &g.natural_order(), QuboParams::default()).unwrap()).unwrap();
        prop_assert_eq!(ham.h.len(), ham.n);
        prop_assert!(ham.j.keys().all(|&(i, j)| i < j && j < ham.n));
        prop_assert_eq!(ham.j.len(), g.edge_count());
    }
}
