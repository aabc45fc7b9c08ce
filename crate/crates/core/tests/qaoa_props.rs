mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use qaoa_topobench::encoding::{build_mvc_qubo, qubo_cost, qubo_to_ising, Bitstring, QuboParams};
use qaoa_topobench::qaoa::{
    build_diagonal, expectation, probabilities, qaoa_state, qaoa_state_with_diagonal, uniform_state, DiagonalCost, QaoaParams,
    Statevector,
};

fn angle() -> impl Strategy<Value = f64> {
    -4.0f64..4.0
}

fn random_state(n: usize, raw: &[(f64, f64)]) -> Statevector {
    let amps: Vec<Complex64> = raw[..1 << n].iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    Statevector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_preserve_the_norm(
        g in common::arb_graph(1, 8),
        angles in proptest::collection::vec(angle(), 1..8),
    ) {
        let ham = qubo_to_ising(&build_mvc_qubo(&g, &g.natural_order(), QuboParams::default()).unwrap()).unwrap();
        let d = build_diagonal(&ham).unwrap();
        let mut sv = uniform_state(g.node_count()).unwrap();
        for (k, a) in angles.iter().enumerate() {
            if k % 2 == 0 {
                sv.apply_phase(&d, *a).unwrap();
            } else {
                sv.apply_mixer(*a);
            }
            prop_assert!((sv.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mixer_inverts_with_negated_angle(
        n in 1usize..7,
        raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64),
        beta in angle(),
    ) {
        prop_assume!(raw.iter().take(1 << n).any(|&(a, b)| a.abs() + b.abs() > 1e-3));
        let start = random_state(n, &raw);
        let mut sv = start.clone();
        sv.apply_mixer(beta);
        sv.apply_mixer(-beta);
        for (a, b) in sv.amplitudes().iter().zip(start.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn constant_cost_keeps_the_distribution_uniform(
        n in 1usize..8,
        level in -5.0f64..5.0,
        gamma in proptest::collection::vec(angle(), 1..4),
        seed_beta in angle(),
    ) {
        let d = DiagonalCost::from_energies(vec![level; 1 << n]).unwrap();
        let beta: Vec<f64> = (0..gamma.len()).map(|k| seed_beta + k as f64).collect();
        let params = QaoaParams::new(gamma, beta).unwrap();
        let sv = qaoa_state_with_diagonal(&d, &params).unwrap();
        let target = 1.0 / (1 << n) as f64;
        for (_, p) in probabilities(&sv).iter() {
            prop_assert!((p - target).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_expectation_is_the_mean_cost(g in common::arb_graph(1, 10)) {
        let n = g.node_count();
        let q = build_mvc_qubo(&g, &g.natural_order(), QuboParams::default()).unwrap();
        let ham = qubo_to_ising(&q).unwrap();
        let d = build_diagonal(&ham).unwrap();
        let e = expectation(&uniform_state(n).unwrap(), &d, ham.offset).unwrap();
        let mean = (0..1usize << n)
            .map(|b| qubo_cost(&q, &Bitstring::from_index(b, n)).unwrap())
            .sum::<f64>()
            / (1usize << n) as f64;
        prop_assert!((e - mean).abs() < 1e-9, "{e} vs {mean}");
    }

    #[test]
    fn p1_state_matches_dense_matrix_construction(
        g in common::arb_graph(1, 4),
        gamma in angle(),
        beta in angle(),
    ) {
        let ham = qubo_to_ising(&build_mvc_qubo(&g, &g.natural_order(), QuboParams::default()).unwrap()).unwrap();
        let sv = qaoa_state(&ham, &QaoaParams::new(vec![gamma], vec![beta]).unwrap()).unwrap();
        let reference = common::dense_qaoa_p1(&ham, gamma, beta);
        for (a, b) in sv.amplitudes().iter().zip(&reference) {
            prop_assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        }
    }
}

#[test]
fn dense_reference_reproduces_a_hand_case() {
    // Single qubit, h = 1: exp(-i b X) exp(-i g Z) |+>, worked by hand.
    let ham = qaoa_topobench::encoding::IsingHamiltonian::new(vec![1.0], Default::default(), 0.0).unwrap();
    let (g, b) = (0.3f64, 0.7f64);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (a0, a1) = (Complex64::from_polar(s, -g), Complex64::from_polar(s, g));
    let (c, sn) = (Complex64::new(b.cos(), 0.0), Complex64::new(0.0, -b.sin()));
    let expected = [c * a0 + sn * a1, sn * a0 + c * a1];
    let got = common::dense_qaoa_p1(&ham, g, b);
    for (x, y) in got.iter().zip(&expected) {
        assert!((x - y).norm() < 1e-12);
    }
}
