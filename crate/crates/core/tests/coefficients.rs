mod common;

use proptest::prelude::*;
use templap::coeffs::{
    adjacent_cell_weight, coeff_boundary_left, coeff_boundary_right, coeff_pair_sum, coeff_quadrature_oracle, CellCoeff,
};
use templap::tails::TailIntegrator;
use templap::SchemeParams;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Any admissible `(beta, s, s1)`, with `beta = 1` hit on purpose.
fn admissible() -> impl Strategy<Value = SchemeParams> {
    let beta = prop_oneof![1 => Just(1.0), 9 => (0.05f64..1.95).prop_filter("away from 1", |b| (b - 1.0).abs() > 1e-3)];
    (beta, any::<bool>()).prop_map(|(beta, high)| {
        if high {
            SchemeParams::high_order(beta, 0.0).unwrap()
        } else {
            SchemeParams::low_order(beta, 0.0).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pair_weights_match_cell_quadrature(p in admissible(), lag in 2usize..300, h in 0.001f64..1.0) {
        // the pair lives on cells [x_0, x_1] and [x_1, x_2] seen from x_{lag+1}
        let i = lag + 1;
        let oracle = coeff_quadrature_oracle(CellCoeff::A1, i, 2, p.s, p.beta, h)
            + coeff_quadrature_oracle(CellCoeff::A2, i, 1, p.s, p.beta, h);
        let e = rel(coeff_pair_sum(lag, &p, h), oracle);
        prop_assert!(e <= 1e-9, "lag {lag}: {e:e}");
    }

    #[test]
    fn boundary_weights_match_cell_quadrature(p in admissible(), row in 2usize..300) {
        let oracle = coeff_quadrature_oracle(CellCoeff::A1, row, 1, p.s, p.beta, 1.0);
        let e = rel(coeff_boundary_left(row, &p, 1.0), oracle);
        prop_assert!(e <= 1e-9, "row {row}: {e:e}");
        let m = 400;
        let mirrored = coeff_quadrature_oracle(CellCoeff::A4, m + 1 - row, m + 1, p.s, p.beta, 1.0);
        prop_assert!(rel(coeff_boundary_right(m + 1 - row, m, &p, 1.0), mirrored) <= 1e-9);
    }

    #[test]
    fn tails_match_quadrature_and_decrease(beta in 0.05f64..1.95, lambda in 0.0f64..20.0, d in 1e-3f64..4.0) {
        let tails = TailIntegrator::new(&SchemeParams::high_order(beta, lambda).unwrap());
        let here = tails.eval(d);
        prop_assert!(rel(here, common::tail_oracle(beta, lambda, d)) <= 1e-9);
        prop_assert!(tails.eval(1.01 * d) < here);
        // the untempered tail bounds it above, the first unit of decay below
        prop_assert!(here <= d.powf(-beta) / beta * (1.0 + 1e-12));
        let lower = (-lambda * (d + 1.0)).exp() * (d.powf(-beta) - (d + 1.0).powf(-beta)) / beta;
        prop_assert!(here >= lower);
    }
}

#[test]
fn adjacent_weight_matches_cell_quadrature() {
    for beta in [0.2, 0.8, 1.0, 1.3, 1.9] {
        for p in [SchemeParams::high_order(beta, 0.0).unwrap(), SchemeParams::low_order(beta, 0.0).unwrap()] {
            let oracle = coeff_quadrature_oracle(CellCoeff::A2, 5, 4, p.s, beta, 0.01);
            assert!(rel(adjacent_cell_weight(&p, 0.01), oracle) <= 1e-9, "beta {beta} s {}", p.s);
        }
    }
}

#[test]
fn log_case_is_continuous_in_beta() {
    // the beta = 1 forms are the limit of the power forms
    for (s, s1) in [(0, 1), (1, 1)] {
        let at = SchemeParams::new(1.0, 0.0, s, s1).unwrap();
        let near = SchemeParams::new(1.0 + 1e-6, 0.0, s, s1).unwrap();
        for lag in [2, 10, 100] {
            assert!(rel(coeff_pair_sum(lag, &near, 1.0), coeff_pair_sum(lag, &at, 1.0)) < 1e-4);
        }
    }
}
