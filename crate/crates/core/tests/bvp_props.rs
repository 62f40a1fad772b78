mod common;

use proptest::prelude::*;
use tachyon_core::basis::{gauss_hermite_rule, project, Basis};
use tachyon_core::bvp::{
    ansatz_to_hermite, chi_resynthesis, erf_base_coeff, odd_p_ansatz, solve_bvp, ErfAnsatz,
};
use tachyon_core::special::erf;

use common::{config, linspace};

fn base(t: f64) -> f64 {
    0.5 + 0.5 * erf(t)
}

fn chi_error(order: usize) -> f64 {
    let alpha = 1.1f64.sqrt();
    let rule = gauss_hermite_rule(200).unwrap();
    let f = chi_resynthesis(base, alpha, order, &rule);
    linspace(-3.0, 3.0, 601)
        .into_iter()
        .map(|t| (f(t) - base(t)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn chi_system_resynthesizes_base() {
    println!(
        "chi re-synthesis error on |t| <= 3: N = 20 {:.3e}, N = 24 {:.3e}",
        chi_error(20),
        chi_error(24)
    );
    assert!(chi_error(24) < 1e-4);
}

#[test]
#[ignore = "fails: N = 20 leaves 1.4e-4 on |t| <= 3"]
fn chi_system_at_order_twenty() {
    assert!(chi_error(20) < 1e-4);
}

#[test]
fn bare_ansatz_gives_base_coefficients() {
    for alpha in [1.05f64, 1.1f64.sqrt(), 1.3] {
        let az = ErfAnsatz::new(alpha, vec![]).unwrap();
        for n in 0..=10 {
            assert_eq!(ansatz_to_hermite(&az, n), erf_base_coeff(n));
        }
        let zeros = ErfAnsatz::new(alpha, vec![0.0; 6]).unwrap();
        for n in 0..=10 {
            assert_eq!(ansatz_to_hermite(&zeros, n), erf_base_coeff(n));
        }
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn inversion_round_trip(
        alpha in 1.01..std::f64::consts::SQRT_2,
        targets in prop::collection::vec(-2.0..2.0f64, 4),
    ) {
        let c = solve_bvp(alpha, &targets).unwrap();
        let az = ErfAnsatz::new(alpha, c).unwrap();
        for (n, want) in targets.iter().enumerate() {
            let got = ansatz_to_hermite(&az, n);
            prop_assert!((got - want).abs() < 1e-10, "n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn limits_far_out(
        alpha_sq in 1.1..2.0f64,
        c in prop::collection::vec(-0.5..0.5f64, 0..=4),
    ) {
        let alpha = alpha_sq.sqrt();
        let az = ErfAnsatz::new(alpha, c.clone()).unwrap();
        prop_assert!(az.eval(-16.0).abs() < 1e-6 && (az.eval(16.0) - 1.0).abs() < 1e-6);
        let odd = odd_p_ansatz(alpha, c).unwrap();
        prop_assert!((odd.eval(-16.0) + 1.0).abs() < 1e-6 && (odd.eval(16.0) - 1.0).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn coefficients_match_quadrature(c in prop::collection::vec(-0.1..0.1f64, 1..=5)) {
        let az = ErfAnsatz::new(1.1f64.sqrt(), c).unwrap();
        let rule = gauss_hermite_rule(200).unwrap();
        let s = project(|t| az.eval(t), Basis::H, 8, &rule);
        for n in 0..=8 {
            let exact = ansatz_to_hermite(&az, n);
            prop_assert!((s.coeff(n) - exact).abs() < 1e-8 * exact.abs().max(1.0), "n={n}: {} vs {exact}", s.coeff(n));
        }
    }
}

#[test]
#[ignore = "fails: with alpha^2 = 1.1 the damped correction is still of order 0.1 at |t| = 8"]
fn limits_at_eight() {
    let mut runner = proptest::test_runner::TestRunner::new(config(64));
    runner
        .run(&prop::collection::vec(-0.5..0.5f64, 1..=4), |c| {
            let az = ErfAnsatz::new(1.1f64.sqrt(), c.clone()).unwrap();
            prop_assert!(az.eval(-8.0).abs() < 1e-6 && (az.eval(8.0) - 1.0).abs() < 1e-6);
            let odd = odd_p_ansatz(1.1f64.sqrt(), c).unwrap();
            prop_assert!((odd.eval(-8.0) + 1.0).abs() < 1e-6 && (odd.eval(8.0) - 1.0).abs() < 1e-6);
            Ok(())
        })
        .unwrap();
}
