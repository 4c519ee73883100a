use proptest::prelude::*;
use sechbloch::analytic::{
    w_coherent, w_half_integer_pulse, w_infinity, w_infinity_cos_form, w_integer_pulse, DimensionlessParams,
};
use sechbloch::sweep::{find_node, run_sweep, FixedParam, SweepSpec, SweepVariable};

fn w(alpha: f64, gamma: f64) -> f64 {
    w_infinity(DimensionlessParams::new(alpha, gamma).unwrap())
}

fn near_cos_pole(alpha: f64, gamma: f64) -> bool {
    let x = 0.5 - gamma + alpha;
    x <= 0.0 && (x - x.round()).abs() < 1e-6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn inversion_in_physical_range(alpha in 0.0f64..30.0, gamma in 0.0f64..20.0) {
        let v = w(alpha, gamma);
        prop_assert!((-1.0..=1.0).contains(&v));
    }

    #[test]
    fn coherent_limit(alpha in 0.0f64..20.0) {
        prop_assert!((w(alpha, 0.0) - w_coherent(alpha)).abs() <= 1e-12);
    }

    #[test]
    fn gamma_and_cos_forms_agree(alpha in 0.0f64..10.0, gamma in 0.0f64..3.0) {
        prop_assume!(!near_cos_pole(alpha, gamma));
        let p = DimensionlessParams::new(alpha, gamma).unwrap();
        let d = (w_infinity(p) - w_infinity_cos_form(p).unwrap()).abs();
        prop_assert!(d <= 1e-10, "α={} γ={} diff={:e}", alpha, gamma, d);
    }

    #[test]
    fn product_formulas(n in 1u32..=8, gamma in 0.0f64..4.0) {
        let a = w_integer_pulse(n, gamma).unwrap();
        prop_assert!((a - w(n as f64, gamma)).abs() <= 1e-11);
        let b = w_half_integer_pulse(n, gamma).unwrap();
        prop_assert!((b - w(n as f64 + 0.5, gamma)).abs() <= 1e-11);
    }

    #[test]
    fn nodes_follow_shift_law(n in 0u32..8, gamma in 0.0f64..2.0) {
        let r = find_node(n, gamma).unwrap();
        prop_assert!((r.alpha_root - (n as f64 + 0.5 + gamma)).abs() <= 1e-9);
        prop_assert!(r.residual.abs() <= 1e-10);
    }

    #[test]
    fn dephasing_damps_at_shifted_extremum(n in 1u32..6, g1 in 0.0f64..2.0, dg in 0.01f64..1.0) {
        // following the extremum α = n + γ the magnitude never grows with γ
        let g2 = g1 + dg;
        let a1 = w(n as f64 + g1, g1).abs();
        let a2 = w(n as f64 + g2, g2).abs();
        prop_assert!(a2 <= a1 + 1e-12, "n={} {} -> {}", n, a1, a2);
    }

    #[test]
    fn overdamping_returns_toward_ground(alpha in 0.1f64..3.0) {
        // large dephasing freezes the atom in its initial state
        let w_mid = w(alpha, 5.0);
        let w_big = w(alpha, 50.0);
        prop_assert!(w_big <= w_mid + 1e-12);
        prop_assert!(w_big < -0.8);
    }
}

#[test]
fn cos_form_guard_reported() {
    // 1/2 - γ + α = -1 is a pole of Γ(1/2-γ+α)
    let p = DimensionlessParams::new(0.5f64, 2.0).unwrap();
    assert!(w_infinity_cos_form(p).is_err());
    assert!(w_infinity(p).is_finite());
}

#[test]
fn node_spacing_is_one() {
    for &g in &[0.0, 0.1, 0.5, 1.0, 1.7] {
        let roots: Vec<f64> = (0..6).map(|n| find_node(n, g).unwrap().alpha_root).collect();
        for pair in roots.windows(2) {
            assert!((pair[1] - pair[0] - 1.0).abs() <= 1e-9, "γ={g}: {pair:?}");
        }
    }
}

#[test]
fn sweeps_are_deterministic() {
    let spec = sechbloch::SweepSpec64::analytic(SweepVariable::Alpha, 0.0, 8.0, 2001, FixedParam::GammaT(0.7));
    let a = run_sweep(&spec).unwrap();
    let b = run_sweep(&spec).unwrap();
    assert_eq!(a.fingerprint, b.fingerprint);
    for (r, s) in a.rows.iter().zip(&b.rows) {
        assert_eq!(r.x.to_bits(), s.x.to_bits());
        assert_eq!(r.w_analytic.unwrap().to_bits(), s.w_analytic.unwrap().to_bits());
    }
    let other = SweepSpec { points: 2000, ..spec };
    assert_ne!(other.fingerprint(), a.fingerprint);
}
