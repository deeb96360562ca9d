mod common;

use polymer_core::analytic_continuous::{
    continuous_constants, cubic_aux_root, laplace_exponent_coeffs, ldp_rate_continuous, ldp_rate_continuous_on,
};
use polymer_core::analytic_discrete::ldp_rate_discrete_on;
use polymer_core::{free_energy_g_star, ldp_rate_discrete, rate_i, sigma_star, speed_c_star, tilde_c_d, Branch};
use proptest::prelude::*;

#[test]
fn rate_i_examples() {
    assert_eq!(rate_i(0.0).unwrap().value, 0.0);
    assert!((rate_i(1.0).unwrap().value - std::f64::consts::LN_2).abs() < 1e-15);
    // 50-digit evaluation of the closed form
    assert!((rate_i(0.5).unwrap().value - 0.130_812_035_941_136_96).abs() < 1e-16);
    assert!(rate_i(-0.01).is_err() && rate_i(1.01).is_err());
}

#[test]
fn speed_examples() {
    let c = speed_c_star(1.0).unwrap();
    assert!((c.value - common::bisect_c_star(1.0)).abs() < 1e-12);
    assert!((c.value - 0.868).abs() < 1e-3);
    assert!(c.residual.abs() <= 1e-12);
    assert!(c.bracket.0 <= c.value && c.value <= c.bracket.1);
    assert!(speed_c_star(0.0).is_err() && speed_c_star(-1.0).is_err());
}

#[test]
fn free_energy_at_one() {
    let k = free_energy_g_star(1.0).unwrap();
    let c = common::bisect_c_star(1.0);
    let oracle = -(1.0 / c + common::rate_i(c));
    assert!((k.g_star - oracle).abs() < 1e-10);
    assert!((k.g_star + 1.602).abs() < 2e-3);
    let inv = 2.0 / c.powi(3) + 1.0 / (1.0 - c * c);
    assert!((k.sigma_star - inv.sqrt().recip()).abs() < 1e-10);
    assert!((k.c_tilde - 1.0 / (1.0 + 2f64.ln())).abs() < 1e-15);
}

#[test]
fn spread_matches_curvature() {
    // 1/σ*² is the second derivative of θ ↦ β/θ + I(θ) at c*
    for beta in [0.2, 1.0, 3.0] {
        let c = speed_c_star(beta).unwrap().value;
        let f = |t: f64| beta / t + common::rate_i(t);
        let h = (1e-2 * (1.0 - c)).min(1e-4);
        let diff = |h: f64| (f(c + h) - 2.0 * f(c) + f(c - h)) / (h * h);
        let second = (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
        let s = sigma_star(beta).unwrap();
        assert!((1.0 / (s * s) - second).abs() < 1e-5 * second, "beta {beta}: {} vs {second}", 1.0 / (s * s));
    }
}

#[test]
fn discrete_rate_against_grid_minimum() {
    for beta in [0.5, 1.0, 3.0] {
        let g = free_energy_g_star(beta).unwrap().g_star;
        for theta in [0.0, 0.05, 0.3, 0.5, 0.7, 0.95, 1.0] {
            let rate = ldp_rate_discrete(beta, theta).unwrap().rate;
            let oracle = common::grid_min(
                |r| beta / r + common::rate_i((2.0 * r - theta).min(1.0)),
                theta.max(1e-9),
                0.5 * (1.0 + theta),
            ) + g;
            assert!((rate - oracle).abs() < 1e-6, "beta {beta}, theta {theta}: {rate} vs {oracle}");
        }
    }
}

#[test]
fn continuous_rate_against_grid_minimum() {
    for beta in [0.1f64, 1.0, 10.0] {
        let g = -1.5 * beta.cbrt().powi(2);
        for theta in [0.0, 0.2, 0.5, 1.0, 2.0, 3.0] {
            let rate = ldp_rate_continuous(beta, theta).unwrap().rate;
            let hi = theta + 4.0 * (beta.cbrt() + 1.0);
            let oracle = common::grid_min(|r| beta / r + 0.5 * (2.0 * r - theta).powi(2), theta.max(1e-9), hi) + g;
            assert!((rate - oracle).abs() < 1e-6, "beta {beta}, theta {theta}: {rate} vs {oracle}");
        }
    }
}

#[test]
fn continuous_constants_and_ball_bound() {
    let k = continuous_constants(1.0, 1).unwrap();
    assert_eq!((k.c_dstar, k.g_dstar), (1.0, -1.5));
    // d = 1: w_0 = 1, so β̃_1 = ½β^{1/3}
    assert!((k.beta_tilde_d - 0.5).abs() < 1e-15);
    assert!((tilde_c_d(2.0, 2).unwrap() - 2.0 / (2.0 + 4f64.ln())).abs() < 1e-15);
    assert!((tilde_c_d(2.0, 2).unwrap() - 0.5906).abs() < 1e-4);
}

#[test]
fn laplace_coefficients_match_taylor_remainder() {
    for beta in [0.3f64, 1.0, 2.0, 27.0] {
        let c0 = beta.cbrt();
        let a = laplace_exponent_coeffs(beta, 6).unwrap();
        let h = |c: f64| -(beta / c + 0.5 * c * c);
        for eps in [1e-2 * c0, -1e-2 * c0] {
            let poly: f64 = a.iter().enumerate().map(|(k, ak)| ak * eps.powi(k as i32)).sum();
            // next coefficient magnitude is β/c0^8 = c0^{-5}; the remainder is that size times ε^7
            let remainder = (h(c0 + eps) - poly).abs();
            assert!(remainder < 2.0 * eps.abs().powi(7) / c0.powi(5) + 1e-14 * h(c0).abs(), "beta {beta}: {remainder}");
        }
    }
}

proptest! {
    #[test]
    fn rate_i_convex_with_atanh_slope(x in 0.01f64..0.99) {
        let h = 1e-5;
        let r = |y: f64| rate_i(y).unwrap().value;
        prop_assert!(r(x + h) - 2.0 * r(x) + r(x - h) > 0.0);
        let fd = (r(x + h) - r(x - h)) / (2.0 * h);
        // central-difference error h² I'''/6 grows like (1 - x)^{-2}
        prop_assert!((fd - rate_i(x).unwrap().derivative).abs() < 1e-9 * (1.0 + (1.0 - x).powi(-2)));
        prop_assert!((r(x) - common::rate_i(x)).abs() < 1e-15);
    }

    #[test]
    fn speed_properties(beta in 1e-3f64..20.0) {
        let k = free_energy_g_star(beta).unwrap();
        let c = k.c_star;
        // 1 - c* ≈ 2e^{-2β} drops below the f64 resolution of c* near β = 18
        prop_assert!(c > 0.0 && c <= 1.0);
        prop_assert!(k.c_star_gap > 0.0 && k.c_star_gap < 1.0);
        prop_assert!((k.c_star_gap * (2.0 * beta).exp() - 2.0).abs() < 0.1 || beta < 4.0);
        prop_assert!(k.c_tilde <= c);
        prop_assert!((k.g_star - k.g_star_infimum).abs() <= 1e-10 * k.g_star.abs().max(1.0));
        prop_assert!(k.root.residual.abs() <= 1e-12);
        prop_assert!(speed_c_star(beta * 1.01).unwrap().value >= c);
        prop_assert!(k.g_star < 0.0 && k.sigma_star > 0.0);
    }

    #[test]
    fn discrete_rate_nonnegative_and_continuous(beta in 0.05f64..10.0, theta in 0.0f64..1.0) {
        let p = ldp_rate_discrete(beta, theta).unwrap();
        prop_assert!(p.rate >= -1e-10);
        if let Some(r) = p.aux_root {
            prop_assert!(r > theta / 2.0 && r <= (1.0 + theta) / 2.0);
        }
        let threshold = p.threshold;
        let a = ldp_rate_discrete_on(beta, threshold, Branch::Pinned).unwrap().rate;
        let b = ldp_rate_discrete_on(beta, threshold, Branch::Auxiliary).unwrap().rate;
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn continuous_rate_properties(beta in 0.05f64..10.0, theta in 0.0f64..4.0) {
        let p = ldp_rate_continuous(beta, theta).unwrap();
        prop_assert!(p.rate >= -1e-10);
        let r = cubic_aux_root(beta, theta).unwrap();
        prop_assert!(r.value >= theta / 2.0);
        let t = p.threshold;
        let a = ldp_rate_continuous_on(beta, t, Branch::Pinned).unwrap().rate;
        let b = ldp_rate_continuous_on(beta, t, Branch::Auxiliary).unwrap().rate;
        prop_assert!((a - b).abs() < 1e-10);
    }
}
