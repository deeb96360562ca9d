mod common;

use polymer_core::exact::{
    enumerate_joint_law, joint_law_exact, min_max_dp_law, polymer_law, reflection_min_max_endpoint, strip_probability,
    JointLawOptions,
};
use polymer_core::Error;
use proptest::prelude::*;

fn binomial_prob(n: usize, x: i64) -> f64 {
    if (x + n as i64) % 2 != 0 || x.unsigned_abs() as usize > n {
        return 0.0;
    }
    let k = ((n as i64 + x) / 2) as usize;
    let mut c = 1.0f64;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c / 2f64.powi(n as i32)
}

#[test]
fn three_routes_agree_entrywise() {
    for n in 1..=16 {
        let enumerated = enumerate_joint_law(n).unwrap();
        let reflected = joint_law_exact(n, JointLawOptions::default()).unwrap();
        let dp = min_max_dp_law(n).unwrap();
        assert!(reflected.max_abs_diff(&enumerated) <= 1e-12, "n = {n}");
        assert!(dp.max_abs_diff(&enumerated) <= 1e-12, "n = {n}");
    }
}

#[test]
fn reflection_matches_dynamic_program_at_moderate_n() {
    for n in [50, 101, 160] {
        let a = joint_law_exact(n, JointLawOptions::default()).unwrap();
        let b = min_max_dp_law(n).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-13, "n = {n}");
    }
}

#[test]
fn partition_functions_agree() {
    for n in 1..=16 {
        let enumerated = enumerate_joint_law(n).unwrap();
        let reflected = joint_law_exact(n, JointLawOptions::default()).unwrap();
        for beta in [0.1, 1.0, 5.0] {
            let a = polymer_law(beta, &enumerated).unwrap().partition();
            let b = polymer_law(beta, &reflected).unwrap().partition();
            assert!((a - b).abs() <= 1e-12 * a.max(1e-300).max(b), "n = {n}, beta = {beta}");
            assert!(((a / b) - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn law_invariants() {
    for n in [1, 2, 7, 30, 121] {
        let law = joint_law_exact(n, JointLawOptions::default()).unwrap();
        assert!((law.total_mass() - 1.0).abs() < 1e-12);
        for (x, r, p) in law.entries() {
            assert!(p > 0.0);
            assert!(x.unsigned_abs() as usize <= n && (1..=n).contains(&r));
            assert_eq!((x + n as i64).rem_euclid(2), 0);
        }
        let marginal = law.endpoint_marginal();
        for &(x, p) in &marginal {
            let mirror = marginal.iter().find(|e| e.0 == -x).unwrap().1;
            assert!((p - mirror).abs() <= 1e-13 * p.max(mirror), "n = {n}, x = {x}");
            assert!((p - binomial_prob(n, x)).abs() < 1e-13, "n = {n}, x = {x}");
        }
    }
}

fn support(marginal: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    marginal.into_iter().filter(|&(_, p)| p > 0.0).collect()
}

#[test]
fn small_examples() {
    let law = joint_law_exact(2, JointLawOptions::default()).unwrap();
    assert_eq!(support(law.range_marginal()), vec![(2, 1.0)]);
    assert_eq!(law.get(2, 2), 0.25);
    assert_eq!(law.get(0, 2), 0.5);
    let law = joint_law_exact(3, JointLawOptions::default()).unwrap();
    let r = law.range_marginal();
    assert!(r.contains(&(2, 0.5)) && r.contains(&(3, 0.5)));
    let law = joint_law_exact(1, JointLawOptions::default()).unwrap();
    assert_eq!(support(law.range_marginal()), vec![(1, 1.0)]);
    assert_eq!(reflection_min_max_endpoint(2, 0, 2, 2).unwrap(), 0.25);
    assert_eq!(reflection_min_max_endpoint(2, 0, 1, 0).unwrap(), 0.25);
    assert_eq!(reflection_min_max_endpoint(3, -1, 2, 0).unwrap(), 0.0);
}

#[test]
fn domain_and_caps() {
    assert!(reflection_min_max_endpoint(4, 1, 2, 1).is_err());
    assert!(reflection_min_max_endpoint(4, -2, -1, -1).is_err());
    assert!(reflection_min_max_endpoint(4, -1, 2, 3).is_err());
    assert!(matches!(joint_law_exact(601, JointLawOptions::default()), Err(Error::ResourceCap { .. })));
    assert!(joint_law_exact(30, JointLawOptions { cap: 30 }).is_ok());
    assert!(joint_law_exact(0, JointLawOptions::default()).is_err());
}

#[test]
fn partition_bounds() {
    // R_n ≤ n forces Z ≤ e^{-βn}; the straight path alone gives Z ≥ 2^{-(n-1)} e^{-βn}
    for n in [5, 20, 80] {
        let law = joint_law_exact(n, JointLawOptions::default()).unwrap();
        for beta in [0.1, 1.0, 5.0] {
            let log_z = polymer_law(beta, &law).unwrap().log_partition;
            let nf = n as f64;
            assert!(log_z <= -beta * nf + 1e-12);
            assert!(log_z >= -(nf - 1.0) * 2f64.ln() - beta * nf - 1e-12);
        }
    }
}

#[test]
fn tilted_law_is_the_reweighted_law() {
    let n = 40;
    let law = joint_law_exact(n, JointLawOptions::default()).unwrap();
    let beta = 0.8;
    let polymer = polymer_law(beta, &law).unwrap();
    let z = polymer.partition();
    for (x, r, p) in law.entries() {
        let expected = (-beta * (n * n) as f64 / r as f64).exp() * p / z;
        let got = polymer.tilted().get(x, r);
        assert!((got - expected).abs() <= 1e-12 * expected.max(1e-300), "({x}, {r})");
    }
    assert!((polymer.tilted().total_mass() - 1.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn reflection_matches_path_counts(n in 1usize..=12, lo in 0i64..=12, hi in 0i64..=12, x in -12i64..=12) {
        let (lower, upper) = (-lo.min(n as i64), hi.min(n as i64));
        prop_assume!(lower < upper && lower <= x && x <= upper);
        let counts = common::min_max_end_counts(n);
        let expected = *counts.get(&(lower, upper, x)).unwrap_or(&0) as f64 / 2f64.powi(n as i32);
        let got = reflection_min_max_endpoint(n, lower, upper, x).unwrap();
        prop_assert!((got - expected).abs() < 1e-14, "{got} vs {expected}");
    }

    #[test]
    fn strip_probability_is_a_probability(n in 1usize..=40, lo in 1i64..=20, hi in 1i64..=20, x in -20i64..=20) {
        let p = strip_probability(n, -lo, hi, x.clamp(-lo + 1, hi - 1)).unwrap();
        prop_assert!((-1e-15..=1.0 + 1e-15).contains(&p));
    }
}
