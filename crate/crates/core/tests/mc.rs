use polymer_core::exact::{joint_law_exact, polymer_law, JointLawOptions};
use polymer_core::mc::{
    brownian_range_mc, corollary_bound_check, exhaustive_range_fraction, polymer_estimate_tilted, sample_walk,
    BrownianOptions, McEstimate, McOptions, Observable, Proposal,
};

fn within(e: &McEstimate, exact: f64, k: f64) -> bool {
    (e.mean - exact).abs() <= k * e.std_error
}

#[test]
fn free_walk_range_matches_exact_law() {
    let n = 1000;
    let law = joint_law_exact(n, JointLawOptions { cap: n }).unwrap();
    let exact: f64 = law.range_marginal().iter().map(|&(r, p)| r as f64 * p).sum::<f64>() / n as f64;
    // independent check: E R = 1 + Σ_{k<n} P(S_1..S_k ≠ 0) = 1 + Σ_k C(2j, j) 4^{-j}, j = ⌊k/2⌋
    let mut no_return = 1.0;
    let mut sum = 1.0;
    for k in 1..n {
        if k % 2 == 0 {
            let j = (k / 2) as f64;
            no_return *= (2.0 * j - 1.0) / (2.0 * j);
        }
        sum += no_return;
    }
    assert!((exact - sum / n as f64).abs() < 1e-12);

    let options = McOptions::new(11, 100_000);
    let ranges: Vec<f64> = options
        .run(|i| sample_walk(1, n, 11, i).unwrap().range as f64 / n as f64)
        .unwrap();
    let est = McEstimate::from_values(&ranges);
    assert!(within(&est, exact, 3.0), "{est:?} vs {exact}");
}

#[test]
fn planar_range_fraction_trend() {
    let options = McOptions::new(5, 2_000);
    let mean = |n: usize| {
        let v: Vec<f64> = options.run(|i| sample_walk(2, n, 5, i).unwrap().range as f64 / n as f64).unwrap();
        McEstimate::from_values(&v).mean
    };
    let (a, b) = (mean(100), mean(1000));
    println!("d = 2 range fraction: n = 100 -> {a:.4}, n = 1000 -> {b:.4}");
    assert!(a > 0.0 && b > 0.0 && a <= 1.0 && b <= 1.0);
}

#[test]
fn tilted_and_naive_proposals_agree() {
    let (beta, n) = (0.3, 30);
    let options = McOptions::new(21, 40_000);
    for obs in [Observable::PositiveEndpointSpeed, Observable::RangeFraction, Observable::EndpointSpeed] {
        let tilted = polymer_estimate_tilted(beta, n, obs, Proposal::for_observable(beta, obs).unwrap(), options).unwrap();
        let naive = polymer_estimate_tilted(beta, n, obs, Proposal::Naive, options).unwrap();
        let combined = (tilted.std_error.powi(2) + naive.std_error.powi(2)).sqrt();
        assert!((tilted.mean - naive.mean).abs() <= 3.0 * combined, "{obs:?}: {tilted:?} vs {naive:?}");
        assert!(tilted.effective_sample_size <= tilted.samples as f64);
    }
}

#[test]
fn tilted_estimates_match_exact_law() {
    let (beta, n) = (1.0, 60);
    let polymer = polymer_law(beta, &joint_law_exact(n, JointLawOptions::default()).unwrap()).unwrap();
    let options = McOptions::new(3, 20_000);
    let obs = Observable::PositiveEndpointSpeed;
    let speed = polymer_estimate_tilted(beta, n, obs, Proposal::for_observable(beta, obs).unwrap(), options).unwrap();
    assert!(within(&speed, polymer.conditional_speed_mean(), 3.0));
    let obs = Observable::RangeFraction;
    let range = polymer_estimate_tilted(beta, n, obs, Proposal::for_observable(beta, obs).unwrap(), options).unwrap();
    assert!(within(&range, polymer.range_fraction_mean(), 3.0));
    let naive = polymer_estimate_tilted(beta, n, obs, Proposal::Naive, options).unwrap();
    assert!(range.effective_sample_size > 10.0 * naive.effective_sample_size);
}

#[test]
fn zero_beta_drift_correction() {
    let options = McOptions::new(8, 20_000);
    let e = polymer_estimate_tilted(0.0, 100, Observable::EndpointSpeed, Proposal::Tilted(0.3), options).unwrap();
    assert!(within(&e, 0.0, 3.0), "{e:?}");
    assert_eq!(Proposal::for_observable(0.0, Observable::RangeFraction).unwrap(), Proposal::Naive);
    assert!(polymer_estimate_tilted(0.0, 10, Observable::PositiveEndpointCdf(0.0), Proposal::Naive, options).is_err());
    assert!(polymer_estimate_tilted(1.0, 10, Observable::RangeFraction, Proposal::Tilted(1.0), options).is_err());
}

#[test]
fn results_do_not_depend_on_threads() {
    let obs = Observable::RangeFraction;
    let proposal = Proposal::for_observable(1.0, obs).unwrap();
    let run = |threads| {
        polymer_estimate_tilted(1.0, 120, obs, proposal, McOptions { seed: 7, samples: 5_000, threads: Some(threads) })
            .unwrap()
    };
    let a = run(1);
    assert_eq!(a, run(3));
    assert_eq!(a, run(1));
}

#[test]
fn zero_threads_rejected() {
    let options = McOptions { seed: 1, samples: 10, threads: Some(0) };
    assert!(polymer_estimate_tilted(1.0, 10, Observable::RangeFraction, Proposal::Naive, options).is_err());
}

#[test]
fn corollary_zero_beta_is_plain_walk() {
    let (d, n) = (2, 100);
    let options = McOptions::new(4, 5_000);
    let report = corollary_bound_check(0.0, d, n, options).unwrap();
    let plain: Vec<f64> = options.run(|i| sample_walk(d, n, 4, i).unwrap().range as f64 / n as f64).unwrap();
    let plain = McEstimate::from_values(&plain);
    assert!((report.estimate.mean - plain.mean).abs() < 1e-12);
    assert_eq!(report.bound, 0.0);
    assert!(corollary_bound_check(1.0, 1, n, options).is_err());
}

#[test]
fn corollary_near_self_avoiding_regime() {
    let exact = exhaustive_range_fraction(2, 8.0, 12).unwrap();
    let mc = corollary_bound_check(8.0, 2, 12, McOptions::new(9, 100_000)).unwrap();
    assert!(within(&mc.estimate, exact, 3.0), "{:?} vs {exact}", mc.estimate);
    assert!(exact > 0.95);
    // at n = 50 plain walks almost never self-avoid: the weights collapse and the report says so
    let big = corollary_bound_check(8.0, 2, 50, McOptions::new(9, 20_000)).unwrap();
    println!("beta = 8, d = 2, n = 50: {:?}, reliable = {}", big.estimate, big.reliable);
    assert!(!big.reliable && big.estimate.low_ess_warning);
    assert!(big.estimate.mean > big.bound && big.estimate.mean <= 1.0);
    let report = corollary_bound_check(2.0, 2, 200, McOptions::new(9, 5_000)).unwrap();
    assert!((report.bound - 0.5906).abs() < 1e-4);
    println!("beta = 2, d = 2, n = 200: {:?}, soft check {}", report.estimate, report.soft_check_passed);
}

#[test]
fn brownian_symmetry_and_scaling() {
    let mc = McOptions::new(2, 4_000);
    let one = brownian_range_mc(BrownianOptions::new(1.0, 1e-4), mc).unwrap();
    assert!(within(&one.positive_fraction, 0.5, 3.0));
    let four = brownian_range_mc(BrownianOptions::new(4.0, 4e-4), McOptions::new(3, 4_000)).unwrap();
    // same bins in units of √t: densities scale by √4
    let mut outliers = 0;
    for i in 0..one.range.counts.len() {
        let (a, b) = (one.range.density(i), 2.0 * four.range.density(i));
        let se = (one.range.std_error(i).powi(2) + (2.0 * four.range.std_error(i)).powi(2)).sqrt();
        if (a - b).abs() > 3.0 * se + 1e-12 {
            outliers += 1;
        }
    }
    assert!(outliers <= 2, "{outliers} bins outside 3 combined standard errors");
    assert!(brownian_range_mc(BrownianOptions::new(1.0, 1e-3), mc).is_err());
}
