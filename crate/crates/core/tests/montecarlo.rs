use hgraphon::model::example_three_block;
use hgraphon::montecarlo::{trial_seed, Z_95};
use hgraphon::{run_experiment, wilson_interval, GeneralGraphon, Rational};

/// Endpoints of `{p : |k - n p| <= z sqrt(n p (1 - p))}` found by bisection.
fn score_inversion(k: usize, n: usize, z: f64) -> (f64, f64) {
    let (kf, nf) = (k as f64, n as f64);
    let stat = |p: f64| (kf - nf * p).abs() / (nf * p * (1.0 - p)).sqrt();
    let phat = kf / nf;
    let bisect = |mut inside: f64, mut outside: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (inside + outside);
            if stat(mid) <= z {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        0.5 * (inside + outside)
    };
    let lo = if k == 0 { 0.0 } else { bisect(phat, 0.0) };
    let hi = if k == n { 1.0 } else { bisect(phat, 1.0) };
    (lo, hi)
}

/// Binomial pmf by the ratio recurrence.
fn binomial_pmf(n: usize, p: f64) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    out[0] = (1.0 - p).powi(n as i32);
    for k in 1..=n {
        out[k] = out[k - 1] * (n - k + 1) as f64 / k as f64 * p / (1.0 - p);
    }
    out
}

#[test]
fn wilson_matches_score_test_inversion() {
    for n in 1..=30 {
        for k in 0..=n {
            let (lo, hi) = wilson_interval(k, n, Z_95);
            let (olo, ohi) = score_inversion(k, n, Z_95);
            assert!(
                (lo - olo).abs() < 1e-9 && (hi - ohi).abs() < 1e-9,
                "k={k} n={n}: {lo},{hi} vs {olo},{ohi}"
            );
        }
    }
}

#[test]
fn wilson_coverage_is_close_to_nominal() {
    for n in [10, 20, 30] {
        let intervals: Vec<(f64, f64)> = (0..=n).map(|k| wilson_interval(k, n, Z_95)).collect();
        let grid: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        let mean: f64 = grid
            .iter()
            .map(|&p| {
                binomial_pmf(n, p)
                    .iter()
                    .zip(&intervals)
                    .filter(|(_, (lo, hi))| *lo <= p && p <= *hi)
                    .map(|(w, _)| w)
                    .sum::<f64>()
            })
            .sum::<f64>()
            / grid.len() as f64;
        assert!((0.93..=0.97).contains(&mean), "n={n}: mean coverage {mean}");
    }
}

#[test]
fn trial_seeds_are_distinct() {
    let mut seen = std::collections::HashSet::new();
    for n in [10, 20, 50] {
        for t in 0..1000 {
            assert!(seen.insert(trial_seed(7, n, t)));
        }
    }
}

#[test]
fn experiments_reproduce_across_thread_counts() {
    let g = GeneralGraphon::Step(example_three_block());
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                run_experiment(&g, "fig", &[20, 40], 30, 5)
                    .unwrap()
                    .to_csv(false)
            })
    };
    let one = run(1);
    assert_eq!(one, run(8));
    assert_eq!(one.lines().count(), 3);
}

#[test]
fn complete_graphs_always_decompose() {
    let g = GeneralGraphon::constant(Rational::from_integer(1.into())).unwrap();
    let report = run_experiment(&g, "one", &[1, 2, 3, 10], 10, 0).unwrap();
    let freqs: Vec<f64> = report.rows.iter().map(|r| r.frequency).collect();
    assert_eq!(freqs, vec![0.0, 1.0, 1.0, 1.0]);
}

#[test]
fn invalid_parameters_are_rejected() {
    let g = GeneralGraphon::Step(example_three_block());
    assert!(run_experiment(&g, "x", &[10], 0, 0).is_err());
    assert!(run_experiment(&g, "x", &[0], 5, 0).is_err());
    assert!(run_experiment(&g, "x", &[], 5, 0).is_err());
}
