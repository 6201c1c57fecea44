mod common;

use common::*;
use spinamp::simulate::{
    analytic_chain_probabilities, compare, run_chain, stage_conditionals, ChainSpec, MeasurementChain, Stage,
    DEFAULT_SEED,
};
use spinamp::{Direction64, Projection};

fn p(m: i32) -> Projection {
    Projection::int(m)
}

fn stage(dir: Direction64, select: Option<i32>) -> Stage<f64> {
    Stage { direction: dir, select: select.map(p) }
}

fn canonical_chains() -> Vec<MeasurementChain<f64>> {
    let z = Direction64::z();
    let x = Direction64::x();
    vec![
        MeasurementChain::new(spin2(), z, p(2), vec![stage(x, None)]).unwrap(),
        MeasurementChain::new(spin2(), z, p(2), vec![stage(z, None)]).unwrap(),
        MeasurementChain::new(spin2(), z, p(2), vec![stage(x, Some(2)), stage(z, None)]).unwrap(),
    ]
}

#[test]
fn canonical_chains_pass_z_test_at_one_million() {
    for chain in canonical_chains() {
        let result = run_chain(&chain, 1_000_000, DEFAULT_SEED).unwrap();
        let report = compare(&result);
        assert!(!report.flagged, "{report:?}");
        assert!(report.max_abs_z < 5.0);
        let total: u64 = result.counts.values().sum::<u64>() + result.discarded;
        assert_eq!(total, 1_000_000);
    }
}

#[test]
fn z_to_x_frequencies_within_four_sigma() {
    let chain = &canonical_chains()[0];
    let result = run_chain(chain, 1_000_000, DEFAULT_SEED).unwrap();
    let expected = [1.0 / 16.0, 0.25, 0.375, 0.25, 1.0 / 16.0];
    for (k, prob) in expected.iter().enumerate() {
        let count = result.counts.get(&vec![p(2 - k as i32)]).copied().unwrap_or(0);
        let freq = count as f64 / 1e6;
        assert!((freq - prob).abs() < 4.0 * (prob * (1.0 - prob) / 1e6).sqrt());
    }
}

#[test]
fn counts_do_not_depend_on_thread_count() {
    let chain = &canonical_chains()[2];
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = single.install(|| run_chain(chain, 300_000, 42).unwrap());
    let b = many.install(|| run_chain(chain, 300_000, 42).unwrap());
    assert_eq!(a.counts, b.counts);
    assert_eq!(a.discarded, b.discarded);
}

#[test]
fn different_seeds_give_different_counts() {
    let chain = &canonical_chains()[0];
    let a = run_chain(chain, 100_000, 1).unwrap();
    let b = run_chain(chain, 100_000, 2).unwrap();
    assert_ne!(a.counts, b.counts);
}

#[test]
fn analytic_joint_sums_to_one_and_conditionals_are_stochastic() {
    let mut rng = rng(20);
    for spin in spins() {
        let dirs: Vec<_> = (0..3).map(|_| random_direction(&mut rng)).collect();
        let chain =
            MeasurementChain::new(spin, dirs[0], spin.level(0), vec![stage(dirs[1], None), stage(dirs[2], None)])
                .unwrap();
        let analytic = analytic_chain_probabilities(&chain).unwrap();
        let total: f64 = analytic.joint.values().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((analytic.acceptance - 1.0).abs() < 1e-12);
        for table in stage_conditionals(&chain).unwrap() {
            for s in table.column_sums() {
                assert!((s - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn repeated_axis_is_idempotent() {
    let mut rng = rng(21);
    for _ in 0..10 {
        let (a, b) = (random_direction(&mut rng), random_direction(&mut rng));
        let single = MeasurementChain::new(spin2(), a, p(1), vec![stage(b, None)]).unwrap();
        let double = MeasurementChain::new(spin2(), a, p(1), vec![stage(b, None), stage(b, None)]).unwrap();
        let once = analytic_chain_probabilities(&single).unwrap();
        let twice = analytic_chain_probabilities(&double).unwrap();
        for (outcome, prob) in &once.joint {
            let m = outcome[0];
            assert_eq!(twice.joint[&vec![m, m]], *prob);
            for other in spin2().levels().filter(|&o| o != m) {
                assert_eq!(twice.joint[&vec![m, other]], 0.0);
            }
        }
    }
}

#[test]
fn post_selection_reports_joint_and_conditional() {
    let chain = &canonical_chains()[2];
    let analytic = analytic_chain_probabilities(chain).unwrap();
    let joint = analytic.joint[&vec![p(2), p(2)]];
    assert!((joint - 1.0 / 256.0).abs() < 1e-15);
    assert!((analytic.acceptance - 1.0 / 16.0).abs() < 1e-15);
    assert!((analytic.post_selected[&vec![p(2), p(2)]] - 1.0 / 16.0).abs() < 1e-14);
    let conditional_sum: f64 = analytic.post_selected.values().sum();
    assert!((conditional_sum - 1.0).abs() < 1e-12);
}

#[test]
fn half_integer_chain_from_json() {
    let spec = ChainSpec::from_json(
        r#"{"spin": 1.5, "prepare": {"theta": 0, "phi": 0, "m": -0.5},
            "stages": [{"theta": 90, "phi": 90}, {"theta": 45, "phi": 0, "select": 1.5}]}"#,
    )
    .unwrap();
    let chain = spec.to_chain(true).unwrap();
    let result = run_chain(&chain, 200_000, DEFAULT_SEED).unwrap();
    assert!(!compare(&result).flagged);
    assert!(result.counts.keys().all(|o| o[1] == Projection::from_twice(3)));
}

#[test]
fn malformed_chain_errors_name_the_field() {
    let cases = [
        (r#"{"spin": 2, "prepare": {"theta": 0, "phi": 0, "m": 3}, "stages": [{"theta": 0, "phi": 0}]}"#, "prepare.m"),
        (r#"{"spin": 2, "prepare": {"theta": 0, "phi": 0, "m": 2}, "stages": []}"#, "stages"),
        (
            r#"{"spin": 2, "prepare": {"theta": 0, "phi": 0, "m": 2}, "stages": [{"theta": 0, "phi": 0, "select": 0.5}]}"#,
            "stages[0].select",
        ),
        (r#"{"spin": 0.3, "prepare": {"theta": 0, "phi": 0, "m": 0}, "stages": [{"theta": 0, "phi": 0}]}"#, "spin"),
        (r#"{"spin": 2, "prepare": {"theta": 0, "phi": 0}, "stages": []}"#, "m"),
    ];
    for (text, field) in cases {
        let err = ChainSpec::from_json(text).and_then(|s| s.to_chain(false)).unwrap_err().to_string();
        assert!(err.contains(field), "{err} should mention {field}");
    }
}
