//! Single-precision instantiation of the generic core.

use spinamp::closed_form::{standard_closed_form, verify_all, Verdict};
use spinamp::{
    chain_compose, eigenbasis, general_table, probabilities, spin_components, AmplitudeTable32, Direction32,
    PhaseConvention, Spin,
};

#[test]
fn f32_tables_are_unitary_to_single_precision() {
    let spin = Spin::new(2.0).unwrap();
    let a = Direction32::new(0.7, 1.3);
    let b = Direction32::new(2.1, 5.0);
    let c = Direction32::new(1.2, 0.4);
    let direct: AmplitudeTable32 = general_table(spin, &a, &c, PhaseConvention::Tabulated).unwrap();
    assert!(direct.unitarity_defect() < 1e-5);
    assert!(probabilities(&direct).stochastic_defect() < 1e-5);
    let composed = chain_compose(
        &general_table(spin, &a, &b, PhaseConvention::Tabulated).unwrap(),
        &general_table(spin, &b, &c, PhaseConvention::Tabulated).unwrap(),
    )
    .unwrap();
    assert!(composed.entries.max_abs_diff(&direct.entries) < 1e-5);
}

#[test]
fn f32_agrees_with_f64() {
    for twice in 1..=6 {
        let spin = Spin::from_twice(twice).unwrap();
        let single = eigenbasis(spin, &Direction32::new(1.1, 2.2), PhaseConvention::Canonical).unwrap();
        let double = eigenbasis(spin, &spinamp::Direction64::new(1.1, 2.2), PhaseConvention::Canonical).unwrap();
        assert!(single.cast::<f64>().max_abs_diff(&double) < 1e-5);
    }
    let ops = spin_components::<f32>(Spin::new(2.0).unwrap());
    assert_eq!(ops.x.get(1, 2).re, 6f32.sqrt() / 2.0);
}

#[test]
fn f32_standard_forms_match() {
    let table = eigenbasis(Spin::new(2.0).unwrap(), &Direction32::new(0.9, 0.3), PhaseConvention::Tabulated).unwrap();
    for (c, m_i) in (-2..=2).rev().enumerate() {
        for (r, m_f) in (-2..=2).rev().enumerate() {
            let form = standard_closed_form(m_i, m_f, 0.9f32, 0.3f32).unwrap();
            assert!((table.get(r, c) - form).norm() < 1e-5);
        }
    }
}

#[test]
fn f32_verification_has_same_verdicts_at_loose_tolerance() {
    let single = verify_all::<f32>(1e-4, 50, 3).unwrap();
    let double = verify_all::<f64>(1e-10, 50, 3).unwrap();
    let suspects = |rs: &[spinamp::closed_form::ErrataRecord]| {
        let mut v: Vec<_> =
            rs.iter().filter(|r| r.verdict == Verdict::SuspectedTypo).map(|r| r.equation_id.clone()).collect();
        v.sort();
        v
    };
    assert_eq!(suspects(&single), suspects(&double));
}
