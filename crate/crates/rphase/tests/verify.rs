use num_complex::Complex64;
use proptest::prelude::*;

use rphase::circuit::{Circuit, Gate, QubitId, QubitRole, TargetSpec};
use rphase::constructions;
use rphase::ring::{Amplitude, Backend, RingElement};
use rphase::verify::{
    check_implements, global_phase_equal, is_special_form, marker_phase_table,
    permutation_parity, phase_permutation, unitary_columns, SimError, StateVector, Unitary,
};

fn q(i: usize) -> QubitId {
    QubitId(i)
}

fn with_extra(base: Vec<Gate>, extra: Vec<Gate>, width: usize, role: QubitRole) -> Circuit {
    let mut c = Circuit::new(width).with_role(width - 1, role);
    c.extend(base).unwrap();
    c.extend(extra).unwrap();
    c
}

#[test]
fn dirty_ancilla_phase_must_not_depend_on_it() {
    let spec = TargetSpec::tof(&[0, 1], 2);
    let ok = with_extra(vec![Gate::ccx(0, 1, 2)], vec![], 4, QubitRole::DirtyAncilla);
    assert!(check_implements(&ok, &spec).unwrap().passed(&spec));

    let leaky = with_extra(
        vec![Gate::ccx(0, 1, 2)],
        vec![Gate::Z(q(3))],
        4,
        QubitRole::DirtyAncilla,
    );
    let r = check_implements(&leaky, &spec).unwrap();
    assert!(r.relative_phase && !r.ancilla_ok && !r.passed(&spec));
}

#[test]
fn clean_ancilla_must_return_to_zero() {
    let spec = TargetSpec::tof(&[0, 1], 2);
    let c = with_extra(
        vec![Gate::ccx(0, 1, 2)],
        vec![Gate::X(q(3))],
        4,
        QubitRole::CleanAncilla,
    );
    let r = check_implements(&c, &spec).unwrap();
    assert!(!r.ancilla_ok);
    // A phase on a clean ancilla is invisible: only |0⟩ is ever supplied.
    let c = with_extra(
        vec![Gate::ccx(0, 1, 2)],
        vec![Gate::Z(q(3))],
        4,
        QubitRole::CleanAncilla,
    );
    assert!(check_implements(&c, &spec).unwrap().exact);
    assert_eq!(check_implements(&c, &spec).unwrap().columns, 8);
}

#[test]
fn global_phase_is_separated_from_exact() {
    let spec = TargetSpec::tof(&[0, 1], 2);
    let mut g = vec![Gate::ccx(0, 1, 2)];
    // XZXZ = −I
    g.extend([Gate::X(q(0)), Gate::Z(q(0)), Gate::X(q(0)), Gate::Z(q(0))]);
    let c = Circuit::from_gates(3, g).unwrap();
    let r = check_implements(&c, &spec).unwrap();
    assert!(!r.exact && r.global_phase && r.relative_phase);

    let a = phase_permutation::<RingElement>(&c).unwrap();
    let b = phase_permutation::<RingElement>(&Circuit::from_gates(3, vec![Gate::ccx(0, 1, 2)]).unwrap()).unwrap();
    assert!(global_phase_equal(&a, &b));
}

#[test]
fn special_form_types() {
    let ccix = constructions::srtof3_ccix();
    let u = phase_permutation::<RingElement>(&ccix.circuit).unwrap();
    assert!(is_special_form(&u, &ccix.target, &[q(2)]));
    let rtl = constructions::rtof3_long();
    let v = phase_permutation::<RingElement>(&rtl.circuit).unwrap();
    assert!(!is_special_form(&v, &rtl.target, &[q(2)]));
    let spec = TargetSpec::srtof(&[0, 1], 2, &[2]);
    let r = check_implements(&rtl.circuit, &spec).unwrap();
    assert!(r.relative_phase && !r.special_form.holds);
}

#[test]
fn marker_tables_are_row_phases() {
    use rphase::circuit::MarkerKind;
    let i = RingElement::i();
    let d = marker_phase_table(MarkerKind::Rtof3L).unwrap();
    assert_eq!(&d[5..], &[-RingElement::ONE, -i, i]);
    assert!(marker_phase_table(MarkerKind::Rtof3S).is_none());
}

#[test]
fn non_phase_permutations_are_reported() {
    let c = Circuit::from_gates(2, vec![Gate::H(q(0))]).unwrap();
    assert_eq!(
        check_implements(&c, &TargetSpec::identity()),
        Err(SimError::NotPhasePermutation { column: 0 })
    );
    match unitary_columns::<RingElement>(&c).unwrap() {
        Unitary::Dense(m) => {
            assert_eq!(m.entry(2, 0), RingElement::inv_sqrt2());
            assert_eq!(m.entry(2, 2), -RingElement::inv_sqrt2());
        }
        Unitary::PhasePermutation(_) => panic!("H is not a phase permutation"),
    }
}

#[test]
fn width_limit() {
    let c = Circuit::new(17);
    assert!(matches!(
        check_implements(&c, &TargetSpec::identity()),
        Err(SimError::WidthLimit { width: 17, .. })
    ));
}

#[test]
fn odd_angles_select_the_float_backend() {
    let c = &constructions::margolus_variants()[2];
    let r = check_implements(&c.circuit, &c.target).unwrap();
    assert_eq!(r.backend, Backend::Float);
    assert!(r.relative_phase);
}

#[test]
fn report_json_shape() {
    let c = constructions::toffoli3();
    let r = check_implements(&c.circuit, &c.target).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["ancilla_ok", "backend", "exact", "global_phase", "relative_phase", "special_form"]
    );
    assert_eq!(v["backend"], "ring");
}

fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    let q = 0..width;
    prop_oneof![
        q.clone().prop_map(|q| Gate::T(QubitId(q))),
        q.clone().prop_map(|q| Gate::H(QubitId(q))),
        q.clone().prop_map(|q| Gate::Y(QubitId(q))),
        (q.clone(), -4i32..=4).prop_map(|(q, m)| Gate::ry(q, 2 * m)),
        (q.clone(), q.clone())
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| Gate::cx(a, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_norm_is_exactly_one(gates in prop::collection::vec(arb_gate(3), 0..25), input in 0u64..8) {
        let mut s = StateVector::<RingElement>::basis(3, input);
        for g in &gates {
            s.apply_gate(g).unwrap();
        }
        prop_assert_eq!(s.norm_squared(), RingElement::ONE);
    }

    #[test]
    fn backends_agree(gates in prop::collection::vec(arb_gate(3), 0..25), input in 0u64..8) {
        let mut r = StateVector::<RingElement>::basis(3, input);
        let mut f = StateVector::<Complex64>::basis(3, input);
        for g in &gates {
            r.apply_gate(g).unwrap();
            f.apply_gate(g).unwrap();
        }
        for i in 0..8 {
            prop_assert!((r.amplitude(i).to_complex() - f.amplitude(i)).norm() < 1e-9);
        }
    }

    #[test]
    fn inverse_undoes_phase_permutations(perm in prop::collection::vec(0usize..4, 3)) {
        // A random classical-plus-phase circuit on 3 qubits.
        let gates: Vec<Gate> = perm.iter().enumerate().map(|(i, &k)| match k {
            0 => Gate::T(QubitId(i)),
            1 => Gate::cx(i, (i + 1) % 3),
            2 => Gate::ccx((i + 1) % 3, (i + 2) % 3, i),
            _ => Gate::P(QubitId(i)),
        }).collect();
        let u = phase_permutation::<RingElement>(&Circuit::from_gates(3, gates).unwrap()).unwrap();
        prop_assert!(u.compose(&u.inverse()).approx_eq(&rphase::verify::PhasePermutation::identity(3)));
        prop_assert_eq!(permutation_parity(&u), permutation_parity(&u.inverse()));
    }
}
