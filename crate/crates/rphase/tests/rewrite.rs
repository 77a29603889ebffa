use proptest::prelude::*;

use rphase::circuit::{lower, Circuit, Gate, LoweringPolicy, MarkerKind, QubitId, QubitRole};
use rphase::constructions;
use rphase::rewrite::{
    apply_replacement, canonic_compose, canonic_decompose, cancel_adjacent_inverses,
    choose_implementation, find_conjugations, rewrite, Classification, ImplBlock, ImplChoice,
    RewriteError, RuleSet,
};
use rphase::ring::RingElement;
use rphase::verify::{phase_permutation, same_unitary};

/// TOF(a,b;x) · TOF(x,c;d) · TOF(a,b;x) with a clean ancilla x = 2.
fn one_ancilla_tof4() -> Circuit {
    let mut c = Circuit::new(5).with_role(2, QubitRole::CleanAncilla);
    c.extend([Gate::ccx(0, 1, 2), Gate::ccx(2, 3, 4), Gate::ccx(0, 1, 2)])
        .unwrap();
    c
}

#[test]
fn one_prop1_match_in_tof4() {
    let c = one_ancilla_tof4();
    let m = find_conjugations(&c);
    assert_eq!(m.len(), 1);
    assert_eq!((m[0].left_index, m[0].right_index), (0, 2));
    assert_eq!(m[0].classification, Classification::Prop1);
}

#[test]
fn tof4_rewrite_reaches_twelve_cnots() {
    let c = one_ancilla_tof4();
    let m = &find_conjugations(&c)[0];
    let choice = ImplChoice {
        block: ImplBlock::Marker(MarkerKind::Rtof3L),
        inverse: false,
        order: vec![0, 1],
    };
    let r = apply_replacement(&c, m, &choice).unwrap();
    let lowered = lower(&r, &LoweringPolicy::default()).unwrap();
    let report = rphase::circuit::count_resources(&lowered);
    assert_eq!((report.t, report.cnot, report.h), (15, 12, 6));
    assert!(same_unitary(&c, &lowered).unwrap());
    assert_eq!(
        report,
        constructions::tof4_clean().unwrap().report,
        "same counts as the generator"
    );
}

#[test]
fn toffoli_as_its_own_implementation_changes_nothing() {
    let c = one_ancilla_tof4();
    let m = &find_conjugations(&c)[0];
    let choice = ImplChoice {
        block: ImplBlock::Toffoli,
        inverse: false,
        order: vec![0, 1],
    };
    assert_eq!(apply_replacement(&c, m, &choice).unwrap(), c);
}

#[test]
fn no_repeated_toffoli_no_match() {
    let c = Circuit::from_gates(4, vec![Gate::ccx(0, 1, 2), Gate::ccx(1, 2, 3)]).unwrap();
    assert!(find_conjugations(&c).is_empty());
}

#[test]
fn arity_mismatch_is_reported() {
    let c = one_ancilla_tof4();
    let m = &find_conjugations(&c)[0];
    let choice = ImplChoice {
        block: ImplBlock::Marker(MarkerKind::Rtof4L),
        inverse: false,
        order: vec![0, 1, 2],
    };
    assert_eq!(
        apply_replacement(&c, m, &choice),
        Err(RewriteError::ArityMismatch {
            expected: 3,
            got: 4
        })
    );
}

/// TOFⁿ from a ladder of 3-qubit Toffolis with m − 2 dirty ancillae.
fn toffoli_ladder(m: usize) -> Circuit {
    // Controls 0..m, ancillae m..2m−2, target 2m−2.
    let c = |i: usize| i;
    let a = |i: usize| m + i;
    let t = 2 * m - 2;
    let mut down = vec![Gate::ccx(c(m - 1), a(m - 3), t)];
    for i in (1..m - 2).rev() {
        down.push(Gate::ccx(c(i + 1), a(i - 1), a(i)));
    }
    let mut v = down.clone();
    v.push(Gate::ccx(c(0), c(1), a(0)));
    v.extend(down.iter().rev().cloned());
    let mut gates = v.clone();
    gates.extend(v[1..v.len() - 1].iter().cloned());
    let mut circ = Circuit::new(2 * m - 1);
    for i in 0..m - 2 {
        circ.set_role(QubitId(a(i)), QubitRole::DirtyAncilla).unwrap();
    }
    circ.extend(gates).unwrap();
    circ
}

#[test]
fn ladder_pipeline_preserves_unitary_and_saves_t() {
    let c = toffoli_ladder(5);
    assert_eq!(c.width(), 9);
    let out = rewrite(&c, &RuleSet::default()).unwrap();
    assert!(!out.applied.is_empty());
    assert!(out.after.t < out.before.t, "{:?} -> {:?}", out.before, out.after);
    assert!(same_unitary(&c, &out.circuit).unwrap());
}

#[test]
fn rewrite_with_no_rules_is_identity() {
    let c = toffoli_ladder(4);
    let out = rewrite(&c, &RuleSet::none()).unwrap();
    assert!(!out.changed());
    assert_eq!(out.circuit, c);
}

#[test]
fn rule_names_parse() {
    let r: RuleSet = "prop1, prop3,cancel".parse().unwrap();
    assert!(r.prop1 && !r.prop2 && r.prop3 && r.cancel);
    assert!(matches!(
        "prop4".parse::<RuleSet>(),
        Err(RewriteError::UnknownRule(_))
    ));
}

#[test]
fn prop3_only_behind_its_flag() {
    // The middle block flips the target; control a is untouched.
    let c = Circuit::from_gates(
        4,
        vec![Gate::ccx(0, 1, 2), Gate::cx(3, 2), Gate::cx(3, 1), Gate::ccx(0, 1, 2)],
    )
    .unwrap();
    let m = &find_conjugations(&c)[0];
    assert_eq!(m.classification, Classification::Prop3);
    assert!(rewrite(&c, &RuleSet::default()).unwrap().applied.is_empty());
}

#[test]
fn prop3_applies_with_ccix_when_enabled() {
    // Middle block acts on the target only: the ccix phase lives on (a, b).
    let c = Circuit::from_gates(
        4,
        vec![Gate::ccx(0, 1, 2), Gate::cx(3, 2), Gate::ccx(0, 1, 2)],
    )
    .unwrap();
    let m = &find_conjugations(&c)[0];
    assert_eq!(m.classification, Classification::Prop3);
    let choice = choose_implementation(m).expect("ccix fits");
    assert_eq!(choice.block, ImplBlock::Marker(MarkerKind::Srtof3));
    let rules = RuleSet {
        prop3: true,
        cancel: false,
        ..RuleSet::default()
    };
    let out = rewrite(&c, &rules).unwrap();
    assert_eq!(out.applied.len(), 1);
    assert!(same_unitary(&c, &out.circuit).unwrap());
}

fn unitary(gates: Vec<Gate>, width: usize) -> rphase::verify::PhasePermutation<RingElement> {
    phase_permutation(&Circuit::from_gates(width, gates).unwrap()).unwrap()
}

#[test]
fn canonic_decomposition_examples() {
    let one = RingElement::ONE;
    let i = RingElement::i();
    let u = unitary(constructions::blocks::rtof3_long(0, 1, 2), 3);
    let (spec, d) = canonic_decompose(&u).unwrap();
    assert_eq!(d, vec![one, one, one, one, one, -one, -i, i]);
    assert_eq!(canonic_compose(&spec, &d), u);

    let tof = unitary(vec![Gate::ccx(0, 1, 2)], 3);
    assert_eq!(canonic_decompose(&tof).unwrap().1, vec![one; 8]);

    let ccix = unitary(constructions::blocks::srtof3_ccix(0, 1, 2), 3);
    let d = canonic_decompose(&ccix).unwrap().1;
    assert_eq!((d[6], d[7]), (i, i));

    let not_tof = unitary(vec![Gate::cx(0, 1)], 3);
    assert_eq!(canonic_decompose(&not_tof), Err(RewriteError::NotRelativePhase));
}

#[test]
fn cancellation_examples() {
    let t = |q| Gate::T(QubitId(q));
    let c = Circuit::from_gates(1, vec![t(0), Gate::Tdg(QubitId(0))]).unwrap();
    assert!(cancel_adjacent_inverses(&c).is_empty());
    let minimal = constructions::toffoli3().circuit;
    assert_eq!(cancel_adjacent_inverses(&minimal), minimal);
}

fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    let q = 0..width;
    prop_oneof![
        q.clone().prop_map(|q| Gate::T(QubitId(q))),
        q.clone().prop_map(|q| Gate::Tdg(QubitId(q))),
        q.clone().prop_map(|q| Gate::H(QubitId(q))),
        q.clone().prop_map(|q| Gate::P(QubitId(q))),
        q.clone().prop_map(|q| Gate::X(QubitId(q))),
        (q.clone(), q.clone())
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| Gate::cx(a, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cancellation_is_sound_and_idempotent(gates in prop::collection::vec(arb_gate(4), 0..30)) {
        let c = Circuit::from_gates(4, gates).unwrap();
        let once = cancel_adjacent_inverses(&c);
        prop_assert_eq!(cancel_adjacent_inverses(&once), once.clone());
        prop_assert!(same_unitary(&c, &once).unwrap());
        prop_assert!(once.len() <= c.len());
    }

    #[test]
    fn circuit_followed_by_inverse_cancels(gates in prop::collection::vec(arb_gate(3), 0..20)) {
        let c = Circuit::from_gates(3, gates).unwrap();
        let mut both = c.clone();
        both.append(&c.inverse()).unwrap();
        prop_assert!(cancel_adjacent_inverses(&both).is_empty());
    }

    #[test]
    fn decompose_then_compose_is_identity(perm in 0usize..6, kind in 0usize..3) {
        let orders = [[0, 1], [1, 0]];
        let blocks = [MarkerKind::Rtof3L, MarkerKind::Srtof3, MarkerKind::Rtof3L];
        let order = orders[perm % 2];
        let mut args = order.to_vec();
        args.push(2);
        let mut g = vec![Gate::marker(blocks[kind], &args)];
        if kind == 2 {
            g[0] = g[0].inverse();
        }
        let u = unitary(g, 3);
        let (spec, d) = canonic_decompose(&u).unwrap();
        prop_assert_eq!(canonic_compose(&spec, &d), u);
    }
}
