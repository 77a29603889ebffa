use proptest::prelude::*;

use rphase::circuit::qasm::{emit_qasm, parse_qasm, ParseError, ParseOptions};
use rphase::circuit::{Circuit, Gate, MarkerKind, QubitId, QubitRole};
use rphase::constructions::{self, CatalogRequest};
use rphase::verify::same_unitary;

fn parse(src: &str) -> Result<Circuit, ParseError> {
    parse_qasm(src, ParseOptions::default())
}

fn strict(src: &str) -> Result<Circuit, ParseError> {
    parse_qasm(src, ParseOptions { strict: true })
}

const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n";

#[test]
fn catalog_round_trips() {
    let req = CatalogRequest {
        n: Some(6),
        k: Some(4),
        ..CatalogRequest::default()
    };
    for (name, _) in constructions::CATALOG {
        let c = constructions::build(name, &req).unwrap().circuit;
        let back = parse(&emit_qasm(&c)).unwrap();
        assert_eq!(back, c, "{name}");
    }
}

#[test]
fn roles_survive() {
    let c = constructions::tofn_dirty(6).unwrap().circuit;
    let back = parse(&emit_qasm(&c)).unwrap();
    assert_eq!(back.roles(), c.roles());
    assert!(back.roles().contains(&QubitRole::DirtyAncilla));
}

#[test]
fn strict_mode_keeps_native_gates_only() {
    let c = Circuit::from_gates(3, vec![Gate::marker(MarkerKind::Srtof3, &[0, 1, 2])]).unwrap();
    let text = emit_qasm(&c);
    assert!(matches!(
        strict(&text),
        Err(ParseError::MarkerInStrictMode { .. })
    ));

    // A plain ccx is wrapped in metadata but still reads back natively.
    let plain = Circuit::from_gates(3, vec![Gate::ccx(0, 1, 2)]).unwrap();
    let s = strict(&emit_qasm(&plain)).unwrap();
    assert_eq!(s, plain);
}

#[test]
fn marker_blocks_read_back_as_markers() {
    let c = Circuit::from_gates(3, vec![Gate::marker(MarkerKind::Rtof3L, &[0, 1, 2])]).unwrap();
    let text = emit_qasm(&c);
    assert!(text.contains("\"begin\""));
    assert_eq!(parse(&text).unwrap(), c);
}

#[test]
fn angles() {
    let c = parse(&format!(
        "{HEADER}ry(pi/4) q[0];\nry(-pi/2) q[1];\nry(3*pi/4) q[2];\nry(0.7853981633974483) q[0];\nry(pi) q[1];\n"
    ))
    .unwrap();
    assert_eq!(
        c.gates(),
        &[
            Gate::ry(0, 1),
            Gate::ry(1, -2),
            Gate::ry(2, 3),
            Gate::ry(0, 1),
            Gate::ry(1, 4)
        ]
    );
    assert!(parse(&format!("{HEADER}ry(pi/3) q[0];\n")).is_err());
}

#[test]
fn error_positions() {
    match parse(&format!("{HEADER}h q[0];\n  rz(pi) q[1];\n")) {
        Err(ParseError::UnsupportedGate { line, column, name }) => {
            assert_eq!((line, column, name.as_str()), (5, 3, "rz"));
        }
        other => panic!("{other:?}"),
    }
    match parse(&format!("{HEADER}cx q[0],q[7];\n")) {
        Err(ParseError::Syntax { line, message, .. }) => {
            assert_eq!(line, 4);
            assert!(message.contains("out of range"));
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse("OPENQASM 2.0;\nqreg q[2]\nh q[0];\n"),
        Err(ParseError::Syntax { line: 2, .. })
    ));
    assert!(matches!(
        parse(&format!("{HEADER}// rphase: {{\"begin\": 5}}\n")),
        Err(ParseError::Syntax { line: 4, .. })
    ));
}

#[test]
fn errors_display_their_position() {
    let e = parse(&format!("{HEADER}foo q[0];\n")).unwrap_err();
    assert!(e.to_string().starts_with("4:1:"), "{e}");
}

fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    let q = 0..width;
    let pair = (q.clone(), q.clone()).prop_filter("distinct", |(a, b)| a != b);
    prop_oneof![
        q.clone().prop_map(|q| Gate::H(QubitId(q))),
        q.clone().prop_map(|q| Gate::T(QubitId(q))),
        q.clone().prop_map(|q| Gate::Tdg(QubitId(q))),
        q.clone().prop_map(|q| Gate::P(QubitId(q))),
        q.clone().prop_map(|q| Gate::Y(QubitId(q))),
        (q.clone(), -8i32..=8).prop_map(|(q, m)| Gate::ry(q, m)),
        pair.clone().prop_map(|(a, b)| Gate::cx(a, b)),
        pair.prop_map(|(a, b)| Gate::cz(a, b)),
        Just(Gate::ccx(0, 1, 2)),
        Just(Gate::marker(MarkerKind::Rtof3L, &[2, 0, 1])),
        Just(Gate::marker(MarkerKind::Srtof3, &[0, 1, 3]).inverse()),
        Just(Gate::marker(MarkerKind::Rtof4L, &[0, 1, 2, 3])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn emit_then_parse_is_identity(gates in prop::collection::vec(arb_gate(4), 0..30)) {
        let c = Circuit::from_gates(4, gates).unwrap();
        let back = parse(&emit_qasm(&c)).unwrap();
        prop_assert_eq!(&back, &c);
    }

    #[test]
    fn strict_parse_of_native_text_is_equivalent(gates in prop::collection::vec(arb_gate(4), 0..15)) {
        let c = Circuit::from_gates(4, gates).unwrap();
        let lowered = rphase::circuit::lower(&c, &Default::default()).unwrap();
        let s = strict(&emit_qasm(&lowered)).unwrap();
        prop_assert!(same_unitary(&s, &c).unwrap());
    }
}
