//! Three- and four-qubit blocks as standalone constructions.

use super::blocks;
use super::{Claim, Construction};
use crate::circuit::{Circuit, Control, Gate, QubitId, TargetSpec};

fn on(width: usize, gates: Vec<Gate>) -> Circuit {
    Circuit::from_gates(width, gates).expect("block qubits are within width")
}

/// Toffoli on (a, b; c) = qubits (0, 1; 2), exact.
pub fn toffoli3() -> Construction {
    Construction::new(
        "toffoli3",
        on(3, blocks::toffoli3(0, 1, 2)),
        TargetSpec::tof(&[0, 1], 2),
        Claim::counts(7, 6, 2),
        "15-gate Toffoli with the a/c gates at the end",
    )
    .expect("fixed block")
}

/// Controlled-controlled-iX, a special-form relative-phase Toffoli of type {c}.
pub fn srtof3_ccix() -> Construction {
    Construction::new(
        "srtof3",
        on(3, blocks::srtof3_ccix(0, 1, 2)),
        TargetSpec::srtof(&[0, 1], 2, &[2]),
        Claim::counts(4, 3, 2),
        "controlled-controlled-iX: CZ(a,c) then the long relative-phase Toffoli",
    )
    .expect("fixed block")
}

/// Self-inverse relative-phase Toffoli, 4 T / 3 CNOT / 2 H.
pub fn rtof3_long() -> Construction {
    Construction::new(
        "rtof3",
        on(3, blocks::rtof3_long(0, 1, 2)),
        TargetSpec::rtof(&[0, 1], 2),
        Claim::counts(4, 3, 2),
        "9-gate self-inverse relative-phase Toffoli",
    )
    .expect("fixed block")
}

/// The first five gates of [`rtof3_long`]: a Toffoli followed by a tail on (b, c).
///
/// Not a phase permutation on its own; the target describes the pair
/// `rts3 · M · rts3⁻¹` around a middle block the tail commutes with.
pub fn rts3() -> Construction {
    Construction::new(
        "rts3",
        on(3, blocks::rtof3_long(0, 1, 2)[..blocks::RTS3_LEN].to_vec()),
        TargetSpec::rtof(&[0, 1], 2),
        Claim::counts(2, 2, 1),
        "5-gate prefix of the long relative-phase Toffoli",
    )
    .expect("fixed block")
}

/// The first nine gates of [`toffoli3`]: a Toffoli followed by a tail on (a, c).
/// Like [`rts3`], only meaningful paired with its inverse.
pub fn srts3() -> Construction {
    Construction::new(
        "srts3",
        on(3, blocks::toffoli3(0, 1, 2)[..blocks::SRTS3_LEN].to_vec()),
        TargetSpec::srtof(&[0, 1], 2, &[1]),
        Claim::counts(4, 4, 1),
        "9-gate prefix of the 15-gate Toffoli",
    )
    .expect("fixed block")
}

/// Relative-phase Toffoli-4, 8 T / 6 CNOT / 4 H.
pub fn rtof4_long() -> Construction {
    Construction::new(
        "rtof4",
        on(4, blocks::rtof4_long(0, 1, 2, 3)),
        TargetSpec::rtof(&[0, 1, 2], 3),
        Claim::counts(8, 6, 4),
        "18-gate relative-phase Toffoli-4",
    )
    .expect("fixed block")
}

/// The first ten gates of [`rtof4_long`]. Like [`rts3`], only meaningful
/// paired with its inverse.
pub fn rt4s() -> Construction {
    Construction::new(
        "rt4s",
        on(4, blocks::rtof4_long(0, 1, 2, 3)[..blocks::RT4S_LEN].to_vec()),
        TargetSpec::rtof(&[0, 1, 2], 3),
        Claim::counts(4, 4, 2),
        "10-gate prefix of the relative-phase Toffoli-4",
    )
    .expect("fixed block")
}

/// Three-CNOT relative-phase Toffolis on (a, b; c).
///
/// * `margolus-t`: T/T† on the target between the CNOTs, conjugated by H on
///   the target. The four T-type gates put phases ω^{c + (b⊕c) − (a⊕b⊕c) − (a⊕c)}
///   on the parities, giving a Toffoli with `b` negated.
/// * `margolus-ry-alt`: the same CNOT pattern with R_Y(±π/4) in the order
///   +, −, +, −; also negated on `b`.
/// * `margolus-ry`: R_Y order +, +, −, −; plain controls.
///
/// The R_Y circuits need the floating-point backend.
pub fn margolus_variants() -> Vec<Construction> {
    let c = QubitId(2);
    let cx_pattern = |rot: [Gate; 4]| {
        let [r0, r1, r2, r3] = rot;
        vec![r0, Gate::cx(1, 2), r1, Gate::cx(0, 2), r2, Gate::cx(1, 2), r3]
    };
    let negated_b = TargetSpec {
        controls: vec![Control::pos(0), Control::neg(1)],
        ..TargetSpec::rtof(&[0, 1], 2)
    };

    let mut t_variant = vec![Gate::H(c)];
    t_variant.extend(cx_pattern([Gate::T(c), Gate::T(c), Gate::Tdg(c), Gate::Tdg(c)]));
    t_variant.push(Gate::H(c));

    let ry_alt = cx_pattern([
        Gate::ry(2, 1),
        Gate::ry(2, -1),
        Gate::ry(2, 1),
        Gate::ry(2, -1),
    ]);
    let ry = cx_pattern([
        Gate::ry(2, 1),
        Gate::ry(2, 1),
        Gate::ry(2, -1),
        Gate::ry(2, -1),
    ]);

    let three_cnots = Claim {
        cnot: Some(3),
        ancillae: Some(0),
        ..Claim::default()
    };
    vec![
        Construction::new(
            "margolus-t",
            on(3, t_variant),
            negated_b.clone(),
            Claim::counts(4, 3, 2),
            "T-phase variant conjugated by H on the target",
        ),
        Construction::new(
            "margolus-ry-alt",
            on(3, ry_alt),
            negated_b,
            three_cnots,
            "R_Y(±π/4) variant, alternating signs",
        ),
        Construction::new(
            "margolus-ry",
            on(3, ry),
            TargetSpec::rtof(&[0, 1], 2),
            three_cnots,
            "R_Y(±π/4) variant, paired signs",
        ),
    ]
    .into_iter()
    .map(|c| c.expect("fixed block"))
    .collect()
}
