//! Multiple-control Toffoli circuits assembled from the fixed blocks.

use super::{blocks, invalid, Claim, Construction, ConstructionError};
use crate::circuit::{
    lower, Circuit, Gate, LoweringPolicy, MarkerKind, QubitRole, TargetOp, TargetSpec,
};
use crate::rewrite::cancel_adjacent_inverses;
use crate::ring::RingElement;

/// One block of a marker-level schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    kind: MarkerKind,
    inverse: bool,
    args: Vec<usize>,
}

fn block(kind: MarkerKind, args: &[usize]) -> Block {
    Block {
        kind,
        inverse: false,
        args: args.to_vec(),
    }
}

fn block_inv(kind: MarkerKind, args: &[usize]) -> Block {
    Block {
        inverse: true,
        ..block(kind, args)
    }
}

impl Block {
    fn gate(&self) -> Gate {
        let Gate::Marker {
            kind,
            controls,
            target,
            ..
        } = Gate::marker(self.kind, &self.args)
        else {
            unreachable!()
        };
        Gate::Marker {
            kind,
            inverse: self.inverse,
            controls,
            target,
        }
    }

    fn inverted(&self) -> Block {
        Block {
            inverse: !self.inverse,
            ..self.clone()
        }
    }
}

fn expand(c: &Circuit) -> Circuit {
    let policy = LoweringPolicy {
        large_toffoli: None,
    };
    lower(c, &policy).expect("markers and small Toffolis always expand")
}

fn roles(width: usize, ancillae: &[usize], role: QubitRole) -> Vec<QubitRole> {
    let mut r = vec![QubitRole::Primary; width];
    for &a in ancillae {
        r[a] = role;
    }
    r
}

fn circuit(roles: Vec<QubitRole>, gates: Vec<Gate>) -> Circuit {
    let mut c = Circuit::with_roles(roles);
    c.extend(gates).expect("generated gates fit the register");
    c
}

/// TOF⁴ on (a, b, |0⟩, c, d): a relative-phase Toffoli computes a∧b into
/// the ancilla, a Toffoli uses it, and the inverse block uncomputes it.
/// 15 T / 12 CNOT / 6 H.
pub fn tof4_clean() -> Result<Construction, ConstructionError> {
    let mut g = blocks::rtof3_long(0, 1, 2);
    g.extend(blocks::toffoli3(2, 3, 4));
    g.extend(blocks::inverted(&blocks::rtof3_long(0, 1, 2)));
    Construction::new(
        "tof4-clean",
        circuit(roles(5, &[2], QubitRole::CleanAncilla), g),
        TargetSpec::tof(&[0, 1, 3], 4),
        Claim::counts(15, 12, 6).with_ancillae(1),
        "TOF⁴ with one clean ancilla",
    )
}

/// TOF⁴ on (a, b, x, c, d) with `x` dirty: a relative-phase Toffoli onto `x`
/// and a special-form prefix block on (c, x; d), each applied twice.
/// 16 T / 14 CNOT / 6 H.
pub fn tof4_dirty() -> Result<Construction, ConstructionError> {
    let srts = blocks::toffoli3(3, 2, 4)[..blocks::SRTS3_LEN].to_vec();
    let mut g = blocks::rtof3_long(0, 1, 2);
    g.extend(srts.clone());
    g.extend(blocks::rtof3_long(0, 1, 2));
    g.extend(blocks::inverted(&srts));
    Construction::new(
        "tof4-dirty",
        circuit(roles(5, &[2], QubitRole::DirtyAncilla), g),
        TargetSpec::tof(&[0, 1, 3], 4),
        Claim::counts(16, 14, 6).with_ancillae(1),
        "TOF⁴ with one dirty ancilla",
    )
}

/// TOF⁵ on (a, b, c, |0⟩, d, e). 23 T / 18 CNOT / 10 H.
pub fn tof5_clean() -> Result<Construction, ConstructionError> {
    let mut g = blocks::rtof4_long(0, 1, 2, 3);
    g.extend(blocks::toffoli3(3, 4, 5));
    g.extend(blocks::inverted(&blocks::rtof4_long(0, 1, 2, 3)));
    Construction::new(
        "tof5-clean",
        circuit(roles(6, &[3], QubitRole::CleanAncilla), g),
        TargetSpec::tof(&[0, 1, 2, 4], 5),
        Claim::counts(23, 18, 10).with_ancillae(1),
        "TOF⁵ with one clean ancilla",
    )
}

/// TOF⁵ on (a, b, c, x, d, e) with `x` dirty. 24 T / 20 CNOT / 10 H.
pub fn tof5_dirty() -> Result<Construction, ConstructionError> {
    let srts = blocks::toffoli3(4, 3, 5)[..blocks::SRTS3_LEN].to_vec();
    let rt4l = blocks::rtof4_long(0, 1, 2, 3);
    let mut g = rt4l.clone();
    g.extend(srts.clone());
    g.extend(blocks::inverted(&rt4l));
    g.extend(blocks::inverted(&srts));
    Construction::new(
        "tof5-dirty",
        circuit(roles(6, &[3], QubitRole::DirtyAncilla), g),
        TargetSpec::tof(&[0, 1, 2, 4], 5),
        Claim::counts(24, 20, 10).with_ancillae(1),
        "TOF⁵ with one dirty ancilla",
    )
}

fn ancillae_for(n: usize) -> usize {
    (n - 2) / 2
}

/// TOFⁿ with ⌈(n−3)/2⌉ clean ancillae.
///
/// A chain of relative-phase Toffoli-4 blocks (the last one a 3-qubit block
/// when n is even) accumulates the AND of the controls into the last
/// ancilla; a Toffoli fires the target; the chain is undone in reverse.
/// Controls are laid out in the order they are consumed, each ancilla right
/// after the controls it is computed from. 8n−17 T / 6n−12 CNOT / 4n−10 H.
pub fn tofn_clean(n: usize) -> Result<Construction, ConstructionError> {
    if n < 4 {
        return Err(invalid("tofn-clean", format!("needs n >= 4, got {n}")));
    }
    let m = ancillae_for(n);
    let mut kinds = vec![MarkerKind::Rtof4L; m];
    if n % 2 == 0 {
        kinds[m - 1] = MarkerKind::Rtof3L;
    }

    let mut next = 0usize;
    let mut ctrls = Vec::new();
    let mut anc = Vec::new();
    let mut chain = Vec::new();
    let mut prev: Option<usize> = None;
    for kind in kinds {
        let fresh = kind.arity() - 1 - usize::from(prev.is_some());
        let mut args: Vec<usize> = prev.into_iter().collect();
        for _ in 0..fresh {
            ctrls.push(next);
            args.push(next);
            next += 1;
        }
        args.push(next);
        anc.push(next);
        prev = Some(next);
        next += 1;
        chain.push(block(kind, &args));
    }
    let last = next;
    let target = next + 1;
    ctrls.push(last);
    let width = next + 2;

    let mut gates: Vec<Gate> = chain.iter().map(Block::gate).collect();
    gates.push(Gate::ccx(prev.expect("chain is nonempty"), last, target));
    gates.extend(chain.iter().rev().map(|b| b.inverted().gate()));
    let markers = circuit(roles(width, &anc, QubitRole::CleanAncilla), gates);

    Construction::new(
        format!("tof{n}-clean"),
        expand(&markers),
        TargetSpec::tof(&ctrls, target),
        Claim::counts(8 * n - 17, 6 * n - 12, 4 * n - 10).with_ancillae(m),
        "TOFⁿ with clean ancillae",
    )
}

fn replace_once(seq: &mut Vec<Block>, pattern: &[Block], with: Block) -> bool {
    let Some(i) = seq.windows(pattern.len()).position(|w| w == pattern) else {
        return false;
    };
    seq.splice(i..i + pattern.len(), [with]);
    true
}

/// Block schedule for the dirty-ancilla TOFⁿ over labels 1..=2n−3
/// (controls 1..n−1, target 2n−3), with the Toffoli-4 merges applied.
fn tofn_dirty_schedule(n: usize) -> Vec<Block> {
    use MarkerKind::{Rtof3L as Rtl, Rtof3S as Rts, Rtof4L as Rt4l, Rtof4S as Rt4s, Srts3 as Srts};
    let s = block(Srts, &[n - 1, 2 * n - 4, 2 * n - 3]);
    let descend: Vec<Block> = (1..=n - 4)
        .map(|k| block(Rts, &[2 * n - 4 - k, n - 1 - k, 2 * n - 3 - k]))
        .collect();
    let ascend: Vec<Block> = (1..=n - 4)
        .map(|k| block_inv(Rts, &[n - 1 + k, k + 2, n + k]))
        .collect();
    let rtl = block(Rtl, &[1, 2, n]);

    let mut seq = vec![s.clone()];
    seq.extend(descend.iter().cloned());
    seq.push(rtl.clone());
    seq.extend(ascend.iter().cloned());
    seq.push(s.inverted());
    seq.extend(descend);
    seq.push(rtl.inverted());
    seq.extend(ascend);

    // The 3-qubit block computing into n and its two neighbours merge into
    // one Toffoli-4 on (1, 2, 3; n+1).
    let rts = block(Rts, &[n, 3, n + 1]);
    for center in [rtl.clone(), rtl.inverted()] {
        let merged = Block {
            inverse: center.inverse,
            ..block(Rt4l, &[1, 2, 3, n + 1])
        };
        let ok = replace_once(&mut seq, &[rts.clone(), center, rts.inverted()], merged);
        assert!(ok, "toffoli-4 merge pattern present for n = {n}");
    }

    // Adjacent pairs of short blocks merge into short Toffoli-4 blocks, each
    // freeing one qubit; every pair occurs once per half of the circuit.
    let pairs = if n > 6 { (n - 5) / 2 } else { 0 };
    for k in 1..=pairs {
        let hi = block(Rts, &[n + 2 * k, 2 * k + 3, n + 2 * k + 1]);
        let lo = block(Rts, &[n - 1 + 2 * k, 2 * k + 2, n + 2 * k]);
        let merged = block(Rt4s, &[n - 1 + 2 * k, 2 * k + 2, 2 * k + 3, n + 2 * k + 1]);
        for _ in 0..2 {
            let ok = replace_once(&mut seq, &[hi.clone(), lo.clone()], merged.clone());
            assert!(ok, "short merge pattern present for n = {n}, k = {k}");
            let ok = replace_once(&mut seq, &[lo.inverted(), hi.inverted()], merged.inverted());
            assert!(ok, "inverse short merge pattern present for n = {n}, k = {k}");
        }
    }
    seq
}

/// TOFⁿ with ⌈(n−3)/2⌉ dirty ancillae, n ≥ 5. 8n−16 T / 8n−20 CNOT / 4n−10 H.
///
/// Qubits follow the original 1..2n−3 labelling with the qubits freed by the
/// Toffoli-4 merges removed, order preserved.
pub fn tofn_dirty(n: usize) -> Result<Construction, ConstructionError> {
    if n < 5 {
        return Err(invalid("tofn-dirty", format!("needs n >= 5, got {n}")));
    }
    let seq = tofn_dirty_schedule(n);
    let mut used: Vec<usize> = seq.iter().flat_map(|b| b.args.iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let index = |label: usize| used.binary_search(&label).expect("label is used");

    let ctrls: Vec<usize> = (1..n).map(index).collect();
    let target = index(2 * n - 3);
    let anc: Vec<usize> = used
        .iter()
        .filter(|&&l| l >= n && l < 2 * n - 3)
        .map(|&l| index(l))
        .collect();
    let gates = seq
        .iter()
        .map(|b| Block {
            args: b.args.iter().map(|&l| index(l)).collect(),
            ..b.clone()
        })
        .map(|b| b.gate())
        .collect();
    let markers = circuit(roles(used.len(), &anc, QubitRole::DirtyAncilla), gates);

    Construction::new(
        format!("tof{n}-dirty"),
        expand(&markers),
        TargetSpec::tof(&ctrls, target),
        Claim::counts(8 * n - 16, 8 * n - 20, 4 * n - 10).with_ancillae(ancillae_for(n)),
        "TOFⁿ with dirty ancillae",
    )
}

/// Marker-level TOFⁿ ladder on 2n−3 qubits, n ≥ 6: 4n−14 long 3-qubit
/// relative-phase Toffolis and one special-form block with its inverse.
///
/// Qubits 0..n−2 are controls, n−1..2n−5 dirty ancillae, 2n−4 the target.
/// Each 3-qubit block takes (control, ancilla; ancilla) so that the outer
/// CNOT of the lowered block is controlled by the ancilla, which is what lets
/// neighbouring H·T / T†·H pairs cancel after lowering.
pub fn ladder_tofn(n: usize) -> Result<Construction, ConstructionError> {
    if n < 6 {
        return Err(invalid("ladder", format!("needs n >= 6, got {n}")));
    }
    let l = |x: usize| x - 1;
    let s = block(MarkerKind::Srts3, &[l(n - 1), l(2 * n - 4), l(2 * n - 3)]);
    let descend: Vec<Block> = (1..=n - 4)
        .map(|k| block(MarkerKind::Rtof3L, &[l(n - 1 - k), l(2 * n - 4 - k), l(2 * n - 3 - k)]))
        .collect();
    let ascend: Vec<Block> = (1..=n - 4)
        .map(|k| block(MarkerKind::Rtof3L, &[l(k + 2), l(n - 1 + k), l(n + k)]))
        .collect();
    let rtl = block(MarkerKind::Rtof3L, &[l(1), l(2), l(n)]);

    let mut seq = vec![s.clone()];
    seq.extend(descend.iter().cloned());
    seq.push(rtl.clone());
    seq.extend(ascend.iter().cloned());
    seq.push(s.inverted());
    seq.extend(descend);
    seq.push(rtl);
    seq.extend(ascend);

    let width = 2 * n - 3;
    let anc: Vec<usize> = (n - 1..2 * n - 4).collect();
    let markers = circuit(
        roles(width, &anc, QubitRole::DirtyAncilla),
        seq.iter().map(Block::gate).collect(),
    );
    let k = n - 1;
    Construction::new(
        format!("ladder{n}"),
        markers,
        TargetSpec::tof(&(0..n - 1).collect::<Vec<_>>(), 2 * n - 4),
        Claim {
            t: Some(16 * k - 32),
            pz: Some(0),
            ancillae: Some(n - 3),
            ..Claim::default()
        },
        "marker-level TOFⁿ ladder of 3-qubit relative-phase Toffolis",
    )
}

/// [`ladder_tofn`] lowered and passed through inverse-pair cancellation.
/// With k = n−1 controls the T-count drops from 16k−32 to 12k−20.
pub fn ladder_tofn_cancelled(n: usize) -> Result<Construction, ConstructionError> {
    let ladder = ladder_tofn(n)?;
    let k = n - 1;
    Construction::new(
        format!("ladder{n}-cancelled"),
        cancel_adjacent_inverses(&expand(&ladder.circuit)),
        ladder.target,
        Claim {
            t: Some(12 * k - 20),
            pz: Some(0),
            ancillae: Some(n - 3),
            ..Claim::default()
        },
        "lowered TOFⁿ ladder after inverse-pair cancellation",
    )
}

/// Deterministic eighth-root phases for a generic relative-phase Toffoli of
/// the given arity. When `flat_bit` is set, the phase ignores that local bit.
fn phase_table(arity: usize, salt: usize, flat_bit: Option<usize>) -> Vec<RingElement> {
    (0..1usize << arity)
        .map(|i| {
            let j = flat_bit.map_or(i, |b| i & !(1 << b));
            let e = (j * j * 3 + j * 5 + salt * 7) % 8;
            RingElement::omega_pow(e as i64)
        })
        .collect()
}

fn rtof_gate(controls: &[usize], target: usize, phases: Vec<RingElement>) -> Gate {
    Gate::Rtof {
        controls: crate::circuit::controls(controls),
        target: crate::circuit::QubitId(target),
        phases,
    }
}

/// TOFⁿ on n+1 qubits from two relative-phase Toffolis of arity k and two
/// special-form ones of arity n−k+2, using one dirty ancilla.
///
/// Layout: controls 0..n−2, ancilla n−1, target n. The first k−1 controls
/// feed the arity-k gate onto the ancilla; the remaining n−k controls and
/// the ancilla control the special-form gate on the target, whose phases do
/// not depend on the ancilla. The displayed example in the literature fixes
/// only one (n, k); this wiring is the natural generalisation.
pub fn two_block_tofn(n: usize, k: usize) -> Result<Construction, ConstructionError> {
    if n < 4 || k < 3 || k > n - 1 {
        return Err(invalid(
            "two-block",
            format!("needs n >= 4 and 3 <= k <= n-1, got n={n}, k={k}"),
        ));
    }
    let anc = n - 1;
    let target = n;
    let first: Vec<usize> = (0..k - 1).collect();
    let mut second: Vec<usize> = (k - 1..n - 1).collect();
    second.push(anc);
    let arity2 = second.len() + 1;

    let r = rtof_gate(&first, anc, phase_table(k, n + k, None));
    // The ancilla is the last control: local bit 1 (bit 0 is the target).
    let s = rtof_gate(&second, target, phase_table(arity2, n * k, Some(1)));
    let gates = vec![r.clone(), s.clone(), r.inverse(), s.inverse()];
    Construction::new(
        format!("two-block{n}-{k}"),
        circuit(roles(n + 1, &[anc], QubitRole::DirtyAncilla), gates),
        TargetSpec::tof(&(0..n - 1).collect::<Vec<_>>(), target),
        Claim {
            ancillae: Some(1),
            ..Claim::default()
        },
        "TOFⁿ from two relative-phase and two special-form Toffolis",
    )
}

/// [`two_block_tofn`] with catalog blocks substituted where the arity allows:
/// arity-3 and arity-4 relative-phase gates become the long blocks, and an
/// arity-3 special-form gate becomes the 9-gate special-form prefix with the
/// ancilla in the middle position. Larger gates stay as phase tables.
pub fn two_block_tofn_lowered(n: usize, k: usize) -> Result<Construction, ConstructionError> {
    let base = two_block_tofn(n, k)?;
    let anc = n - 1;
    let target = n;
    let first: Vec<usize> = (0..k - 1).collect();
    let r = match first.len() + 1 {
        3 => Some(MarkerKind::Rtof3L),
        4 => Some(MarkerKind::Rtof4L),
        _ => None,
    }
    .map(|kind| {
        let mut args = first.clone();
        args.push(anc);
        Gate::marker(kind, &args)
    })
    .unwrap_or_else(|| base.circuit.gates()[0].clone());
    let s = if n - k == 1 {
        Gate::marker(MarkerKind::Srts3, &[n - 2, anc, target])
    } else {
        base.circuit.gates()[1].clone()
    };
    let gates = vec![r.clone(), s.clone(), r.inverse(), s.inverse()];
    Construction::new(
        format!("two-block{n}-{k}-lowered"),
        circuit(base.circuit.roles().to_vec(), gates),
        base.target,
        base.claim,
        "TOFⁿ from two relative-phase and two special-form Toffolis, catalog blocks where possible",
    )
}

fn controlled_u(op: TargetOp, control: usize, target: usize) -> Vec<Gate> {
    use crate::circuit::QubitId;
    match op {
        TargetOp::X => vec![Gate::cx(control, target)],
        TargetOp::Z => vec![Gate::cz(control, target)],
        // ω^{a+b−(a⊕b)} = i^{ab}
        TargetOp::P => vec![
            Gate::T(QubitId(control)),
            Gate::T(QubitId(target)),
            Gate::cx(control, target),
            Gate::Tdg(QubitId(target)),
            Gate::cx(control, target),
        ],
    }
}

fn cnu_claim(n: usize, op: TargetOp) -> Claim {
    let blocks = 2 * n - 2;
    let (t, cnot) = match op {
        TargetOp::X => (0, 1),
        TargetOp::Z => (0, 0),
        TargetOp::P => (3, 2),
    };
    Claim::counts(4 * blocks + t, 3 * blocks + cnot, 2 * blocks).with_ancillae(n - 1)
}

fn cnu_from_pairs(
    name: String,
    n: usize,
    op: TargetOp,
    compute: Vec<Gate>,
    root: usize,
    description: &'static str,
) -> Result<Construction, ConstructionError> {
    let width = 2 * n;
    let target = width - 1;
    let anc: Vec<usize> = (n..2 * n - 1).collect();
    let mut gates = compute.clone();
    gates.extend(controlled_u(op, root, target));
    gates.extend(compute.iter().rev().map(Gate::inverse));
    Construction::new(
        name,
        circuit(roles(width, &anc, QubitRole::CleanAncilla), gates),
        TargetSpec::tof(&(0..n).collect::<Vec<_>>(), target).with_op(op),
        cnu_claim(n, op),
        description,
    )
}

/// C^nU with n−1 clean ancillae in a linear chain: 2n−2 relative-phase
/// Toffolis and one controlled-U. Controls 0..n−1, ancillae n..2n−2,
/// target 2n−1. Marker-level.
pub fn cnu_clean_chain(n: usize, op: TargetOp) -> Result<Construction, ConstructionError> {
    if n < 2 {
        return Err(invalid("cnu-chain", format!("needs n >= 2, got {n}")));
    }
    let mut compute = vec![Gate::marker(MarkerKind::Rtof3L, &[0, 1, n])];
    for i in 2..n {
        compute.push(Gate::marker(MarkerKind::Rtof3L, &[i, n + i - 2, n + i - 1]));
    }
    cnu_from_pairs(
        format!("c{n}u-chain"),
        n,
        op,
        compute,
        2 * n - 2,
        "C^nU with a chain of clean ancillae",
    )
}

/// C^nU with n−1 clean ancillae combined as a balanced binary tree; same
/// counts as the chain, logarithmic depth. Marker-level.
pub fn cnu_parallel(n: usize, op: TargetOp) -> Result<Construction, ConstructionError> {
    if n < 2 {
        return Err(invalid("cnu-parallel", format!("needs n >= 2, got {n}")));
    }
    let mut layer: Vec<usize> = (0..n).collect();
    let mut next = n;
    let mut compute = Vec::new();
    while layer.len() > 1 {
        let mut up = Vec::new();
        for pair in layer.chunks(2) {
            if let [a, b] = *pair {
                compute.push(Gate::marker(MarkerKind::Rtof3L, &[a, b, next]));
                up.push(next);
                next += 1;
            } else {
                up.push(pair[0]);
            }
        }
        layer = up;
    }
    cnu_from_pairs(
        format!("c{n}u-parallel"),
        n,
        op,
        compute,
        layer[0],
        "C^nU with a balanced tree of clean ancillae",
    )
}
