//! Gate lists of the fixed three- and four-qubit blocks.

use crate::circuit::{Control, Gate, MarkerKind, QubitId};

fn q(i: usize) -> QubitId {
    QubitId(i)
}

/// The 15-gate Toffoli, 7 T / 6 CNOT / 2 H, ordered so that the gates acting
/// on `a` and `c` come last.
pub fn toffoli3(a: usize, b: usize, c: usize) -> Vec<Gate> {
    vec![
        Gate::H(q(c)),
        Gate::cx(c, b),
        Gate::Tdg(q(b)),
        Gate::cx(a, b),
        Gate::T(q(b)),
        Gate::cx(c, b),
        Gate::Tdg(q(b)),
        Gate::cx(a, b),
        Gate::T(q(b)),
        Gate::cx(a, c),
        Gate::Tdg(q(c)),
        Gate::cx(a, c),
        Gate::T(q(a)),
        Gate::T(q(c)),
        Gate::H(q(c)),
    ]
}

/// Number of leading [`toffoli3`] gates forming the special-form block.
pub const SRTS3_LEN: usize = 9;

/// Self-inverse relative-phase Toffoli:
/// diag{1,1,1,1,1,−1,[[0,−i],[i,0]]}.
pub fn rtof3_long(a: usize, b: usize, c: usize) -> Vec<Gate> {
    vec![
        Gate::H(q(c)),
        Gate::T(q(c)),
        Gate::cx(b, c),
        Gate::Tdg(q(c)),
        Gate::cx(a, c),
        Gate::T(q(c)),
        Gate::cx(b, c),
        Gate::Tdg(q(c)),
        Gate::H(q(c)),
    ]
}

/// Number of leading [`rtof3_long`] gates forming the short block.
pub const RTS3_LEN: usize = 5;

/// Relative-phase Toffoli-4: diag{1×12, i, −i, [[0,1],[−1,0]]}.
pub fn rtof4_long(a: usize, b: usize, c: usize, d: usize) -> Vec<Gate> {
    vec![
        Gate::H(q(d)),
        Gate::T(q(d)),
        Gate::cx(c, d),
        Gate::Tdg(q(d)),
        Gate::H(q(d)),
        Gate::cx(a, d),
        Gate::T(q(d)),
        Gate::cx(b, d),
        Gate::Tdg(q(d)),
        Gate::cx(a, d),
        Gate::T(q(d)),
        Gate::cx(b, d),
        Gate::Tdg(q(d)),
        Gate::H(q(d)),
        Gate::T(q(d)),
        Gate::cx(c, d),
        Gate::Tdg(q(d)),
        Gate::H(q(d)),
    ]
}

/// Number of leading [`rtof4_long`] gates forming the short block.
pub const RT4S_LEN: usize = 10;

/// Controlled-controlled-iX: diag{1,…,1,[[0,i],[i,0]]}.
pub fn srtof3_ccix(a: usize, b: usize, c: usize) -> Vec<Gate> {
    let mut g = vec![Gate::cz(a, c)];
    g.extend(rtof3_long(a, b, c));
    g
}

/// Positive-control definition of a marker over `args = controls ++ [target]`.
pub fn marker_definition(kind: MarkerKind, args: &[usize]) -> Vec<Gate> {
    match (kind, args) {
        (MarkerKind::Rtof3L, &[a, b, c]) => rtof3_long(a, b, c),
        (MarkerKind::Rtof3S, &[a, b, c]) => rtof3_long(a, b, c)[..RTS3_LEN].to_vec(),
        (MarkerKind::Srtof3, &[a, b, c]) => srtof3_ccix(a, b, c),
        (MarkerKind::Srts3, &[a, b, c]) => toffoli3(a, b, c)[..SRTS3_LEN].to_vec(),
        (MarkerKind::Rtof4L, &[a, b, c, d]) => rtof4_long(a, b, c, d),
        (MarkerKind::Rtof4S, &[a, b, c, d]) => rtof4_long(a, b, c, d)[..RT4S_LEN].to_vec(),
        _ => panic!("{} takes {} qubits", kind.name(), kind.arity()),
    }
}

/// Reversed list with each gate inverted.
pub fn inverted(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::inverse).collect()
}

/// Conjugates `body` by X on every negative control.
pub(crate) fn wrap_negative(controls: &[Control], body: Vec<Gate>) -> Vec<Gate> {
    let flips: Vec<Gate> = controls
        .iter()
        .filter(|c| c.is_negative())
        .map(|c| Gate::X(c.qubit))
        .collect();
    if flips.is_empty() {
        return body;
    }
    let mut out = flips.clone();
    out.extend(body);
    out.extend(flips);
    out
}
