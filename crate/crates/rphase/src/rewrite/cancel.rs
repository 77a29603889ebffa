use crate::circuit::{Circuit, Gate};

/// Removes pairs `g, g⁻¹` separated only by gates on disjoint qubits, until
/// no pair is left.
pub fn cancel_adjacent_inverses(c: &Circuit) -> Circuit {
    let mut gates = c.gates().to_vec();
    loop {
        let before = gates.len();
        gates = cancel_pass(gates);
        if gates.len() == before {
            break;
        }
    }
    c.with_gates(gates).expect("subset of a valid circuit")
}

fn cancel_pass(gates: Vec<Gate>) -> Vec<Gate> {
    let mut out: Vec<Gate> = Vec::with_capacity(gates.len());
    for g in gates {
        let inv = g.inverse();
        let partner = out
            .iter()
            .rposition(|h| h.shares_qubit(&g))
            .filter(|&k| out[k] == inv);
        match partner {
            Some(k) => {
                out.remove(k);
            }
            None => out.push(g),
        }
    }
    out
}
