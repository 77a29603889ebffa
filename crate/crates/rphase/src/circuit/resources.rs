use serde::{Deserialize, Serialize};

use super::lower::expand_fixed;
use super::{Circuit, Gate, QubitRole};

/// Gate counts for a circuit.
///
/// `t` covers T and T†, `pz` covers P, P† and Z. Everything that is not T, CNOT,
/// H, P or Z (X, Y, RY, CZ, and any Toffoli too large to expand without
/// ancillae) goes to `other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResourceReport {
    pub t: usize,
    pub cnot: usize,
    pub h: usize,
    pub pz: usize,
    pub other: usize,
    /// Greedy layering; see [`count_resources`].
    pub t_depth: usize,
    pub ancilla: AncillaSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AncillaSummary {
    pub count: usize,
    #[serde(rename = "type")]
    pub kind: AncillaKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AncillaKind {
    Clean,
    Dirty,
    #[default]
    None,
}

impl ResourceReport {
    pub fn total(&self) -> usize {
        self.t + self.cnot + self.h + self.pz + self.other
    }
}

/// Counts gates after expanding markers and small Toffolis by their fixed
/// definitions.
///
/// T-depth is computed greedily: each qubit carries the number of T layers
/// seen so far, multi-qubit gates synchronise their qubits to the maximum,
/// and a T gate opens a new layer on its qubit. It is an approximation, not a
/// minimum over commutations.
///
/// Ancilla type is `dirty` only if every ancilla is dirty; any clean ancilla
/// makes the requirement `clean`.
pub fn count_resources(c: &Circuit) -> ResourceReport {
    let mut r = ResourceReport::default();
    let mut depth = vec![0usize; c.width()];
    for g in c.gates() {
        let expanded = expand_fixed(g);
        let gates: &[Gate] = match &expanded {
            Some(v) => v,
            None => std::slice::from_ref(g),
        };
        for g in gates {
            match g {
                Gate::T(_) | Gate::Tdg(_) => r.t += 1,
                Gate::Cnot { .. } => r.cnot += 1,
                Gate::H(_) => r.h += 1,
                Gate::P(_) | Gate::Pdg(_) | Gate::Z(_) => r.pz += 1,
                _ => r.other += 1,
            }
            let qs = g.qubits();
            let mut d = qs.iter().map(|q| depth[q.0]).max().unwrap_or(0);
            if matches!(g, Gate::T(_) | Gate::Tdg(_)) {
                d += 1;
            }
            for q in qs {
                depth[q.0] = d;
            }
        }
    }
    r.t_depth = depth.into_iter().max().unwrap_or(0);
    let clean = c
        .roles()
        .iter()
        .filter(|&&x| x == QubitRole::CleanAncilla)
        .count();
    let dirty = c
        .roles()
        .iter()
        .filter(|&&x| x == QubitRole::DirtyAncilla)
        .count();
    r.ancilla = AncillaSummary {
        count: clean + dirty,
        kind: if clean > 0 {
            AncillaKind::Clean
        } else if dirty > 0 {
            AncillaKind::Dirty
        } else {
            AncillaKind::None
        },
    };
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::QubitId;

    #[test]
    fn empty_circuit_counts_zero() {
        let r = count_resources(&Circuit::new(3));
        assert_eq!(r, ResourceReport::default());
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"t":0,"cnot":0,"h":0,"pz":0,"other":0,"t_depth":0,"ancilla":{"count":0,"type":"none"}}"#
        );
    }

    #[test]
    fn t_layers_share_across_disjoint_qubits() {
        let q = QubitId;
        let c = Circuit::from_gates(
            2,
            vec![Gate::T(q(0)), Gate::T(q(1)), Gate::cx(0, 1), Gate::Tdg(q(1))],
        )
        .unwrap();
        let r = count_resources(&c);
        assert_eq!((r.t, r.cnot, r.t_depth), (3, 1, 2));
    }

    #[test]
    fn toffoli_counts_through_definition() {
        let c = Circuit::from_gates(3, vec![Gate::ccx(0, 1, 2)]).unwrap();
        let r = count_resources(&c);
        assert_eq!((r.t, r.cnot, r.h, r.pz), (7, 6, 2, 0));
    }
}
