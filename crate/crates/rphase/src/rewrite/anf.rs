//! Per-qubit effect of a gate sequence, from its support and the classical
//! (GF(2)) action of its permutation gates.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::circuit::{Control, Gate};

/// What a block of gates does to one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QubitEffect {
    /// No gate acts on the qubit.
    Untouched,
    /// Gates act on it, but every basis value of the qubit is preserved:
    /// the block is block-diagonal in the qubit's computational basis.
    Diagonal,
    /// Anything else.
    Active,
}

impl QubitEffect {
    pub fn is_touched(self) -> bool {
        self != QubitEffect::Untouched
    }
}

/// Polynomials with more monomials than this are replaced by a fresh
/// variable, which only loses precision (a qubit may be reported Active
/// when it is Diagonal), never soundness.
const MAX_MONOMIALS: usize = 1024;

/// A polynomial over GF(2) in algebraic normal form: a set of monomials,
/// each a sorted list of variable ids. The empty monomial is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Anf(BTreeSet<Vec<u32>>);

impl Anf {
    fn var(v: u32) -> Self {
        Anf(BTreeSet::from([vec![v]]))
    }

    fn one() -> Self {
        Anf(BTreeSet::from([Vec::new()]))
    }

    fn xor_assign(&mut self, other: &Anf) {
        for m in &other.0 {
            if !self.0.remove(m) {
                self.0.insert(m.clone());
            }
        }
    }

    fn and(&self, other: &Anf) -> Anf {
        let mut out = BTreeSet::new();
        for a in &self.0 {
            for b in &other.0 {
                let mut m: Vec<u32> = a.iter().chain(b).copied().collect();
                m.sort_unstable();
                m.dedup();
                if !out.remove(&m) {
                    out.insert(m);
                }
            }
        }
        Anf(out)
    }
}

struct Tracker {
    state: Vec<Anf>,
    touched: Vec<bool>,
    next_var: u32,
}

impl Tracker {
    fn fresh(&mut self, q: usize) {
        self.state[q] = Anf::var(self.next_var);
        self.next_var += 1;
    }

    fn literal(&self, c: &Control) -> Anf {
        let mut p = self.state[c.qubit.0].clone();
        if c.is_negative() {
            p.xor_assign(&Anf::one());
        }
        p
    }

    fn controlled_flip(&mut self, controls: &[Control], t: usize) {
        let term = controls
            .iter()
            .fold(Anf::one(), |acc, c| acc.and(&self.literal(c)));
        self.state[t].xor_assign(&term);
        if self.state[t].0.len() > MAX_MONOMIALS {
            self.fresh(t);
        }
    }
}

/// Effect of `gates` on each of `width` qubits.
///
/// H and R_Y give their qubit a fresh unknown value, as do the marker blocks
/// that end with the target outside the computational basis. Phase gates
/// touch a qubit without changing its value.
pub fn qubit_effects(width: usize, gates: &[Gate]) -> Vec<QubitEffect> {
    let mut t = Tracker {
        state: (0..width as u32).map(Anf::var).collect(),
        touched: vec![false; width],
        next_var: width as u32,
    };
    for g in gates {
        for q in g.qubits() {
            t.touched[q.0] = true;
        }
        match g {
            Gate::X(q) | Gate::Y(q) => t.state[q.0].xor_assign(&Anf::one()),
            Gate::Z(_) | Gate::P(_) | Gate::Pdg(_) | Gate::T(_) | Gate::Tdg(_) | Gate::Cz { .. } => {}
            Gate::H(q) | Gate::Ry { qubit: q, .. } => t.fresh(q.0),
            Gate::Cnot { control, target } => t.controlled_flip(&[*control], target.0),
            Gate::Tof { controls, target } | Gate::Rtof { controls, target, .. } => {
                t.controlled_flip(controls, target.0)
            }
            Gate::Marker {
                kind,
                controls,
                target,
                ..
            } => {
                if kind.is_phase_permutation() {
                    t.controlled_flip(controls, target.0);
                } else {
                    t.fresh(target.0);
                }
            }
        }
    }
    (0..width)
        .map(|q| {
            if !t.touched[q] {
                QubitEffect::Untouched
            } else if t.state[q] == Anf::var(q as u32) {
                QubitEffect::Diagonal
            } else {
                QubitEffect::Active
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{MarkerKind, QubitId};
    use QubitEffect::*;

    #[test]
    fn controls_are_diagonal_targets_active() {
        let e = qubit_effects(4, &[Gate::ccx(0, 1, 2)]);
        assert_eq!(e, vec![Diagonal, Diagonal, Active, Untouched]);
    }

    #[test]
    fn repeated_flip_restores() {
        let g = Gate::ccx(0, 1, 2);
        let e = qubit_effects(3, &[g.clone(), Gate::T(QubitId(2)), g]);
        assert_eq!(e, vec![Diagonal, Diagonal, Diagonal]);
    }

    #[test]
    fn hadamard_is_opaque() {
        let h = Gate::H(QubitId(0));
        assert_eq!(qubit_effects(1, &[h.clone(), h]), vec![Active]);
    }

    #[test]
    fn copy_through_opaque_value_cancels() {
        // b ^= c twice while c holds the same unknown value.
        let e = qubit_effects(
            2,
            &[
                Gate::H(QubitId(1)),
                Gate::cx(1, 0),
                Gate::T(QubitId(0)),
                Gate::cx(1, 0),
            ],
        );
        assert_eq!(e, vec![Diagonal, Active]);
    }

    #[test]
    fn open_tail_markers_scramble_the_target() {
        let e = qubit_effects(3, &[Gate::marker(MarkerKind::Rtof3S, &[0, 1, 2])]);
        assert_eq!(e, vec![Diagonal, Diagonal, Active]);
    }
}
