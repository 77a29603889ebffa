//! Circuit data model: gates over indexed qubits, ancilla roles, target
//! specifications, lowering, resource counting and OpenQASM interchange.
//!
//! A circuit is read left to right: the first gate acts first, so its unitary
//! is the matrix product of the gates in reverse order.

mod gate;
pub mod lower;
pub mod qasm;
pub mod resources;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use gate::{controls, firing_pair, Control, Gate, MarkerKind, Polarity, QubitId};
pub use lower::{lower, AncillaStrategy, LowerError, LoweringPolicy};
pub use resources::{count_resources, AncillaKind, AncillaSummary, ResourceReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: QubitId, width: usize },
    #[error("qubit {0} used twice in one gate")]
    DuplicateQubit(QubitId),
    #[error("arity mismatch for {gate}: expected {expected} qubits, found {found}")]
    ArityMismatch {
        gate: String,
        expected: usize,
        found: usize,
    },
    #[error("phase table of {gate} must have {expected} unit-magnitude entries")]
    BadPhaseTable { gate: String, expected: usize },
    #[error("role list has {found} entries for width {width}")]
    RoleCount { found: usize, width: usize },
    #[error("cannot combine circuits of width {0} and {1}")]
    WidthMismatch(usize, usize),
}

/// What a qubit is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QubitRole {
    Primary,
    /// Supplied in |0⟩ and returned in |0⟩.
    CleanAncilla,
    /// Supplied in an unknown state and returned unchanged.
    DirtyAncilla,
}

impl QubitRole {
    pub fn is_ancilla(self) -> bool {
        self != QubitRole::Primary
    }
}

/// An ordered gate list over `width` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCircuit")]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    roles: Vec<QubitRole>,
}

#[derive(Deserialize)]
struct RawCircuit {
    width: usize,
    gates: Vec<Gate>,
    roles: Vec<QubitRole>,
}

impl TryFrom<RawCircuit> for Circuit {
    type Error = CircuitError;
    fn try_from(raw: RawCircuit) -> Result<Self, Self::Error> {
        let mut c = Circuit::with_roles(raw.roles);
        if c.width != raw.width {
            return Err(CircuitError::RoleCount {
                found: c.width,
                width: raw.width,
            });
        }
        c.extend(raw.gates)?;
        Ok(c)
    }
}

pub(crate) fn validate_gate(g: &Gate, width: usize) -> Result<(), CircuitError> {
    let qs = g.qubits();
    let mut seen = HashSet::new();
    for &q in &qs {
        if q.0 >= width {
            return Err(CircuitError::QubitOutOfRange { qubit: q, width });
        }
        if !seen.insert(q) {
            return Err(CircuitError::DuplicateQubit(q));
        }
    }
    match g {
        Gate::Marker { kind, .. } if kind.arity() != qs.len() => Err(CircuitError::ArityMismatch {
            gate: g.name(),
            expected: kind.arity(),
            found: qs.len(),
        }),
        Gate::Rtof { phases, .. } => {
            let expected = 1usize << qs.len();
            if phases.len() != expected || !phases.iter().all(|z| z.is_unit_magnitude()) {
                return Err(CircuitError::BadPhaseTable {
                    gate: g.name(),
                    expected,
                });
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

impl Circuit {
    /// Empty circuit, every qubit primary.
    pub fn new(width: usize) -> Self {
        Circuit {
            width,
            gates: Vec::new(),
            roles: vec![QubitRole::Primary; width],
        }
    }

    pub fn with_roles(roles: Vec<QubitRole>) -> Self {
        Circuit {
            width: roles.len(),
            gates: Vec::new(),
            roles,
        }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(width);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn role(&self, q: QubitId) -> QubitRole {
        self.roles[q.0]
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn set_role(&mut self, q: QubitId, role: QubitRole) -> Result<(), CircuitError> {
        if q.0 >= self.width {
            return Err(CircuitError::QubitOutOfRange {
                qubit: q,
                width: self.width,
            });
        }
        self.roles[q.0] = role;
        Ok(())
    }

    pub fn with_role(mut self, q: usize, role: QubitRole) -> Self {
        self.set_role(QubitId(q), role)
            .expect("role index within width");
        self
    }

    pub fn set_roles(&mut self, roles: Vec<QubitRole>) -> Result<(), CircuitError> {
        if roles.len() != self.width {
            return Err(CircuitError::RoleCount {
                found: roles.len(),
                width: self.width,
            });
        }
        self.roles = roles;
        Ok(())
    }

    pub fn push(&mut self, g: Gate) -> Result<(), CircuitError> {
        validate_gate(&g, self.width)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<(), CircuitError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Appends the gates of `other`, which must have the same width.
    pub fn append(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        if other.width != self.width {
            return Err(CircuitError::WidthMismatch(self.width, other.width));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// Replaces the gate list, keeping width and roles.
    pub fn with_gates(&self, gates: Vec<Gate>) -> Result<Circuit, CircuitError> {
        let mut c = Circuit::with_roles(self.roles.clone());
        c.extend(gates)?;
        Ok(c)
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            roles: self.roles.clone(),
        }
    }

    /// Gates of this circuit with qubit `i` sent to `map[i]`.
    pub fn remapped_gates(&self, map: &[QubitId]) -> Vec<Gate> {
        self.gates.iter().map(|g| g.remap(|q| map[q.0])).collect()
    }

    pub fn ancillae(&self) -> Vec<QubitId> {
        self.qubits_with(|r| r.is_ancilla())
    }

    pub fn primaries(&self) -> Vec<QubitId> {
        self.qubits_with(|r| r == QubitRole::Primary)
    }

    fn qubits_with(&self, pred: impl Fn(QubitRole) -> bool) -> Vec<QubitId> {
        (0..self.width)
            .filter(|&q| pred(self.roles[q]))
            .map(QubitId)
            .collect()
    }

    /// True when every gate is in the Clifford+T(+RY) base set.
    pub fn is_lowered(&self) -> bool {
        self.gates.iter().all(Gate::is_lowered)
    }
}

/// What a circuit claims to implement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub kind: TargetKind,
    pub controls: Vec<Control>,
    pub target: QubitId,
    pub equivalence: Equivalence,
    /// Operation applied to the target when all controls fire.
    #[serde(default)]
    pub op: TargetOp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Tof,
    Rtof,
    /// Special-form relative-phase Toffoli: phases constant across basis
    /// states that differ only on these qubits.
    Srtof(Vec<QubitId>),
    /// The identity on every qubit (`controls` and `target` are ignored).
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    Exact,
    GlobalPhase,
    RelativePhase,
    SpecialForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetOp {
    #[default]
    X,
    Z,
    /// The phase gate diag(1, i).
    P,
}

impl TargetSpec {
    /// Exact multiple-control Toffoli with positive controls.
    pub fn tof(controls: &[usize], target: usize) -> Self {
        TargetSpec {
            kind: TargetKind::Tof,
            controls: gate::controls(controls),
            target: QubitId(target),
            equivalence: Equivalence::Exact,
            op: TargetOp::X,
        }
    }

    pub fn rtof(controls: &[usize], target: usize) -> Self {
        TargetSpec {
            kind: TargetKind::Rtof,
            equivalence: Equivalence::RelativePhase,
            ..Self::tof(controls, target)
        }
    }

    pub fn srtof(controls: &[usize], target: usize, xprime: &[usize]) -> Self {
        TargetSpec {
            kind: TargetKind::Srtof(xprime.iter().map(|&q| QubitId(q)).collect()),
            equivalence: Equivalence::SpecialForm,
            ..Self::tof(controls, target)
        }
    }

    pub fn identity() -> Self {
        TargetSpec {
            kind: TargetKind::Identity,
            controls: Vec::new(),
            target: QubitId(0),
            equivalence: Equivalence::Exact,
            op: TargetOp::X,
        }
    }

    pub fn with_op(mut self, op: TargetOp) -> Self {
        self.op = op;
        self
    }

    pub fn with_equivalence(mut self, e: Equivalence) -> Self {
        self.equivalence = e;
        self
    }

    /// Controls followed by target.
    pub fn qubits(&self) -> Vec<QubitId> {
        let mut qs: Vec<QubitId> = self.controls.iter().map(|c| c.qubit).collect();
        qs.push(self.target);
        qs
    }

    pub fn xprime(&self) -> Option<&[QubitId]> {
        match &self.kind {
            TargetKind::Srtof(x) => Some(x),
            _ => None,
        }
    }
}
