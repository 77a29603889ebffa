use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::RingElement;

/// Index into a circuit's qubit register. Qubit 0 is the most significant
/// bit of a basis-state index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QubitId(pub usize);

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

impl From<usize> for QubitId {
    fn from(i: usize) -> Self {
        QubitId(i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: QubitId,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(q: usize) -> Self {
        Control {
            qubit: QubitId(q),
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(q: usize) -> Self {
        Control {
            qubit: QubitId(q),
            polarity: Polarity::Negative,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.polarity == Polarity::Negative
    }

    /// Whether the control fires on a basis state where the qubit reads `bit`.
    pub fn fires(&self, bit: bool) -> bool {
        bit == (self.polarity == Polarity::Positive)
    }
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Positive => write!(f, "{}", self.qubit),
            Polarity::Negative => write!(f, "!{}", self.qubit),
        }
    }
}

/// Local basis indices (target bit 0 and 1) on which a Toffoli with these
/// controls acts nontrivially, over `controls ++ [target]`.
pub fn firing_pair(controls: &[Control]) -> (usize, usize) {
    let base = controls
        .iter()
        .fold(0usize, |acc, c| (acc << 1) | usize::from(!c.is_negative()));
    (base << 1, (base << 1) | 1)
}

pub fn controls(qs: &[usize]) -> Vec<Control> {
    qs.iter().map(|&q| Control::pos(q)).collect()
}

/// High-level relative-phase Toffoli blocks with a fixed Clifford+T definition.
///
/// Arguments are `controls..., target`, in the order the definition uses them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkerKind {
    /// 9-gate self-inverse relative-phase Toffoli (4 T, 3 CNOT, 2 H).
    Rtof3L,
    /// Its 5-gate prefix (2 T, 2 CNOT, 1 H); the Toffoli followed by a tail on (b, c).
    Rtof3S,
    /// Controlled-controlled-iX: CZ(a, c) followed by `Rtof3L`.
    Srtof3,
    /// First 9 gates of the 15-gate Toffoli (4 T, 4 CNOT, 1 H); tail on (a, c).
    Srts3,
    /// 18-gate relative-phase Toffoli-4 (8 T, 6 CNOT, 4 H).
    Rtof4L,
    /// Its 10-gate prefix (4 T, 4 CNOT, 2 H).
    Rtof4S,
}

impl MarkerKind {
    pub const ALL: [MarkerKind; 6] = [
        MarkerKind::Rtof3L,
        MarkerKind::Rtof3S,
        MarkerKind::Srtof3,
        MarkerKind::Srts3,
        MarkerKind::Rtof4L,
        MarkerKind::Rtof4S,
    ];

    /// Number of qubits, target included.
    pub fn arity(self) -> usize {
        match self {
            MarkerKind::Rtof4L | MarkerKind::Rtof4S => 4,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MarkerKind::Rtof3L => "rtof3l",
            MarkerKind::Rtof3S => "rtof3s",
            MarkerKind::Srtof3 => "srtof3",
            MarkerKind::Srts3 => "srts3",
            MarkerKind::Rtof4L => "rtof4l",
            MarkerKind::Rtof4S => "rtof4s",
        }
    }

    /// True for the kinds whose unitary is a phase permutation (no open tail).
    pub fn is_phase_permutation(self) -> bool {
        matches!(
            self,
            MarkerKind::Rtof3L | MarkerKind::Srtof3 | MarkerKind::Rtof4L
        )
    }
}

/// One gate. RY angles are integer multiples of π/4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    X(QubitId),
    Y(QubitId),
    Z(QubitId),
    P(QubitId),
    Pdg(QubitId),
    T(QubitId),
    Tdg(QubitId),
    H(QubitId),
    Ry {
        qubit: QubitId,
        quarter_turns: i32,
    },
    Cnot {
        control: Control,
        target: QubitId,
    },
    Cz {
        control: Control,
        target: QubitId,
    },
    /// Multiple-control Toffoli.
    Tof {
        controls: Vec<Control>,
        target: QubitId,
    },
    Marker {
        kind: MarkerKind,
        inverse: bool,
        controls: Vec<Control>,
        target: QubitId,
    },
    /// Toffoli followed by a diagonal: `|j⟩ ↦ phases[π(j)]·|π(j)⟩`, where the
    /// table is indexed by the local basis index over `controls ++ [target]`
    /// (first control most significant).
    Rtof {
        controls: Vec<Control>,
        target: QubitId,
        phases: Vec<RingElement>,
    },
}

impl Gate {
    pub fn cx(c: usize, t: usize) -> Gate {
        Gate::Cnot {
            control: Control::pos(c),
            target: QubitId(t),
        }
    }

    pub fn cz(c: usize, t: usize) -> Gate {
        Gate::Cz {
            control: Control::pos(c),
            target: QubitId(t),
        }
    }

    pub fn ccx(a: usize, b: usize, t: usize) -> Gate {
        Gate::Tof {
            controls: controls(&[a, b]),
            target: QubitId(t),
        }
    }

    pub fn tof(cs: &[usize], t: usize) -> Gate {
        Gate::Tof {
            controls: controls(cs),
            target: QubitId(t),
        }
    }

    pub fn marker(kind: MarkerKind, args: &[usize]) -> Gate {
        let (t, cs) = args.split_last().expect("marker needs arguments");
        Gate::Marker {
            kind,
            inverse: false,
            controls: controls(cs),
            target: QubitId(*t),
        }
    }

    pub fn ry(q: usize, quarter_turns: i32) -> Gate {
        Gate::Ry {
            qubit: QubitId(q),
            quarter_turns,
        }
    }

    /// Control qubits (with polarity), empty for uncontrolled gates.
    pub fn controls(&self) -> Vec<Control> {
        match self {
            Gate::Cnot { control, .. } | Gate::Cz { control, .. } => vec![*control],
            Gate::Tof { controls, .. }
            | Gate::Marker { controls, .. }
            | Gate::Rtof { controls, .. } => controls.clone(),
            _ => Vec::new(),
        }
    }

    /// The qubit the gate acts on (the target, for controlled gates).
    pub fn target(&self) -> QubitId {
        match self {
            Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q)
            | Gate::P(q)
            | Gate::Pdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::H(q) => *q,
            Gate::Ry { qubit, .. } => *qubit,
            Gate::Cnot { target, .. }
            | Gate::Cz { target, .. }
            | Gate::Tof { target, .. }
            | Gate::Marker { target, .. }
            | Gate::Rtof { target, .. } => *target,
        }
    }

    /// Controls followed by the target.
    pub fn qubits(&self) -> Vec<QubitId> {
        let mut qs: Vec<QubitId> = self.controls().iter().map(|c| c.qubit).collect();
        qs.push(self.target());
        qs
    }

    pub fn acts_on(&self, q: QubitId) -> bool {
        self.target() == q || self.controls().iter().any(|c| c.qubit == q)
    }

    pub fn shares_qubit(&self, other: &Gate) -> bool {
        self.qubits().iter().any(|&q| other.acts_on(q))
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::P(q) => Gate::Pdg(*q),
            Gate::Pdg(q) => Gate::P(*q),
            Gate::T(q) => Gate::Tdg(*q),
            Gate::Tdg(q) => Gate::T(*q),
            Gate::Ry {
                qubit,
                quarter_turns,
            } => Gate::Ry {
                qubit: *qubit,
                quarter_turns: -quarter_turns,
            },
            Gate::Marker {
                kind,
                inverse,
                controls,
                target,
            } => Gate::Marker {
                kind: *kind,
                inverse: !inverse,
                controls: controls.clone(),
                target: *target,
            },
            Gate::Rtof {
                controls,
                target,
                phases,
            } => {
                // (D·TOF)⁻¹ = TOF·D* = (TOF·D*·TOF)·TOF: conjugate and swap
                // the two entries the Toffoli exchanges.
                let (lo, hi) = firing_pair(controls);
                let mut inv: Vec<RingElement> = phases.iter().map(|z| z.conj()).collect();
                inv.swap(lo, hi);
                Gate::Rtof {
                    controls: controls.clone(),
                    target: *target,
                    phases: inv,
                }
            }
            other => other.clone(),
        }
    }

    /// True when the gate is in the Clifford+T(+RY) base set with positive controls.
    pub fn is_lowered(&self) -> bool {
        match self {
            Gate::Tof { .. } | Gate::Marker { .. } | Gate::Rtof { .. } => false,
            Gate::Cnot { control, .. } | Gate::Cz { control, .. } => !control.is_negative(),
            _ => true,
        }
    }

    /// Short lowercase mnemonic.
    pub fn name(&self) -> String {
        match self {
            Gate::X(_) => "x".into(),
            Gate::Y(_) => "y".into(),
            Gate::Z(_) => "z".into(),
            Gate::P(_) => "s".into(),
            Gate::Pdg(_) => "sdg".into(),
            Gate::T(_) => "t".into(),
            Gate::Tdg(_) => "tdg".into(),
            Gate::H(_) => "h".into(),
            Gate::Ry { .. } => "ry".into(),
            Gate::Cnot { .. } => "cx".into(),
            Gate::Cz { .. } => "cz".into(),
            Gate::Tof { controls, .. } => format!("tof{}", controls.len() + 1),
            Gate::Marker { kind, inverse, .. } => {
                if *inverse {
                    format!("{}_inv", kind.name())
                } else {
                    kind.name().into()
                }
            }
            Gate::Rtof { controls, .. } => format!("rtof{}", controls.len() + 1),
        }
    }

    /// Same gate with every qubit passed through `map`.
    pub fn remap(&self, map: impl Fn(QubitId) -> QubitId) -> Gate {
        let rc = |c: &Control| Control {
            qubit: map(c.qubit),
            polarity: c.polarity,
        };
        match self {
            Gate::X(q) => Gate::X(map(*q)),
            Gate::Y(q) => Gate::Y(map(*q)),
            Gate::Z(q) => Gate::Z(map(*q)),
            Gate::P(q) => Gate::P(map(*q)),
            Gate::Pdg(q) => Gate::Pdg(map(*q)),
            Gate::T(q) => Gate::T(map(*q)),
            Gate::Tdg(q) => Gate::Tdg(map(*q)),
            Gate::H(q) => Gate::H(map(*q)),
            Gate::Ry {
                qubit,
                quarter_turns,
            } => Gate::Ry {
                qubit: map(*qubit),
                quarter_turns: *quarter_turns,
            },
            Gate::Cnot { control, target } => Gate::Cnot {
                control: rc(control),
                target: map(*target),
            },
            Gate::Cz { control, target } => Gate::Cz {
                control: rc(control),
                target: map(*target),
            },
            Gate::Tof { controls, target } => Gate::Tof {
                controls: controls.iter().map(rc).collect(),
                target: map(*target),
            },
            Gate::Marker {
                kind,
                inverse,
                controls,
                target,
            } => Gate::Marker {
                kind: *kind,
                inverse: *inverse,
                controls: controls.iter().map(rc).collect(),
                target: map(*target),
            },
            Gate::Rtof {
                controls,
                target,
                phases,
            } => Gate::Rtof {
                controls: controls.iter().map(rc).collect(),
                target: map(*target),
                phases: phases.clone(),
            },
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = match self {
            Gate::Ry {
                qubit,
                quarter_turns,
            } => return write!(f, "ry({quarter_turns}·π/4) {qubit}"),
            _ => self
                .controls()
                .iter()
                .map(|c| c.to_string())
                .chain(std::iter::once(self.target().to_string()))
                .collect(),
        };
        write!(f, "{} {}", self.name(), args.join(","))
    }
}
