//! Replacing a pair of identical Toffolis around a middle block with a
//! relative-phase implementation and its inverse.
//!
//! Write the implementation as `R = TOF` followed by a block `E` on the same
//! qubits. The pair `TOF · M · TOF` becomes `R · M · R⁻¹`, whose unitary is
//! `TOF · E⁻¹ M E · TOF`; it is unchanged exactly when `E` commutes with the
//! middle block `M`. A sufficient condition, checked qubit by qubit: where `M`
//! is active, `E` is untouched; where `M` is diagonal, `E` is not active.

use serde::Serialize;

use super::anf::{qubit_effects, QubitEffect};
use super::RewriteError;
use crate::circuit::{count_resources, Circuit, Control, Gate, MarkerKind, QubitId};
use crate::verify::simulate_columns;
use crate::ring::RingElement;

/// Which conjugation identity a match falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// The middle block leaves the controls alone and the target in its
    /// computational basis.
    Prop1,
    /// The middle block avoids the target and some of the controls (`Z`) and
    /// acts on the others (`Y`).
    Prop2,
    /// The middle block acts on the target but avoids some controls (`W`).
    Prop3,
    None,
}

/// A pair of identical Toffolis and how the gates between them treat its qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationMatch {
    pub left_index: usize,
    pub right_index: usize,
    pub controls: Vec<Control>,
    pub target: QubitId,
    pub classification: Classification,
    /// Effect of the middle block on each control, in gate order.
    pub control_effects: Vec<QubitEffect>,
    pub target_effect: QubitEffect,
}

impl ConjugationMatch {
    pub fn arity(&self) -> usize {
        self.controls.len() + 1
    }

    pub fn middle<'a>(&self, c: &'a Circuit) -> &'a [Gate] {
        &c.gates()[self.left_index + 1..self.right_index]
    }

    /// Controls the middle block acts on.
    pub fn touched_controls(&self) -> Vec<QubitId> {
        self.select_controls(true)
    }

    /// Controls the middle block avoids.
    pub fn untouched_controls(&self) -> Vec<QubitId> {
        self.select_controls(false)
    }

    fn select_controls(&self, touched: bool) -> Vec<QubitId> {
        self.controls
            .iter()
            .zip(&self.control_effects)
            .filter(|(_, e)| e.is_touched() == touched)
            .map(|(c, _)| c.qubit)
            .collect()
    }

    /// Middle-block effects over `controls ++ [target]`.
    fn local_effects(&self) -> Vec<QubitEffect> {
        let mut v = self.control_effects.clone();
        v.push(self.target_effect);
        v
    }
}

fn classify(controls: &[QubitEffect], target: QubitEffect) -> Classification {
    let any_untouched = controls.iter().any(|e| !e.is_touched());
    if controls.iter().all(|e| !e.is_touched()) && target != QubitEffect::Active {
        Classification::Prop1
    } else if !target.is_touched() && any_untouched {
        Classification::Prop2
    } else if target.is_touched() && any_untouched {
        Classification::Prop3
    } else {
        Classification::None
    }
}

/// Every pair `i < j` of equal Toffolis (two or more controls), classified.
pub fn find_conjugations(c: &Circuit) -> Vec<ConjugationMatch> {
    let gates = c.gates();
    let mut out = Vec::new();
    for (i, g) in gates.iter().enumerate() {
        let Gate::Tof { controls, target } = g else {
            continue;
        };
        if controls.len() < 2 {
            continue;
        }
        for (j, h) in gates.iter().enumerate().skip(i + 1) {
            if h != g {
                continue;
            }
            let effects = qubit_effects(c.width(), &gates[i + 1..j]);
            let control_effects: Vec<QubitEffect> =
                controls.iter().map(|q| effects[q.qubit.0]).collect();
            let target_effect = effects[target.0];
            out.push(ConjugationMatch {
                left_index: i,
                right_index: j,
                controls: controls.clone(),
                target: *target,
                classification: classify(&control_effects, target_effect),
                control_effects,
                target_effect,
            });
        }
    }
    out
}

/// The block used to implement the Toffoli.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ImplBlock {
    /// The Toffoli itself (always compatible, never cheaper).
    Toffoli,
    Marker(MarkerKind),
}

/// An implementation for a match: a block, whether it is used inverted, and
/// which of the match's controls feeds each control slot of the block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplChoice {
    pub block: ImplBlock,
    pub inverse: bool,
    pub order: Vec<usize>,
}

impl ImplChoice {
    pub fn arity(&self) -> Option<usize> {
        match self.block {
            ImplBlock::Toffoli => None,
            ImplBlock::Marker(k) => Some(k.arity()),
        }
    }

    /// The gate replacing the left Toffoli of a pair on `controls; target`.
    pub fn gate(&self, controls: &[Control], target: QubitId) -> Gate {
        match self.block {
            ImplBlock::Toffoli => Gate::Tof {
                controls: controls.to_vec(),
                target,
            },
            ImplBlock::Marker(kind) => Gate::Marker {
                kind,
                inverse: self.inverse,
                controls: self.order.iter().map(|&i| controls[i]).collect(),
                target,
            },
        }
    }

    /// `(cnot, t)` after expansion.
    pub fn cost(&self, controls: &[Control], target: QubitId) -> (usize, usize) {
        let width = controls
            .iter()
            .map(|c| c.qubit.0)
            .chain([target.0])
            .max()
            .unwrap_or(0)
            + 1;
        let c = Circuit::from_gates(width, vec![self.gate(controls, target)])
            .expect("gate fits its own width");
        let r = count_resources(&c);
        (r.cnot, r.t)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in (0..n).rev() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    // Identity first, then lexicographic.
    out.sort();
    out
}

/// Every implementation of the right arity, in catalog order.
pub fn candidates(arity: usize) -> Vec<ImplChoice> {
    let mut out = vec![ImplChoice {
        block: ImplBlock::Toffoli,
        inverse: false,
        order: (0..arity - 1).collect(),
    }];
    for kind in MarkerKind::ALL.into_iter().filter(|k| k.arity() == arity) {
        for order in permutations(arity - 1) {
            for inverse in [false, true] {
                out.push(ImplChoice {
                    block: ImplBlock::Marker(kind),
                    inverse,
                    order: order.clone(),
                });
            }
        }
    }
    out
}

/// Effect of `E` (the Toffoli followed by the implementation) on each local
/// qubit, from its exact unitary.
fn tail_effects(controls: &[Control], choice: &ImplChoice) -> Vec<QubitEffect> {
    let n = controls.len() + 1;
    let local: Vec<Control> = controls
        .iter()
        .enumerate()
        .map(|(i, c)| Control {
            qubit: QubitId(i),
            polarity: c.polarity,
        })
        .collect();
    let target = QubitId(n - 1);
    let e = Circuit::from_gates(
        n,
        vec![
            Gate::Tof {
                controls: local.clone(),
                target,
            },
            choice.gate(&local, target),
        ],
    )
    .expect("local qubits");
    let inputs: Vec<u64> = (0..1u64 << n).collect();
    let cols = simulate_columns::<RingElement>(&e, &inputs).expect("catalog blocks simulate");
    (0..n)
        .map(|q| {
            let m = 1u64 << (n - 1 - q);
            let mut diagonal = true;
            let mut identity = true;
            for col in &cols {
                for &(i, a) in col.state.amplitudes() {
                    if (i ^ col.input) & m != 0 {
                        diagonal = false;
                    } else if cols[(col.input ^ m) as usize].state.amplitude(i ^ m) != a {
                        identity = false;
                    }
                }
            }
            match (diagonal, identity) {
                (true, true) => QubitEffect::Untouched,
                (true, false) => QubitEffect::Diagonal,
                _ => QubitEffect::Active,
            }
        })
        .collect()
}

/// Why `choice` cannot replace the pair in `m`, if it cannot.
fn incompatibility(m: &ConjugationMatch, choice: &ImplChoice) -> Option<RewriteError> {
    if let Some(a) = choice.arity() {
        if a != m.arity() {
            return Some(RewriteError::ArityMismatch {
                expected: m.arity(),
                got: a,
            });
        }
    }
    if choice.order.len() != m.controls.len() {
        return Some(RewriteError::ArityMismatch {
            expected: m.arity(),
            got: choice.order.len() + 1,
        });
    }
    let tail = tail_effects(&m.controls, choice);
    let mut qubits: Vec<QubitId> = m.controls.iter().map(|c| c.qubit).collect();
    qubits.push(m.target);
    for ((q, mid), e) in qubits.into_iter().zip(m.local_effects()).zip(tail) {
        match (mid, e) {
            (QubitEffect::Active, QubitEffect::Diagonal) => {
                return Some(RewriteError::SpecialFormViolated { qubit: q })
            }
            (QubitEffect::Active, QubitEffect::Active)
            | (QubitEffect::Diagonal, QubitEffect::Active) => {
                return Some(RewriteError::TailConflict { qubit: q })
            }
            _ => {}
        }
    }
    None
}

/// Implementations that keep the unitary of the matched circuit unchanged.
pub fn compatible_implementations(m: &ConjugationMatch) -> Vec<ImplChoice> {
    candidates(m.arity())
        .into_iter()
        .filter(|c| incompatibility(m, c).is_none())
        .collect()
}

/// The default choice: fewest CNOTs, then fewest T gates, then catalog order.
/// `None` when only the Toffoli itself fits.
pub fn choose_implementation(m: &ConjugationMatch) -> Option<ImplChoice> {
    compatible_implementations(m)
        .into_iter()
        .filter(|c| c.block != ImplBlock::Toffoli)
        .min_by_key(|c| c.cost(&m.controls, m.target))
}

fn check_pair(c: &Circuit, m: &ConjugationMatch) -> Result<(), RewriteError> {
    let expected = Gate::Tof {
        controls: m.controls.clone(),
        target: m.target,
    };
    let ok = m.left_index < m.right_index
        && c.gates().get(m.left_index) == Some(&expected)
        && c.gates().get(m.right_index) == Some(&expected);
    if ok {
        Ok(())
    } else {
        Err(RewriteError::StaleMatch {
            left: m.left_index,
            right: m.right_index,
        })
    }
}

/// Replaces the pair in `m` with `choice` and its inverse, after checking that
/// the replacement preserves the unitary.
pub fn apply_replacement(
    c: &Circuit,
    m: &ConjugationMatch,
    choice: &ImplChoice,
) -> Result<Circuit, RewriteError> {
    check_pair(c, m)?;
    if m.classification == Classification::None {
        return Err(RewriteError::Unclassified);
    }
    if let Some(e) = incompatibility(m, choice) {
        return Err(e);
    }
    apply_replacement_unchecked(c, m, choice)
}

/// [`apply_replacement`] without the compatibility check, for demonstrating
/// what goes wrong when it is skipped.
pub fn apply_replacement_unchecked(
    c: &Circuit,
    m: &ConjugationMatch,
    choice: &ImplChoice,
) -> Result<Circuit, RewriteError> {
    check_pair(c, m)?;
    let g = choice.gate(&m.controls, m.target);
    let mut gates = c.gates().to_vec();
    gates[m.right_index] = g.inverse();
    gates[m.left_index] = g;
    Ok(c.with_gates(gates)?)
}
