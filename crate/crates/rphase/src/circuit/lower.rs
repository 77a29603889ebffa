//! Expansion of markers and Toffolis into the Clifford+T base set.

use std::sync::OnceLock;

use super::{Circuit, CircuitError, Control, Gate, MarkerKind, QubitId, QubitRole};
use crate::constructions::{self, blocks};
use crate::ring::RingElement;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LowerError {
    #[error("no construction for gate {0}")]
    NoConstruction(String),
    #[error("ancilla budget exceeded: {gate} needs {needed} ancillae, {available} available")]
    AncillaBudget {
        gate: String,
        needed: usize,
        available: usize,
    },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// How Toffolis with three or more controls borrow helper qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AncillaStrategy {
    /// Use qubits declared as clean ancillae.
    Clean,
    /// Borrow any qubit the gate does not touch.
    Dirty,
    /// Clean when enough clean ancillae are declared, otherwise dirty.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoweringPolicy {
    /// `None` refuses to lower Toffolis with three or more controls.
    pub large_toffoli: Option<AncillaStrategy>,
}

impl Default for LoweringPolicy {
    fn default() -> Self {
        LoweringPolicy {
            large_toffoli: Some(AncillaStrategy::Auto),
        }
    }
}

fn local_args(controls: &[Control], target: QubitId) -> Vec<usize> {
    controls
        .iter()
        .map(|c| c.qubit.0)
        .chain(std::iter::once(target.0))
        .collect()
}

/// Phase tables of the marker kinds that are phase permutations, keyed by
/// kind, computed once by simulation.
fn catalog_tables() -> &'static [(MarkerKind, Vec<RingElement>)] {
    static TABLES: OnceLock<Vec<(MarkerKind, Vec<RingElement>)>> = OnceLock::new();
    TABLES.get_or_init(|| {
        MarkerKind::ALL
            .iter()
            .filter(|k| k.is_phase_permutation())
            .map(|&k| {
                let table = crate::verify::marker_phase_table(k)
                    .expect("phase-permutation markers have phase tables");
                (k, table)
            })
            .collect()
    })
}

/// Base-gate expansion of `g` when it has a fixed ancilla-free definition;
/// `None` for gates already in the base set and for gates that need a policy.
pub fn expand_fixed(g: &Gate) -> Option<Vec<Gate>> {
    match g {
        Gate::Cnot { control, target } if control.is_negative() => Some(blocks::wrap_negative(
            &[*control],
            vec![Gate::Cnot {
                control: Control::pos(control.qubit.0),
                target: *target,
            }],
        )),
        Gate::Cz { control, target } if control.is_negative() => Some(blocks::wrap_negative(
            &[*control],
            vec![Gate::Cz {
                control: Control::pos(control.qubit.0),
                target: *target,
            }],
        )),
        Gate::Tof { controls, target } => {
            let body = match controls.len() {
                0 => vec![Gate::X(*target)],
                1 => vec![Gate::Cnot {
                    control: Control::pos(controls[0].qubit.0),
                    target: *target,
                }],
                2 => blocks::toffoli3(controls[0].qubit.0, controls[1].qubit.0, target.0),
                _ => return None,
            };
            Some(blocks::wrap_negative(controls, body))
        }
        Gate::Marker {
            kind,
            inverse,
            controls,
            target,
        } => {
            let mut body = blocks::marker_definition(*kind, &local_args(controls, *target));
            if *inverse {
                body = blocks::inverted(&body);
            }
            Some(blocks::wrap_negative(controls, body))
        }
        Gate::Rtof {
            controls,
            target,
            phases,
        } => {
            // The table is written in terms of the gate's own polarities, so
            // X-wrapping the negative controls permutes it; only tables that
            // match a catalog block under all-positive controls are expanded.
            if controls.iter().any(Control::is_negative) {
                return None;
            }
            let (kind, _) = catalog_tables()
                .iter()
                .find(|(k, t)| k.arity() == phases.len().trailing_zeros() as usize && t == phases)?;
            Some(blocks::marker_definition(*kind, &local_args(controls, *target)))
        }
        _ => None,
    }
}

fn pick_ancillae(
    c: &Circuit,
    gate: &Gate,
    needed: usize,
    clean: bool,
) -> Option<Vec<QubitId>> {
    let free = |q: &QubitId| !gate.acts_on(*q);
    let mut pool: Vec<QubitId> = if clean {
        c.ancillae()
            .into_iter()
            .filter(|q| c.role(*q) == QubitRole::CleanAncilla)
            .filter(free)
            .collect()
    } else {
        // Declared ancillae first, then idle primaries.
        let mut v: Vec<QubitId> = c.ancillae().into_iter().filter(free).collect();
        v.extend(c.primaries().into_iter().filter(free));
        v
    };
    if pool.len() < needed {
        return None;
    }
    pool.truncate(needed);
    Some(pool)
}

fn available(c: &Circuit, gate: &Gate, clean: bool) -> usize {
    (0..c.width())
        .map(QubitId)
        .filter(|q| !gate.acts_on(*q))
        .filter(|q| !clean || c.role(*q) == QubitRole::CleanAncilla)
        .count()
}

fn lower_large_toffoli(
    c: &Circuit,
    g: &Gate,
    controls: &[Control],
    target: QubitId,
    strategy: AncillaStrategy,
) -> Result<Vec<Gate>, LowerError> {
    let n = controls.len() + 1;
    let needed = (n - 2) / 2;
    let clean = match strategy {
        AncillaStrategy::Clean => true,
        AncillaStrategy::Dirty => false,
        AncillaStrategy::Auto => pick_ancillae(c, g, needed, true).is_some(),
    };
    let anc = pick_ancillae(c, g, needed, clean).ok_or_else(|| LowerError::AncillaBudget {
        gate: g.to_string(),
        needed,
        available: available(c, g, clean),
    })?;
    let built = if clean {
        constructions::tofn_clean(n)
    } else if n == 4 {
        constructions::tof4_dirty()
    } else {
        constructions::tofn_dirty(n)
    }
    .map_err(|e| LowerError::NoConstruction(format!("{g}: {e}")))?;

    let inner = &built.circuit;
    let mut map = vec![QubitId(usize::MAX); inner.width()];
    for (src, dst) in built.target.controls.iter().zip(controls) {
        map[src.qubit.0] = dst.qubit;
    }
    map[built.target.target.0] = target;
    for (src, dst) in inner.ancillae().iter().zip(&anc) {
        map[src.0] = *dst;
    }
    Ok(blocks::wrap_negative(controls, inner.remapped_gates(&map)))
}

/// Rewrites `c` so that it contains only X, Y, Z, P, P†, T, T†, H, RY, CNOT
/// and CZ with positive controls.
pub fn lower(c: &Circuit, policy: &LoweringPolicy) -> Result<Circuit, LowerError> {
    let mut out = Vec::with_capacity(c.len());
    for g in c.gates() {
        if let Some(v) = expand_fixed(g) {
            out.extend(v);
            continue;
        }
        match g {
            Gate::Tof { controls, target } => {
                let strategy = policy
                    .large_toffoli
                    .ok_or_else(|| LowerError::NoConstruction(g.to_string()))?;
                out.extend(lower_large_toffoli(c, g, controls, *target, strategy)?);
            }
            Gate::Rtof { .. } | Gate::Marker { .. } => {
                return Err(LowerError::NoConstruction(g.to_string()))
            }
            other => out.push(other.clone()),
        }
    }
    Ok(c.with_gates(out)?)
}
