use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::phase_perm::{target_permutation, PhasePermutation};
use super::state::{SimError, StateVector};
use crate::circuit::lower::expand_fixed;
use crate::circuit::{Circuit, Equivalence, Gate, MarkerKind, QubitId, QubitRole, TargetSpec};
use crate::constructions::blocks;
use crate::ring::{Amplitude, Backend, RingElement};

/// Widest circuit the simulator accepts.
pub const WIDTH_LIMIT: usize = 16;
/// Widest circuit for which a non-phase-permutation unitary is materialized.
pub const DENSE_LIMIT: usize = 12;

/// Environment variable that forces a backend (`ring` or `float`).
pub const BACKEND_ENV: &str = "RPHASE_BACKEND";

/// Gates ready for simulation: markers replaced by their definitions.
pub fn simulation_gates(c: &Circuit) -> Vec<Gate> {
    c.gates()
        .iter()
        .flat_map(|g| match g {
            Gate::Marker { .. } => expand_fixed(g).expect("markers always expand"),
            _ => vec![g.clone()],
        })
        .collect()
}

/// The backend to use for `c`: the environment override if set, otherwise
/// ring unless some R_Y angle is an odd multiple of π/4.
pub fn select_backend(c: &Circuit) -> Backend {
    if let Some(b) = std::env::var(BACKEND_ENV)
        .ok()
        .and_then(|v| v.parse::<Backend>().ok())
    {
        return b;
    }
    let odd_ry = c
        .gates()
        .iter()
        .any(|g| matches!(g, Gate::Ry { quarter_turns, .. } if quarter_turns % 2 != 0));
    if odd_ry {
        Backend::Float
    } else {
        Backend::Ring
    }
}

fn check_width(width: usize) -> Result<(), SimError> {
    if width > WIDTH_LIMIT {
        return Err(SimError::WidthLimit {
            width,
            limit: WIDTH_LIMIT,
        });
    }
    Ok(())
}

/// One simulated column and the largest support seen while computing it.
#[derive(Debug, Clone)]
pub struct Column<A> {
    pub input: u64,
    pub state: StateVector<A>,
    pub peak_support: usize,
}

fn run_column<A: Amplitude>(width: usize, gates: &[Gate], input: u64) -> Result<Column<A>, SimError> {
    let mut state = StateVector::basis(width, input);
    let mut peak = 1;
    for g in gates {
        state.apply_gate(g)?;
        peak = peak.max(state.support());
    }
    Ok(Column {
        input,
        state,
        peak_support: peak,
    })
}

/// Simulates `U|j⟩` for each input `j`, in parallel.
pub fn simulate_columns<A: Amplitude>(c: &Circuit, inputs: &[u64]) -> Result<Vec<Column<A>>, SimError> {
    check_width(c.width())?;
    let gates = simulation_gates(c);
    inputs
        .par_iter()
        .map(|&j| run_column(c.width(), &gates, j))
        .collect()
}

/// Unitary stored column by column (each column sparse).
#[derive(Debug, Clone)]
pub struct DenseMatrix<A> {
    width: usize,
    columns: Vec<StateVector<A>>,
}

impl<A: Amplitude> DenseMatrix<A> {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entry(&self, i: u64, j: u64) -> A {
        self.columns[j as usize].amplitude(i)
    }

    pub fn column(&self, j: u64) -> &StateVector<A> {
        &self.columns[j as usize]
    }
}

#[derive(Debug, Clone)]
pub enum Unitary<A> {
    PhasePermutation(PhasePermutation<A>),
    Dense(DenseMatrix<A>),
}

fn collapse<A: Amplitude>(width: usize, cols: &[Column<A>]) -> Option<PhasePermutation<A>> {
    let (perm, phases) = cols
        .iter()
        .map(|col| col.state.as_basis())
        .collect::<Option<(Vec<u64>, Vec<A>)>>()?;
    PhasePermutation::new(width, perm, phases).ok()
}

/// The full unitary of `c`: a phase permutation when every column collapses,
/// otherwise the column matrix (up to [`DENSE_LIMIT`] qubits).
pub fn unitary_columns<A: Amplitude>(c: &Circuit) -> Result<Unitary<A>, SimError> {
    let inputs: Vec<u64> = (0..1u64 << c.width()).collect();
    let cols = simulate_columns::<A>(c, &inputs)?;
    if let Some(p) = collapse(c.width(), &cols) {
        return Ok(Unitary::PhasePermutation(p));
    }
    if c.width() > DENSE_LIMIT {
        let column = cols
            .iter()
            .find(|col| col.state.as_basis().is_none())
            .map_or(0, |col| col.input);
        return Err(SimError::NotPhasePermutation { column });
    }
    Ok(Unitary::Dense(DenseMatrix {
        width: c.width(),
        columns: cols.into_iter().map(|col| col.state).collect(),
    }))
}

/// The unitary of `c` as a phase permutation, or an error naming the first
/// column that does not collapse.
pub fn phase_permutation<A: Amplitude>(c: &Circuit) -> Result<PhasePermutation<A>, SimError> {
    let inputs: Vec<u64> = (0..1u64 << c.width()).collect();
    let cols = simulate_columns::<A>(c, &inputs)?;
    if let Some(col) = cols.iter().find(|col| col.state.as_basis().is_none()) {
        return Err(SimError::NotPhasePermutation { column: col.input });
    }
    collapse(c.width(), &cols).ok_or(SimError::NotPhasePermutation { column: 0 })
}

/// Whether two circuits have the same unitary (exactly, or within tolerance
/// on the float backend).
pub fn same_unitary(a: &Circuit, b: &Circuit) -> Result<bool, SimError> {
    if a.width() != b.width() {
        return Err(SimError::WidthMismatch(a.width(), b.width()));
    }
    let float = select_backend(a) == Backend::Float || select_backend(b) == Backend::Float;
    if float {
        same_unitary_with::<Complex64>(a, b)
    } else {
        same_unitary_with::<RingElement>(a, b)
    }
}

fn same_unitary_with<A: Amplitude>(a: &Circuit, b: &Circuit) -> Result<bool, SimError> {
    check_width(a.width())?;
    let (ga, gb) = (simulation_gates(a), simulation_gates(b));
    let w = a.width();
    let inputs: Vec<u64> = (0..1u64 << w).collect();
    let results: Vec<bool> = inputs
        .par_iter()
        .map(|&j| {
            let x = run_column::<A>(w, &ga, j)?;
            let y = run_column::<A>(w, &gb, j)?;
            Ok(x.state.approx_eq(&y.state))
        })
        .collect::<Result<_, SimError>>()?;
    Ok(results.into_iter().all(|ok| ok))
}

/// Whether `u` performs the same permutation as `spec` on `u.width()` qubits.
pub fn is_relative_phase_of<A: Amplitude>(u: &PhasePermutation<A>, spec: &TargetSpec) -> bool {
    u.permutation() == target_permutation::<RingElement>(spec, u.width()).permutation()
}

fn qubit_mask(width: usize, qs: &[QubitId]) -> u64 {
    qs.iter().fold(0, |m, q| m | 1u64 << (width - 1 - q.0))
}

/// Special form of type `xprime`: a relative-phase version of `spec` whose
/// row phases do not change when only bits in `xprime` change.
pub fn is_special_form<A: Amplitude>(
    u: &PhasePermutation<A>,
    spec: &TargetSpec,
    xprime: &[QubitId],
) -> bool {
    if !is_relative_phase_of(u, spec) {
        return false;
    }
    let mask = qubit_mask(u.width(), xprime);
    (0..u.dim() as u64).all(|i| u.row_phase(i).approx_eq(u.row_phase(i & !mask)))
}

/// Same permutation and phases up to a global unit factor.
pub fn global_phase_equal<A: Amplitude>(u: &PhasePermutation<A>, v: &PhasePermutation<A>) -> bool {
    u.equal_up_to_global_phase(v)
}

/// Sign of the permutation `u` performs.
pub fn permutation_parity<A: Amplitude>(u: &PhasePermutation<A>) -> i8 {
    u.parity()
}

/// Row-indexed phases of a marker on qubits `0..arity` (controls, then
/// target), for the kinds that are phase permutations performing the
/// positive-control Toffoli.
pub fn marker_phase_table(kind: MarkerKind) -> Option<Vec<RingElement>> {
    let n = kind.arity();
    let args: Vec<usize> = (0..n).collect();
    let c = Circuit::from_gates(n, blocks::marker_definition(kind, &args)).ok()?;
    let u = phase_permutation::<RingElement>(&c).ok()?;
    let spec = TargetSpec::tof(&args[..n - 1], n - 1);
    is_relative_phase_of(&u, &spec).then(|| u.row_phases())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialFormResult {
    pub xprime: Vec<QubitId>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub exact: bool,
    pub global_phase: bool,
    pub relative_phase: bool,
    pub special_form: SpecialFormResult,
    pub ancilla_ok: bool,
    pub backend: Backend,
    /// Largest number of nonzero amplitudes held while simulating a column.
    #[serde(skip)]
    pub max_support: usize,
    /// Number of columns simulated.
    #[serde(skip)]
    pub columns: usize,
}

impl VerificationReport {
    /// Whether the level of equivalence `spec` asks for holds, ancillae included.
    pub fn satisfies(&self, e: Equivalence) -> bool {
        self.ancilla_ok
            && match e {
                Equivalence::Exact => self.exact,
                Equivalence::GlobalPhase => self.global_phase,
                Equivalence::RelativePhase => self.relative_phase,
                Equivalence::SpecialForm => self.special_form.holds,
            }
    }

    pub fn passed(&self, spec: &TargetSpec) -> bool {
        self.satisfies(spec.equivalence)
    }
}

/// Checks `c` against `spec`.
///
/// Clean ancillae are only fed |0⟩ and must come back as |0⟩. Dirty ancillae
/// take every input, must be restored, and the phase relative to the ideal
/// unitary must not depend on their value.
pub fn check_implements(c: &Circuit, spec: &TargetSpec) -> Result<VerificationReport, SimError> {
    match select_backend(c) {
        Backend::Ring => check_with::<RingElement>(c, spec),
        Backend::Float => check_with::<Complex64>(c, spec),
    }
}

fn check_with<A: Amplitude>(c: &Circuit, spec: &TargetSpec) -> Result<VerificationReport, SimError> {
    let w = c.width();
    check_width(w)?;
    let mask_of = |role: QubitRole| {
        let qs: Vec<QubitId> = (0..w)
            .map(QubitId)
            .filter(|&q| c.role(q) == role)
            .collect();
        qubit_mask(w, &qs)
    };
    let clean = mask_of(QubitRole::CleanAncilla);
    let dirty = mask_of(QubitRole::DirtyAncilla);
    let inputs: Vec<u64> = (0..1u64 << w).filter(|j| j & clean == 0).collect();
    let cols = simulate_columns::<A>(c, &inputs)?;
    let ideal = target_permutation::<A>(spec, w);

    let mut outs = Vec::with_capacity(cols.len());
    for col in &cols {
        let (i, z) = col
            .state
            .as_basis()
            .ok_or(SimError::NotPhasePermutation { column: col.input })?;
        outs.push((col.input, i, z));
    }

    let restores = outs.iter().all(|&(j, i, _)| i & clean == 0 && (i ^ j) & dirty == 0);
    let relative_phase = outs.iter().all(|&(j, i, _)| i == ideal.image(j));
    let ratio = |j: u64, z: A| z * ideal.column_phase(j).conj();
    let ratios: HashMap<u64, A> = outs.iter().map(|&(j, _, z)| (j, ratio(j, z))).collect();
    let dirty_phase_ok = relative_phase
        && outs
            .iter()
            .all(|&(j, _, z)| ratio(j, z).approx_eq(ratios[&(j & !dirty)]));
    let ancilla_ok = restores && (dirty == 0 || dirty_phase_ok);

    let exact = relative_phase
        && outs
            .iter()
            .all(|&(j, _, z)| z.approx_eq(ideal.column_phase(j)));
    let global_phase = relative_phase && {
        let r0 = ratios[&outs[0].0];
        ratios.values().all(|r| r.approx_eq(r0))
    };

    let xprime: Vec<QubitId> = spec.xprime().map(<[QubitId]>::to_vec).unwrap_or_default();
    let xmask = qubit_mask(w, &xprime);
    let rows: HashMap<u64, A> = outs.iter().map(|&(_, i, z)| (i, z)).collect();
    let holds = relative_phase
        && rows
            .iter()
            .all(|(&i, &z)| rows.get(&(i & !xmask)).is_some_and(|&z0| z.approx_eq(z0)));

    Ok(VerificationReport {
        exact,
        global_phase,
        relative_phase,
        special_form: SpecialFormResult { xprime, holds },
        ancilla_ok,
        backend: A::BACKEND,
        max_support: cols.iter().map(|c| c.peak_support).max().unwrap_or(0),
        columns: cols.len(),
    })
}
