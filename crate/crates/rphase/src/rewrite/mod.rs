//! Peephole rewrites: relative-phase replacement of Toffoli pairs, canonic
//! decomposition of relative-phase Toffolis, and inverse-pair cancellation.

mod anf;
mod cancel;
mod conjugation;

use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{
    count_resources, lower, Circuit, CircuitError, LowerError, LoweringPolicy, QubitId,
    ResourceReport, TargetSpec,
};
use crate::ring::RingElement;
use crate::verify::{is_relative_phase_of, target_permutation, PhasePermutation};

pub use anf::{qubit_effects, QubitEffect};
pub use cancel::cancel_adjacent_inverses;
pub use conjugation::{
    apply_replacement, apply_replacement_unchecked, candidates, choose_implementation,
    compatible_implementations, find_conjugations, Classification, ConjugationMatch, ImplBlock,
    ImplChoice,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("arity mismatch: the match has {expected} qubits, the implementation {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("special-form type violated: the implementation's phase depends on {qubit}, which the middle block changes")]
    SpecialFormViolated { qubit: QubitId },
    #[error("the implementation's tail acts on {qubit}, which the middle block also uses")]
    TailConflict { qubit: QubitId },
    #[error("the middle block fits none of the conjugation identities")]
    Unclassified,
    #[error("gates {left} and {right} are not the matched Toffoli pair")]
    StaleMatch { left: usize, right: usize },
    #[error("not a relative-phase Toffoli")]
    NotRelativePhase,
    #[error("unknown rule '{0}' (expected prop1, prop2, prop3, cancel)")]
    UnknownRule(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Lower(#[from] LowerError),
}

/// Which rewrites the driver may apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RuleSet {
    pub prop1: bool,
    pub prop2: bool,
    /// Off by default: it applies rarely and never helped on known circuits.
    pub prop3: bool,
    pub cancel: bool,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet {
            prop1: true,
            prop2: true,
            prop3: false,
            cancel: true,
        }
    }
}

impl RuleSet {
    pub fn none() -> Self {
        RuleSet {
            prop1: false,
            prop2: false,
            prop3: false,
            cancel: false,
        }
    }

    pub fn allows(&self, c: Classification) -> bool {
        match c {
            Classification::Prop1 => self.prop1,
            Classification::Prop2 => self.prop2,
            Classification::Prop3 => self.prop3,
            Classification::None => false,
        }
    }
}

impl FromStr for RuleSet {
    type Err = RewriteError;

    /// Comma-separated rule names, e.g. `prop1,prop2,cancel`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut r = RuleSet::none();
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name {
                "prop1" => r.prop1 = true,
                "prop2" => r.prop2 = true,
                "prop3" => r.prop3 = true,
                "cancel" => r.cancel = true,
                other => return Err(RewriteError::UnknownRule(other.to_string())),
            }
        }
        Ok(r)
    }
}

/// One replacement made by [`rewrite`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppliedRewrite {
    pub left_index: usize,
    pub right_index: usize,
    pub classification: Classification,
    pub choice: ImplChoice,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewriteOutcome {
    pub circuit: Circuit,
    pub applied: Vec<AppliedRewrite>,
    /// Gates removed by cancellation (counted on the lowered circuit).
    pub cancelled: usize,
    pub before: ResourceReport,
    pub after: ResourceReport,
}

impl RewriteOutcome {
    pub fn changed(&self) -> bool {
        !self.applied.is_empty() || self.cancelled > 0
    }
}

/// Applies the enabled conjugation replacements until none is left, innermost
/// pairs first, then (if enabled) lowers the circuit and cancels inverse pairs.
/// Lowering is kept only if cancellation removes something.
pub fn rewrite(c: &Circuit, rules: &RuleSet) -> Result<RewriteOutcome, RewriteError> {
    let mut cur = c.clone();
    let mut applied = Vec::new();
    loop {
        let mut matches: Vec<ConjugationMatch> = find_conjugations(&cur)
            .into_iter()
            .filter(|m| rules.allows(m.classification))
            .collect();
        matches.sort_by_key(|m| (m.right_index - m.left_index, m.left_index));
        let next = matches
            .iter()
            .find_map(|m| choose_implementation(m).map(|choice| (m, choice)));
        let Some((m, choice)) = next else { break };
        cur = apply_replacement(&cur, m, &choice)?;
        applied.push(AppliedRewrite {
            left_index: m.left_index,
            right_index: m.right_index,
            classification: m.classification,
            choice,
        });
    }
    let mut cancelled = 0;
    if rules.cancel {
        let lowered = lower(&cur, &LoweringPolicy::default())?;
        let reduced = cancel_adjacent_inverses(&lowered);
        cancelled = lowered.len() - reduced.len();
        if cancelled > 0 {
            cur = reduced;
        }
    }
    Ok(RewriteOutcome {
        before: count_resources(c),
        after: count_resources(&cur),
        circuit: cur,
        applied,
        cancelled,
    })
}

/// Splits a relative-phase Toffoli on qubits `0..n` (controls first) into the
/// Toffoli and the diagonal applied after it: returns the row phases `D` with
/// `u = D · TOF`.
pub fn canonic_decompose(
    u: &PhasePermutation<RingElement>,
) -> Result<(TargetSpec, Vec<RingElement>), RewriteError> {
    let n = u.width();
    if n == 0 {
        return Err(RewriteError::NotRelativePhase);
    }
    let controls: Vec<usize> = (0..n - 1).collect();
    let spec = TargetSpec::tof(&controls, n - 1);
    if !is_relative_phase_of(u, &spec) {
        return Err(RewriteError::NotRelativePhase);
    }
    Ok((spec, u.row_phases()))
}

/// Inverse of [`canonic_decompose`]: `D · TOF` for row phases `d`.
pub fn canonic_compose(spec: &TargetSpec, d: &[RingElement]) -> PhasePermutation<RingElement> {
    let width = d.len().trailing_zeros() as usize;
    let tof = target_permutation::<RingElement>(spec, width);
    let perm = tof.permutation().to_vec();
    let phases = perm.iter().map(|&i| d[i as usize]).collect();
    PhasePermutation::new(width, perm, phases).expect("unit phases on a permutation")
}
