//! Exact (or floating-point) simulation of circuits on basis states and the
//! equivalence checks built on it.

mod check;
mod phase_perm;
mod state;

pub use check::{
    check_implements, global_phase_equal, is_relative_phase_of, is_special_form,
    marker_phase_table, permutation_parity, phase_permutation, same_unitary, select_backend,
    simulate_columns, simulation_gates, unitary_columns, Column, DenseMatrix, SpecialFormResult,
    Unitary, VerificationReport, BACKEND_ENV, DENSE_LIMIT, WIDTH_LIMIT,
};
pub use phase_perm::{
    permutation_sign, spec_parity, target_permutation, PhasePermutation, PhasePermutationError,
};
pub use state::{SimError, StateVector};
