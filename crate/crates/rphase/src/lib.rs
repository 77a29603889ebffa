//! Relative-phase Toffoli gates: exact arithmetic over ℤ[ω, 1/√2], a circuit
//! IR with high-level relative-phase blocks, generators for multiple-control
//! Toffoli circuits, a peephole rewriter that swaps exact Toffolis for cheaper
//! relative-phase ones, and a simulator that proves the results correct.

pub mod circuit;
pub mod cli;
pub mod constructions;
pub mod rewrite;
pub mod ring;
pub mod verify;

pub use circuit::{Circuit, Gate, QubitId, TargetSpec};
pub use ring::RingElement;
