//! Generators for the relative-phase Toffoli blocks and the multiple-control
//! Toffoli circuits built from them.
//!
//! Every generator returns a [`Construction`]: the circuit, what it implements,
//! and the gate counts it is expected to have. The expected counts are checked
//! against [`count_resources`] when the construction is built, so a generator
//! that drifts from its formula fails loudly instead of producing a wrong table.

pub mod blocks;
mod catalog;
mod families;
mod multi;

use serde::Serialize;

use crate::circuit::{count_resources, Circuit, CircuitError, ResourceReport, TargetSpec};

pub use catalog::{build, CatalogRequest, CATALOG};
pub use families::{
    margolus_variants, rt4s, rtof3_long, rtof4_long, rts3, srtof3_ccix, srts3, toffoli3,
};
pub use multi::{
    cnu_clean_chain, cnu_parallel, ladder_tofn, ladder_tofn_cancelled, tof4_clean, tof4_dirty,
    tof5_clean, tof5_dirty, tofn_clean, tofn_dirty, two_block_tofn, two_block_tofn_lowered,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("{name}: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("{name}: expected {field} = {expected}, counted {counted}")]
    ClaimMismatch {
        name: String,
        field: &'static str,
        expected: usize,
        counted: usize,
    },
    #[error("unknown construction '{0}'")]
    Unknown(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Counts a construction is expected to have. Unset fields are not checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Claim {
    pub t: Option<usize>,
    pub cnot: Option<usize>,
    pub h: Option<usize>,
    pub pz: Option<usize>,
    pub ancillae: Option<usize>,
}

impl Claim {
    /// T, CNOT and H counts with no P/Z gates and no ancillae.
    pub fn counts(t: usize, cnot: usize, h: usize) -> Self {
        Claim {
            t: Some(t),
            cnot: Some(cnot),
            h: Some(h),
            pz: Some(0),
            ancillae: Some(0),
        }
    }

    pub fn with_ancillae(mut self, n: usize) -> Self {
        self.ancillae = Some(n);
        self
    }

    fn check(&self, name: &str, r: &ResourceReport) -> Result<(), ConstructionError> {
        let fields = [
            ("t", self.t, r.t),
            ("cnot", self.cnot, r.cnot),
            ("h", self.h, r.h),
            ("pz", self.pz, r.pz),
            ("ancillae", self.ancillae, r.ancilla.count),
        ];
        for (field, expected, counted) in fields {
            if let Some(expected) = expected {
                if expected != counted {
                    return Err(ConstructionError::ClaimMismatch {
                        name: name.to_string(),
                        field,
                        expected,
                        counted,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A generated circuit together with its contract.
#[derive(Debug, Clone, Serialize)]
pub struct Construction {
    pub name: String,
    pub circuit: Circuit,
    pub target: TargetSpec,
    pub claim: Claim,
    pub report: ResourceReport,
    pub description: &'static str,
}

impl Construction {
    pub(crate) fn new(
        name: impl Into<String>,
        circuit: Circuit,
        target: TargetSpec,
        claim: Claim,
        description: &'static str,
    ) -> Result<Self, ConstructionError> {
        let name = name.into();
        let report = count_resources(&circuit);
        claim.check(&name, &report)?;
        Ok(Construction {
            name,
            circuit,
            target,
            claim,
            report,
            description,
        })
    }
}

pub(crate) fn invalid(name: &str, reason: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidParameter {
        name: name.to_string(),
        reason: reason.into(),
    }
}
