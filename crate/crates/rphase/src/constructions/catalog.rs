use super::{families, invalid, multi, Construction, ConstructionError};
use crate::circuit::TargetOp;

/// Parameters accepted by [`build`]; each entry uses the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogRequest {
    pub n: Option<usize>,
    pub k: Option<usize>,
    /// `true` for dirty ancillae where the entry offers both.
    pub dirty: bool,
    pub op: TargetOp,
}

impl Default for CatalogRequest {
    fn default() -> Self {
        CatalogRequest {
            n: None,
            k: None,
            dirty: false,
            op: TargetOp::X,
        }
    }
}

/// Names accepted by [`build`] with a one-line summary each.
pub const CATALOG: &[(&str, &str)] = &[
    ("tof", "multiple-control Toffoli TOFⁿ (--n, --ancilla clean|dirty); n = 3 is the 15-gate Toffoli"),
    ("rtof3", "9-gate self-inverse relative-phase Toffoli"),
    ("rts3", "5-gate prefix of rtof3"),
    ("srtof3", "controlled-controlled-iX (special form, type {target})"),
    ("srts3", "9-gate prefix of the Toffoli"),
    ("rtof4", "18-gate relative-phase Toffoli-4"),
    ("rt4s", "10-gate prefix of rtof4"),
    ("margolus-t", "3-CNOT T variant, negated middle control"),
    ("margolus-ry-alt", "3-CNOT R_Y variant, negated middle control"),
    ("margolus-ry", "3-CNOT R_Y variant"),
    ("ladder", "marker-level TOFⁿ ladder of 3-qubit relative-phase Toffolis (--n >= 6)"),
    ("ladder-cancelled", "lowered ladder after inverse-pair cancellation (--n >= 6)"),
    ("two-block", "TOFⁿ from two arity-k relative-phase and two special-form Toffolis (--n, --k)"),
    ("cnu-chain", "C^nU with a chain of clean ancillae (--n, --op x|z|p)"),
    ("cnu-parallel", "C^nU with a tree of clean ancillae (--n, --op x|z|p)"),
];

fn need(name: &str, v: Option<usize>, what: &str) -> Result<usize, ConstructionError> {
    v.ok_or_else(|| invalid(name, format!("requires --{what}")))
}

/// Builds a catalog entry by name.
pub fn build(name: &str, req: &CatalogRequest) -> Result<Construction, ConstructionError> {
    let margolus = |i: usize| Ok(families::margolus_variants().swap_remove(i));
    match name {
        "tof" => {
            let n = need(name, req.n, "n")?;
            match (n, req.dirty) {
                (3, _) => Ok(families::toffoli3()),
                (4, false) => multi::tof4_clean(),
                (4, true) => multi::tof4_dirty(),
                (5, false) => multi::tof5_clean(),
                (5, true) => multi::tof5_dirty(),
                (_, false) => multi::tofn_clean(n),
                (_, true) => multi::tofn_dirty(n),
            }
        }
        "rtof3" => Ok(families::rtof3_long()),
        "rts3" => Ok(families::rts3()),
        "srtof3" => Ok(families::srtof3_ccix()),
        "srts3" => Ok(families::srts3()),
        "rtof4" => Ok(families::rtof4_long()),
        "rt4s" => Ok(families::rt4s()),
        "margolus-t" => margolus(0),
        "margolus-ry-alt" => margolus(1),
        "margolus-ry" => margolus(2),
        "ladder" => multi::ladder_tofn(need(name, req.n, "n")?),
        "ladder-cancelled" => multi::ladder_tofn_cancelled(need(name, req.n, "n")?),
        "two-block" => multi::two_block_tofn(need(name, req.n, "n")?, need(name, req.k, "k")?),
        "cnu-chain" => multi::cnu_clean_chain(need(name, req.n, "n")?, req.op),
        "cnu-parallel" => multi::cnu_parallel(need(name, req.n, "n")?, req.op),
        other => Err(ConstructionError::Unknown(other.to_string())),
    }
}
