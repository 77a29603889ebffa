use num_complex::Complex64;

use crate::circuit::{TargetKind, TargetOp, TargetSpec};
use crate::ring::{Amplitude, RingElement};

/// A unitary of the form `U|j⟩ = z_j |π(j)⟩` with unit-magnitude `z_j`.
///
/// `phases` are column phases. The row phase of row `i` is the phase of the
/// column that lands on it, so `U = P·D_row = D_col·P` style conversions are
/// explicit through [`PhasePermutation::row_phase`].
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePermutation<A> {
    width: usize,
    perm: Vec<u64>,
    inv: Vec<u64>,
    phases: Vec<A>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PhasePermutationError {
    #[error("expected {expected} entries, got {got}")]
    Length { expected: usize, got: usize },
    #[error("image {0} is out of range or repeated")]
    NotBijective(u64),
    #[error("phase of column {0} is not a unit")]
    NotUnit(u64),
}

impl<A: Amplitude> PhasePermutation<A> {
    pub fn new(width: usize, perm: Vec<u64>, phases: Vec<A>) -> Result<Self, PhasePermutationError> {
        let dim = 1usize << width;
        for got in [perm.len(), phases.len()] {
            if got != dim {
                return Err(PhasePermutationError::Length { expected: dim, got });
            }
        }
        let mut inv = vec![u64::MAX; dim];
        for (j, &i) in perm.iter().enumerate() {
            if i as usize >= dim || inv[i as usize] != u64::MAX {
                return Err(PhasePermutationError::NotBijective(i));
            }
            inv[i as usize] = j as u64;
        }
        if let Some(j) = phases.iter().position(|z| !z.is_unit()) {
            return Err(PhasePermutationError::NotUnit(j as u64));
        }
        Ok(PhasePermutation {
            width,
            perm,
            inv,
            phases,
        })
    }

    pub fn identity(width: usize) -> Self {
        let dim = 1u64 << width;
        let perm: Vec<u64> = (0..dim).collect();
        PhasePermutation {
            width,
            inv: perm.clone(),
            perm,
            phases: vec![A::one(); dim as usize],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[u64] {
        &self.perm
    }

    pub fn column_phases(&self) -> &[A] {
        &self.phases
    }

    pub fn image(&self, j: u64) -> u64 {
        self.perm[j as usize]
    }

    pub fn preimage(&self, i: u64) -> u64 {
        self.inv[i as usize]
    }

    pub fn column_phase(&self, j: u64) -> A {
        self.phases[j as usize]
    }

    /// Phase on row `i`: `U = D·P` with `D = diag(row phases)`.
    pub fn row_phase(&self, i: u64) -> A {
        self.phases[self.inv[i as usize] as usize]
    }

    pub fn row_phases(&self) -> Vec<A> {
        (0..self.dim() as u64).map(|i| self.row_phase(i)).collect()
    }

    /// Entry `U[i][j]`.
    pub fn entry(&self, i: u64, j: u64) -> A {
        if self.perm[j as usize] == i {
            self.phases[j as usize]
        } else {
            A::zero()
        }
    }

    pub fn inverse(&self) -> Self {
        let mut phases = vec![A::one(); self.dim()];
        for (j, &i) in self.perm.iter().enumerate() {
            phases[i as usize] = self.phases[j].conj();
        }
        PhasePermutation {
            width: self.width,
            perm: self.inv.clone(),
            inv: self.perm.clone(),
            phases,
        }
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.width, other.width, "width mismatch");
        let (perm, phases): (Vec<u64>, Vec<A>) = (0..other.dim())
            .map(|j| {
                let mid = other.perm[j];
                (
                    self.perm[mid as usize],
                    self.phases[mid as usize] * other.phases[j],
                )
            })
            .unzip();
        let mut inv = vec![0; perm.len()];
        for (j, &i) in perm.iter().enumerate() {
            inv[i as usize] = j as u64;
        }
        PhasePermutation {
            width: self.width,
            perm,
            inv,
            phases,
        }
    }

    /// Same permutation and the same phases up to one global unit factor.
    pub fn equal_up_to_global_phase(&self, other: &Self) -> bool {
        if self.perm != other.perm {
            return false;
        }
        let r0 = self.phases[0] * other.phases[0].conj();
        self.phases
            .iter()
            .zip(&other.phases)
            .all(|(&a, &b)| (a * b.conj()).approx_eq(r0))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.perm == other.perm
            && self
                .phases
                .iter()
                .zip(&other.phases)
                .all(|(&a, &b)| a.approx_eq(b))
    }

    /// Sign of the permutation: `1` or `-1`.
    pub fn parity(&self) -> i8 {
        permutation_sign(&self.perm)
    }

    pub fn to_float(&self) -> PhasePermutation<Complex64> {
        PhasePermutation {
            width: self.width,
            perm: self.perm.clone(),
            inv: self.inv.clone(),
            phases: self.phases.iter().map(|z| z.to_complex()).collect(),
        }
    }
}

/// Sign of a permutation of `0..len` from its cycle count.
pub fn permutation_sign(perm: &[u64]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j] as usize;
        }
    }
    if (perm.len() - cycles) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The ideal phase permutation of `spec` on `width` qubits (identity elsewhere).
pub fn target_permutation<A: Amplitude>(spec: &TargetSpec, width: usize) -> PhasePermutation<A> {
    let dim = 1u64 << width;
    if spec.kind == TargetKind::Identity {
        return PhasePermutation::identity(width);
    }
    let bit = |q: usize| 1u64 << (width - 1 - q);
    let tmask = bit(spec.target.0);
    let fires = |j: u64| {
        spec.controls
            .iter()
            .all(|c| c.fires(j & bit(c.qubit.0) != 0))
    };
    let mut perm = Vec::with_capacity(dim as usize);
    let mut phases = Vec::with_capacity(dim as usize);
    for j in 0..dim {
        let on = fires(j);
        let t1 = j & tmask != 0;
        let (out, z) = match spec.op {
            TargetOp::X if on => (j ^ tmask, RingElement::ONE),
            TargetOp::Z if on && t1 => (j, -RingElement::ONE),
            TargetOp::P if on && t1 => (j, RingElement::i()),
            _ => (j, RingElement::ONE),
        };
        perm.push(out);
        phases.push(A::from_ring(z));
    }
    PhasePermutation::new(width, perm, phases).expect("target is a phase permutation")
}

/// Sign of the permutation `spec` performs on `width` qubits.
pub fn spec_parity(spec: &TargetSpec, width: usize) -> i8 {
    target_permutation::<RingElement>(spec, width).parity()
}
