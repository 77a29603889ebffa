use crate::circuit::{firing_pair, Control, Gate, QubitId};
use crate::ring::Amplitude;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("marker gate in simulation: {0}")]
    MarkerInSimulation(String),
    #[error("R_Y({0}·π/4) is not exact in the ring backend; use the float backend")]
    NonRingAngle(i32),
    #[error("width limit exceeded: {width} qubits, limit {limit}")]
    WidthLimit { width: usize, limit: usize },
    #[error("not a phase permutation: column {column} does not collapse to one basis state")]
    NotPhasePermutation { column: u64 },
    #[error("circuits have different widths ({0} and {1})")]
    WidthMismatch(usize, usize),
}

/// Sparse state over `width` qubits: `(basis index, amplitude)` pairs sorted
/// by index, zero amplitudes dropped. Qubit 0 is the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<A> {
    width: usize,
    amps: Vec<(u64, A)>,
}

impl<A: Amplitude> StateVector<A> {
    pub fn basis(width: usize, index: u64) -> Self {
        StateVector {
            width,
            amps: vec![(index, A::one())],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[(u64, A)] {
        &self.amps
    }

    pub fn support(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, index: u64) -> A {
        self.amps
            .binary_search_by_key(&index, |(i, _)| *i)
            .map_or(A::zero(), |p| self.amps[p].1)
    }

    /// Σ|α|² computed in the amplitude type (exact for the ring backend).
    pub fn norm_squared(&self) -> A {
        self.amps
            .iter()
            .fold(A::zero(), |acc, &(_, a)| acc + a.conj() * a)
    }

    /// The single basis state and its amplitude, when the state is one.
    pub fn as_basis(&self) -> Option<(u64, A)> {
        match self.amps.as_slice() {
            [(i, a)] => Some((*i, *a)),
            _ => None,
        }
    }

    /// Exact (ring) or tolerance-based (float) equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let mut a = self.amps.iter().peekable();
        let mut b = other.amps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return true,
                (Some(&&(i, x)), Some(&&(j, y))) if i == j => {
                    if !x.approx_eq(y) {
                        return false;
                    }
                    a.next();
                    b.next();
                }
                (Some(&&(i, x)), Some(&&(j, _))) if i < j => {
                    if !x.approx_eq(A::zero()) {
                        return false;
                    }
                    a.next();
                }
                (Some(_), Some(&&(_, y))) | (None, Some(&&(_, y))) => {
                    if !y.approx_eq(A::zero()) {
                        return false;
                    }
                    b.next();
                }
                (Some(&&(_, x)), None) => {
                    if !x.approx_eq(A::zero()) {
                        return false;
                    }
                    a.next();
                }
            }
        }
    }

    fn mask(&self, q: QubitId) -> u64 {
        1u64 << (self.width - 1 - q.0)
    }

    fn fires(&self, idx: u64, c: &Control) -> bool {
        c.fires(idx & self.mask(c.qubit) != 0)
    }

    fn all_fire(&self, idx: u64, cs: &[Control]) -> bool {
        cs.iter().all(|c| self.fires(idx, c))
    }

    fn map_diagonal(&mut self, q: QubitId, f: impl Fn(A) -> A) {
        let m = self.mask(q);
        for (i, a) in self.amps.iter_mut() {
            if *i & m != 0 {
                *a = f(*a);
            }
        }
    }

    /// Re-sorts after a permutation of indices (no collisions possible).
    fn permute(&mut self, f: impl Fn(u64, A) -> (u64, A)) {
        for e in self.amps.iter_mut() {
            *e = f(e.0, e.1);
        }
        self.amps.sort_unstable_by_key(|e| e.0);
    }

    /// Applies a 2×2 matrix `[[m00, m01], [m10, m11]]` on qubit `q`.
    fn apply_single(&mut self, q: QubitId, m: [[A; 2]; 2]) {
        let mask = self.mask(q);
        let mut next = Vec::with_capacity(self.amps.len() * 2);
        for &(i, a) in &self.amps {
            let b = usize::from(i & mask != 0);
            let lo = i & !mask;
            next.push((lo, m[0][b] * a));
            next.push((lo | mask, m[1][b] * a));
        }
        next.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u64, A)> = Vec::with_capacity(next.len());
        for (i, a) in next {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 = last.1 + a,
                _ => merged.push((i, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_zero());
        self.amps = merged;
    }

    /// Applies one gate. Markers must be expanded first.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<(), SimError> {
        match g {
            Gate::X(q) => {
                let m = self.mask(*q);
                self.permute(|i, a| (i ^ m, a));
            }
            Gate::Y(q) => {
                let m = self.mask(*q);
                // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
                self.permute(|i, a| {
                    let j = if i & m == 0 { 2 } else { 6 };
                    (i ^ m, a.mul_omega(j))
                });
            }
            Gate::Z(q) => self.map_diagonal(*q, |a| -a),
            Gate::P(q) => self.map_diagonal(*q, |a| a.mul_omega(2)),
            Gate::Pdg(q) => self.map_diagonal(*q, |a| a.mul_omega(6)),
            Gate::T(q) => self.map_diagonal(*q, |a| a.mul_omega(1)),
            Gate::Tdg(q) => self.map_diagonal(*q, |a| a.mul_omega(7)),
            Gate::H(q) => {
                let s = A::one().div_sqrt2();
                self.apply_single(*q, [[s, s], [s, -s]]);
            }
            Gate::Ry {
                qubit,
                quarter_turns,
            } => {
                let (c, s) =
                    A::ry_entries(*quarter_turns).ok_or(SimError::NonRingAngle(*quarter_turns))?;
                self.apply_single(*qubit, [[c, -s], [s, c]]);
            }
            Gate::Cnot { control, target } => {
                let m = self.mask(*target);
                let cm = self.mask(control.qubit);
                let c = *control;
                self.permute(|i, a| {
                    if c.fires(i & cm != 0) {
                        (i ^ m, a)
                    } else {
                        (i, a)
                    }
                });
            }
            Gate::Cz { control, target } => {
                let m = self.mask(*target);
                let cm = self.mask(control.qubit);
                let c = *control;
                for (i, a) in self.amps.iter_mut() {
                    if c.fires(*i & cm != 0) && *i & m != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::Tof { controls, target } => {
                let m = self.mask(*target);
                let fire: Vec<bool> = self
                    .amps
                    .iter()
                    .map(|(i, _)| self.all_fire(*i, controls))
                    .collect();
                for ((i, _), f) in self.amps.iter_mut().zip(fire) {
                    if f {
                        *i ^= m;
                    }
                }
                self.amps.sort_unstable_by_key(|e| e.0);
            }
            Gate::Rtof {
                controls,
                target,
                phases,
            } => {
                let m = self.mask(*target);
                let (lo, _) = firing_pair(controls);
                let ctrl_base = lo >> 1;
                let local = |i: u64| -> usize {
                    let mut l = 0usize;
                    for c in controls {
                        l = (l << 1) | usize::from(i & self.mask(c.qubit) != 0);
                    }
                    (l << 1) | usize::from(i & m != 0)
                };
                let mut next: Vec<(u64, A)> = self
                    .amps
                    .iter()
                    .map(|&(i, a)| {
                        let out = if local(i) >> 1 == ctrl_base { i ^ m } else { i };
                        (out, A::from_ring(phases[local(out)]) * a)
                    })
                    .collect();
                next.sort_unstable_by_key(|e| e.0);
                self.amps = next;
            }
            Gate::Marker { .. } => return Err(SimError::MarkerInSimulation(g.to_string())),
        }
        Ok(())
    }
}
