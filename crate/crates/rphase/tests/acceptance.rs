//! End-to-end checks, one PASS/FAIL line each. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rphase::circuit::{
    Circuit, Control, Equivalence, Gate, MarkerKind, QubitId, TargetKind, TargetSpec,
};
use rphase::constructions::{self, CatalogRequest, Construction};
use rphase::rewrite::{
    apply_replacement, apply_replacement_unchecked, cancel_adjacent_inverses,
    compatible_implementations, find_conjugations, Classification, ImplBlock, ImplChoice,
    RewriteError,
};
use rphase::ring::{Amplitude, RingElement};
use rphase::verify::{
    check_implements, is_relative_phase_of, phase_permutation, same_unitary, simulate_columns,
    spec_parity, PhasePermutation,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn tof(n: usize, dirty: bool) -> Construction {
    let req = CatalogRequest {
        n: Some(n),
        dirty,
        ..CatalogRequest::default()
    };
    constructions::build("tof", &req).unwrap_or_else(|e| panic!("tof n={n}: {e}"))
}

fn table_rows() -> Outcome {
    let start = Instant::now();
    let rows = [
        (4, false, [15, 12, 6, 1]),
        (4, true, [16, 14, 6, 1]),
        (5, false, [23, 18, 10, 1]),
        (5, true, [24, 20, 10, 1]),
        (6, false, [31, 24, 14, 2]),
        (6, true, [32, 28, 14, 2]),
        (11, false, [71, 54, 34, 4]),
        (11, true, [72, 68, 34, 4]),
    ];
    for (n, dirty, want) in rows {
        let r = tof(n, dirty).report;
        let got = [r.t, r.cnot, r.h, r.ancilla.count];
        ensure(got == want && r.pz == 0, format!("n={n} dirty={dirty}: {got:?} pz={}", r.pz))?;
    }
    let ms = start.elapsed().as_millis();
    ensure(ms < 1000, format!("took {ms} ms"))?;
    Ok(format!("8 rows exact in {ms} ms"))
}

fn closed_forms() -> Outcome {
    for n in 4..=16 {
        let r = constructions::tofn_clean(n).map_err(|e| e.to_string())?.report;
        let anc = (n - 3).div_ceil(2);
        ensure(
            [r.t, r.cnot, r.h, r.ancilla.count] == [8 * n - 17, 6 * n - 12, 4 * n - 10, anc],
            format!("clean n={n}"),
        )?;
    }
    for n in 5..=16 {
        let r = constructions::tofn_dirty(n).map_err(|e| e.to_string())?.report;
        let anc = (n - 3).div_ceil(2);
        ensure(
            [r.t, r.cnot, r.h, r.ancilla.count] == [8 * n - 16, 8 * n - 20, 4 * n - 10, anc],
            format!("dirty n={n}"),
        )?;
    }
    Ok("clean 4..=16, dirty 5..=16".into())
}

/// `diag(prefix)` followed by a trailing 2×2 block, over `ring` entries.
fn block_matrix(prefix: &[RingElement], block: [[RingElement; 2]; 2]) -> Vec<Vec<RingElement>> {
    let dim = prefix.len() + 2;
    let mut m = vec![vec![RingElement::ZERO; dim]; dim];
    for (i, &z) in prefix.iter().enumerate() {
        m[i][i] = z;
    }
    for r in 0..2 {
        for c in 0..2 {
            m[dim - 2 + r][dim - 2 + c] = block[r][c];
        }
    }
    m
}

fn matches_matrix(c: &Construction, m: &[Vec<RingElement>]) -> Result<(), String> {
    let u = phase_permutation::<RingElement>(&c.circuit).map_err(|e| e.to_string())?;
    for (i, row) in m.iter().enumerate() {
        for (j, &want) in row.iter().enumerate() {
            let got = u.entry(i as u64, j as u64);
            ensure(got == want, format!("{}: U[{i}][{j}] = {got}, want {want}", c.name))?;
        }
    }
    Ok(())
}

fn matrix_identities() -> Outcome {
    let one = RingElement::ONE;
    let zero = RingElement::ZERO;
    let i = RingElement::i();
    matches_matrix(
        &constructions::rtof3_long(),
        &block_matrix(&[one, one, one, one, one, -one], [[zero, -i], [i, zero]]),
    )?;
    matches_matrix(
        &constructions::srtof3_ccix(),
        &block_matrix(&[one; 6], [[zero, i], [i, zero]]),
    )?;
    let mut p = vec![one; 12];
    p.extend([i, -i]);
    matches_matrix(
        &constructions::rtof4_long(),
        &block_matrix(&p, [[zero, one], [-one, zero]]),
    )?;
    matches_matrix(
        &constructions::toffoli3(),
        &block_matrix(&[one; 6], [[zero, one], [one, zero]]),
    )?;
    Ok("rtof3, ccix, rtof4, toffoli3 entry-by-entry".into())
}

fn functional_verification() -> Outcome {
    let start = Instant::now();
    let mut peak = 0;
    for n in 4..=11 {
        for dirty in [false, true] {
            let c = tof(n, dirty);
            let r = check_implements(&c.circuit, &c.target).map_err(|e| format!("n={n}: {e}"))?;
            let t = &c.target;
            ensure(
                t.kind == TargetKind::Tof
                    && t.equivalence == Equivalence::Exact
                    && t.controls.len() == n - 1
                    && r.exact
                    && r.ancilla_ok,
                format!("n={n} dirty={dirty}: {r:?}"),
            )?;
            peak = peak.max(r.max_support);
        }
    }
    Ok(format!(
        "n = 4..=11 clean and dirty exact in {:.1} s, max support {peak}",
        start.elapsed().as_secs_f64()
    ))
}

fn random_gate(rng: &mut StdRng, qubits: &[usize], controls_only: &[usize]) -> Option<Gate> {
    let pick = |rng: &mut StdRng, from: &[usize]| from[rng.gen_range(0..from.len())];
    let q = pick(rng, qubits);
    let any: Vec<usize> = qubits.iter().chain(controls_only).copied().collect();
    let others: Vec<usize> = any.iter().copied().filter(|&x| x != q).collect();
    Some(match rng.gen_range(0..8) {
        0 => Gate::T(QubitId(q)),
        1 => Gate::Tdg(QubitId(q)),
        2 => Gate::H(QubitId(q)),
        3 => Gate::X(QubitId(q)),
        4 if !others.is_empty() => Gate::cx(pick(rng, &others), q),
        5 if !others.is_empty() => Gate::cz(pick(rng, &others), q),
        6 if others.len() >= 2 => {
            let a = pick(rng, &others);
            let rest: Vec<usize> = others.iter().copied().filter(|&x| x != a).collect();
            Gate::ccx(a, pick(rng, &rest), q)
        }
        7 if others.len() >= 2 => {
            let kinds = [
                MarkerKind::Rtof3L,
                MarkerKind::Rtof3S,
                MarkerKind::Srtof3,
                MarkerKind::Srts3,
            ];
            let a = pick(rng, &others);
            let rest: Vec<usize> = others.iter().copied().filter(|&x| x != a).collect();
            let g = Gate::marker(kinds[rng.gen_range(0..4)], &[a, pick(rng, &rest), q]);
            if rng.gen_bool(0.5) {
                g.inverse()
            } else {
                g
            }
        }
        _ => return None,
    })
}

/// A circuit with a Toffoli pair whose middle block avoids a random subset
/// of the pair's qubits and may use others as controls only.
fn random_pair_circuit(rng: &mut StdRng) -> Circuit {
    let width = rng.gen_range(4..=7);
    let arity = if width >= 5 && rng.gen_bool(0.3) { 4 } else { 3 };
    let mut qs: Vec<usize> = (0..width).collect();
    for i in (1..qs.len()).rev() {
        qs.swap(i, rng.gen_range(0..=i));
    }
    let pair = &qs[..arity];
    let free: Vec<usize> = qs[arity..].to_vec();
    let mut acted = free.clone();
    let mut ctrl_only = Vec::new();
    for &q in pair {
        match rng.gen_range(0..3) {
            0 => acted.push(q),
            1 => ctrl_only.push(q),
            _ => {}
        }
    }
    let polarity = |q: usize, rng: &mut StdRng| {
        if rng.gen_bool(0.2) {
            Control::neg(q)
        } else {
            Control::pos(q)
        }
    };
    let controls: Vec<Control> = pair[..arity - 1].iter().map(|&q| polarity(q, rng)).collect();
    let tof = Gate::Tof {
        controls,
        target: QubitId(pair[arity - 1]),
    };
    let all: Vec<usize> = (0..width).collect();
    let mut gates = Vec::new();
    for _ in 0..rng.gen_range(0..3) {
        gates.extend(random_gate(rng, &all, &[]));
    }
    gates.push(tof.clone());
    for _ in 0..rng.gen_range(0..6) {
        gates.extend(random_gate(rng, &acted, &ctrl_only));
    }
    gates.push(tof);
    for _ in 0..rng.gen_range(0..3) {
        gates.extend(random_gate(rng, &all, &[]));
    }
    Circuit::from_gates(width, gates).expect("valid random circuit")
}

fn rewrite_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut circuits = 0;
    let mut replacements = 0;
    let mut attempts = 0;
    while circuits < 120 {
        attempts += 1;
        ensure(attempts < 20_000, "could not generate enough matches")?;
        let c = random_pair_circuit(&mut rng);
        let mut used = false;
        for m in find_conjugations(&c) {
            if m.classification == Classification::None {
                continue;
            }
            for choice in compatible_implementations(&m) {
                let r = apply_replacement(&c, &m, &choice).map_err(|e| e.to_string())?;
                ensure(
                    same_unitary(&c, &r).map_err(|e| e.to_string())?,
                    format!("{choice:?} changed the unitary of {:?}", c.gates()),
                )?;
                if choice.block != ImplBlock::Toffoli {
                    used = true;
                }
                replacements += 1;
            }
        }
        if used {
            circuits += 1;
        }
    }
    let lowering = rphase::circuit::LoweringPolicy::default();
    for _ in 0..100 {
        let c = rphase::circuit::lower(&random_pair_circuit(&mut rng), &lowering)
            .map_err(|e| e.to_string())?;
        let once = cancel_adjacent_inverses(&c);
        ensure(cancel_adjacent_inverses(&once) == once, "cancellation not idempotent")?;
        if c.width() <= 6 {
            ensure(
                same_unitary(&c, &once).map_err(|e| e.to_string())?,
                "cancellation changed the unitary",
            )?;
        }
    }
    Ok(format!(
        "{circuits} circuits, {replacements} replacements preserved; cancellation sound and idempotent"
    ))
}

fn ladder_t_count() -> Outcome {
    for k in 5..=10 {
        let c = constructions::ladder_tofn_cancelled(k + 1).map_err(|e| e.to_string())?;
        ensure(c.report.t == 12 * k - 20, format!("k={k}: T={}", c.report.t))?;
    }
    Ok("T = 12k - 20 for k = 5..=10".into())
}

fn fixed_point_phases<A: Amplitude>(u: &PhasePermutation<A>, v: &PhasePermutation<A>) -> bool {
    (0..u.dim() as u64)
        .filter(|&j| u.image(j) == j)
        .all(|j| v.column_phase(j).approx_eq(u.column_phase(j).conj()))
}

fn inverse_structure() -> Outcome {
    let rtl = constructions::rtof3_long();
    ensure(rtl.circuit.inverse() == rtl.circuit, "rtof3_long is not its own inverse")?;
    let catalog = [
        constructions::toffoli3(),
        constructions::rtof3_long(),
        constructions::srtof3_ccix(),
        constructions::rtof4_long(),
        constructions::build("margolus-t", &CatalogRequest::default()).map_err(|e| e.to_string())?,
    ];
    for c in &catalog {
        let u = phase_permutation::<RingElement>(&c.circuit).map_err(|e| e.to_string())?;
        let v = phase_permutation::<RingElement>(&c.circuit.inverse()).map_err(|e| e.to_string())?;
        ensure(is_relative_phase_of(&v, &c.target), format!("{} inverse", c.name))?;
        ensure(fixed_point_phases(&u, &v), format!("{} fixed-point phases", c.name))?;
    }
    Ok(format!("{} blocks", catalog.len()))
}

fn special_form_necessity() -> Outcome {
    // Toffoli(a, b; c) around a CNOT from d into b: a prop2 match with Y = {b}.
    let c = Circuit::from_gates(
        4,
        vec![Gate::H(QubitId(3)), Gate::ccx(0, 1, 2), Gate::cx(3, 1), Gate::ccx(0, 1, 2)],
    )
    .map_err(|e| e.to_string())?;
    let m = find_conjugations(&c)
        .into_iter()
        .next()
        .ok_or("no match")?;
    ensure(m.classification == Classification::Prop2, format!("{:?}", m.classification))?;
    let wrong = ImplChoice {
        block: ImplBlock::Marker(MarkerKind::Rtof3L),
        inverse: false,
        order: vec![0, 1],
    };
    let refused = apply_replacement(&c, &m, &wrong);
    ensure(
        matches!(
            refused,
            Err(RewriteError::SpecialFormViolated { .. } | RewriteError::TailConflict { .. })
        ),
        format!("not refused: {refused:?}"),
    )?;
    let forced = apply_replacement_unchecked(&c, &m, &wrong).map_err(|e| e.to_string())?;
    ensure(
        !same_unitary(&c, &forced).map_err(|e| e.to_string())?,
        "forced replacement kept the unitary",
    )?;
    let ok = compatible_implementations(&m)
        .into_iter()
        .find(|x| x.block != ImplBlock::Toffoli)
        .ok_or("no compatible implementation")?;
    let good = apply_replacement(&c, &m, &ok).map_err(|e| e.to_string())?;
    ensure(same_unitary(&c, &good).map_err(|e| e.to_string())?, "compatible choice failed")?;
    Ok(format!("rtof3 refused and mismatching; {:?} accepted", ok.block))
}

fn backend_agreement() -> Outcome {
    let names = ["tof", "rtof3", "rts3", "srtof3", "srts3", "rtof4", "rt4s", "margolus-t"];
    let mut compared = 0;
    for name in names {
        let req = CatalogRequest {
            n: Some(4),
            ..CatalogRequest::default()
        };
        let c = constructions::build(name, &req).map_err(|e| e.to_string())?.circuit;
        let inputs: Vec<u64> = (0..1u64 << c.width()).collect();
        let ring = simulate_columns::<RingElement>(&c, &inputs).map_err(|e| e.to_string())?;
        let float = simulate_columns::<Complex64>(&c, &inputs).map_err(|e| e.to_string())?;
        for (r, f) in ring.iter().zip(&float) {
            for i in 0..1u64 << c.width() {
                let d = r.state.amplitude(i).to_complex() - f.state.amplitude(i);
                ensure(d.norm() < 1e-9, format!("{name}: column {} row {i}", r.input))?;
            }
        }
        compared += 1;
    }
    for name in ["margolus-ry", "margolus-ry-alt"] {
        let c = constructions::build(name, &CatalogRequest::default()).map_err(|e| e.to_string())?;
        let r = check_implements(&c.circuit, &c.target).map_err(|e| e.to_string())?;
        ensure(
            r.relative_phase && r.backend == rphase::ring::Backend::Float,
            format!("{name}: {r:?}"),
        )?;
    }
    Ok(format!("{compared} unitaries agree; both R_Y variants verified in float"))
}

fn parity() -> Outcome {
    let spec = TargetSpec::tof(&[0, 1, 2], 3);
    let (without, with) = (spec_parity(&spec, 4), spec_parity(&spec, 5));
    ensure(without == -1 && with == 1, format!("{without}, {with}"))?;
    Ok("-1 on 4 qubits, +1 with one extra qubit".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("gate-count table", table_rows),
        ("closed-form counts", closed_forms),
        ("exact matrix identities", matrix_identities),
        ("functional verification n = 4..=11", functional_verification),
        ("rewrite soundness", rewrite_soundness),
        ("ladder T-count", ladder_t_count),
        ("inverse structure", inverse_structure),
        ("special-form necessity", special_form_necessity),
        ("backend agreement", backend_agreement),
        ("permutation parity", parity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
