//! A dirty ancilla must come back unchanged, and the phase must not depend on it.

use rphase::circuit::{Circuit, Gate, QubitId, QubitRole, TargetSpec};
use rphase::constructions;
use rphase::verify::check_implements;

fn main() {
    let c = constructions::tofn_dirty(5).unwrap();
    let r = check_implements(&c.circuit, &c.target).unwrap();
    println!("{}: passed={} columns={}", c.name, r.passed(&c.target), r.columns);

    // A Z on the dirty qubit leaves the permutation intact but leaks a phase.
    let spec = TargetSpec::tof(&[0, 1], 2);
    let mut leaky = Circuit::new(4).with_role(3, QubitRole::DirtyAncilla);
    leaky.extend([Gate::ccx(0, 1, 2), Gate::Z(QubitId(3))]).unwrap();
    let r = check_implements(&leaky, &spec).unwrap();
    println!(
        "leaky: relative_phase={} ancilla_ok={} passed={}",
        r.relative_phase,
        r.ancilla_ok,
        r.passed(&spec)
    );
}
