//! Replaces Toffoli pairs by relative-phase blocks, then cancels.

use rphase::circuit::{Circuit, Gate, QubitRole};
use rphase::rewrite::{find_conjugations, rewrite, RuleSet};
use rphase::verify::same_unitary;

fn main() {
    // TOF⁴ from three Toffolis through a clean ancilla on qubit 2.
    let mut c = Circuit::new(5).with_role(2, QubitRole::CleanAncilla);
    c.extend([Gate::ccx(0, 1, 2), Gate::ccx(2, 3, 4), Gate::ccx(0, 1, 2)])
        .unwrap();

    for m in find_conjugations(&c) {
        let controls: Vec<usize> = m.controls.iter().map(|c| c.qubit.0).collect();
        println!(
            "pair ({}, {}): controls {:?}, target {}, {:?}",
            m.left_index, m.right_index, controls, m.target.0, m.classification
        );
    }

    let out = rewrite(&c, &RuleSet::default()).expect("rewrite");
    for a in &out.applied {
        println!(
            "replaced gates {} and {} with {:?} (inverse: {})",
            a.left_index, a.right_index, a.choice.block, a.choice.inverse
        );
    }
    println!("cancelled {} gates", out.cancelled);
    println!("before {}", serde_json::to_string(&out.before).unwrap());
    println!("after  {}", serde_json::to_string(&out.after).unwrap());
    assert!(same_unitary(&c, &out.circuit).unwrap());
    println!("unitary preserved");
}
