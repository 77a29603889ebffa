//! Margolus-style gates built from RY rotations. Odd multiples of π/4 leave
//! the exact ring, so those are checked in floating point.

use rphase::constructions;
use rphase::verify::check_implements;

fn main() {
    for c in constructions::margolus_variants() {
        let r = check_implements(&c.circuit, &c.target).unwrap();
        println!(
            "{:<24} cnot={} backend={:?} relative_phase={} exact={}",
            c.name, c.report.cnot, r.backend, r.relative_phase, r.exact
        );
    }
}
