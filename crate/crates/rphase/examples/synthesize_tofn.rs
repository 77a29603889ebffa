//! Builds TOFⁿ with clean ancillae, verifies it and writes OpenQASM.
//!
//! Usage: `cargo run --example synthesize_tofn -- 6 > tof6.qasm`

use rphase::circuit::qasm::emit_qasm;
use rphase::constructions;
use rphase::verify::check_implements;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("n must be an integer"))
        .unwrap_or(5);
    let c = constructions::tofn_clean(n).expect("n >= 4");
    let report = check_implements(&c.circuit, &c.target).expect("simulable");
    assert!(report.passed(&c.target), "{report:?}");

    eprintln!("{}: {}", c.name, serde_json::to_string(&c.report).unwrap());
    eprintln!("verified: {}", serde_json::to_string(&report).unwrap());
    print!("{}", emit_qasm(&c.circuit));
}
