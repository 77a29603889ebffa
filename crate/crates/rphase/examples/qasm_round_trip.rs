//! Reads OpenQASM, prints counts, and writes it back.
//!
//! Usage: `cargo run --example qasm_round_trip -- circuit.qasm`

use rphase::circuit::count_resources;
use rphase::circuit::qasm::{emit_qasm, parse_qasm, ParseOptions};
use rphase::constructions;

fn main() {
    let src = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => emit_qasm(&constructions::tofn_dirty(5).unwrap().circuit),
    };
    let c = match parse_qasm(&src, ParseOptions::default()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("parse error at {e}");
            std::process::exit(1);
        }
    };
    eprintln!("{} qubits, {} gates", c.width(), c.len());
    eprintln!("{}", serde_json::to_string(&count_resources(&c)).unwrap());

    let text = emit_qasm(&c);
    let again = parse_qasm(&text, ParseOptions::default()).unwrap();
    assert_eq!(again, c);
    print!("{text}");
}
