//! Gate counts of the multiple-control Toffoli constructions.
//!
//! Usage: `cargo run --example resource_table -- 4 5 6 11`

use rphase::constructions::{self, CatalogRequest};

fn main() {
    let ns: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("n must be an integer"))
        .collect();
    let ns = if ns.is_empty() { vec![4, 5, 6, 11] } else { ns };

    println!("{:>3}  {:<6} {:>4} {:>5} {:>4} {:>8}", "n", "anc", "T", "CNOT", "H", "ancillae");
    for n in ns {
        for dirty in [false, true] {
            let label = if dirty { "dirty" } else { "clean" };
            let req = CatalogRequest {
                n: Some(n),
                dirty,
                ..CatalogRequest::default()
            };
            match constructions::build("tof", &req) {
                Ok(c) => {
                    let r = &c.report;
                    println!(
                        "{n:>3}  {:<6} {:>4} {:>5} {:>4} {:>8}",
                        label,
                        r.t,
                        r.cnot,
                        r.h,
                        r.ancilla.count
                    );
                }
                Err(e) => println!("{n:>3}  {label:<6} {e}"),
            }
        }
    }
}
