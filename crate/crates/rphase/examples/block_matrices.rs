//! Prints the phase-permutation matrices of the small fixed blocks.

use rphase::constructions;
use rphase::ring::RingElement;
use rphase::verify::phase_permutation;

fn main() {
    for c in [
        constructions::toffoli3(),
        constructions::rtof3_long(),
        constructions::srtof3_ccix(),
        constructions::rtof4_long(),
    ] {
        let u = phase_permutation::<RingElement>(&c.circuit).expect("phase permutation");
        println!("{}  ({})", c.name, c.description);
        for col in 0..u.dim() as u64 {
            let row = u.image(col);
            let ph = u.column_phase(col);
            if row != col || ph != RingElement::ONE {
                println!("  |{col:0w$b}⟩ -> {ph} |{row:0w$b}⟩", w = u.width());
            }
        }
        println!();
    }
}
