//! T-count of the dirty-ancilla ladder before and after H·T cancellation.

use rphase::constructions;
use rphase::verify::check_implements;

fn main() {
    println!("{:>3} {:>8} {:>10}", "k", "T before", "T after");
    for n in 6..=11 {
        let k = n - 1;
        let before = constructions::ladder_tofn(n).unwrap();
        let after = constructions::ladder_tofn_cancelled(n).unwrap();
        println!("{k:>3} {:>8} {:>10}", before.report.t, after.report.t);
        if n <= 8 {
            let r = check_implements(&after.circuit, &after.target).unwrap();
            assert!(r.passed(&after.target));
        }
    }
}
