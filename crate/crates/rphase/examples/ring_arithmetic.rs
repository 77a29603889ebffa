//! Exact arithmetic in ℤ[ω, 1/√2], where ω = e^{iπ/4}.

use rphase::ring::RingElement;

fn main() {
    let w = RingElement::omega_pow(1);
    let s = RingElement::inv_sqrt2();

    // ω = (1 + i)/√2
    let built = (RingElement::ONE + RingElement::i()) * s;
    println!("ω            = {w}");
    println!("(1 + i)/√2   = {built}");
    assert_eq!(w, built);

    // ω⁸ = 1, and |ω|² = 1
    let mut p = RingElement::ONE;
    for _ in 0..8 {
        p = p * w;
    }
    println!("ω⁸           = {p}");
    println!("ω·ω*         = {}", w * w.conj());

    // 1/√2 · 1/√2 normalizes to 1/2
    let half = s * s;
    println!("1/2          = {half}  coeffs={:?} k={}", half.coeffs(), half.k());
    println!("as complex   = {}", (w * s).to_complex());
}
