//! H⁰, H¹, H² for σ1 and σ1⁻¹.
use knotmf::localization::markov_example_sigma1;

fn main() {
    for sign in [1, -1] {
        let m = markov_example_sigma1(sign).unwrap();
        let s = m.series(12).unwrap();
        println!("σ1^{sign}: H0 = {}, H1 = {}, H2 = {}", m.h[0], m.h[1], m.h[2]);
        println!("  H0 series {}", s[0]);
    }
}
