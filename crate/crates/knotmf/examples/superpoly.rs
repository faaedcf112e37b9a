//! Localization characters in both modes, and the n = 2 HOMFLYPT calibration.
use knotmf::localization::{homflypt_cross_check, superpoly_jm, Mode};

fn main() {
    for b in [vec![], vec![1], vec![1, 2]] {
        let r = superpoly_jm(&b, Mode::Residue, 6).unwrap();
        let s = superpoly_jm(&b, Mode::Syt, 6).unwrap();
        println!("b = {b:?}: {}\n  modes agree: {}", s.value, r.value.same_value(&s.value));
    }
    for k in 1..=3 {
        let c = homflypt_cross_check(&[k], 7, 5, 12).unwrap();
        println!("T(2,{}) calibrated: {}", 2 * k, c.passed());
    }
}
