//! Full twist as a shift of JM exponents.
use knotmf::localization::full_twist_shift_check;

fn main() {
    for (b, m) in [(vec![1], 1), (vec![0, 2], 1), (vec![1, 1], -1)] {
        println!("b = {b:?}, M = {m}: {}", full_twist_shift_check(&b, m).unwrap());
    }
}
