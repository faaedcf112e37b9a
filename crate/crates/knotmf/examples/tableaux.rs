//! Standard Young tableaux and hook lengths.
use knotmf::localization::{syt_enumerate, Partition};

fn main() {
    let p = Partition::new(vec![3, 2]).unwrap();
    for t in syt_enumerate(&p) {
        println!("{t}");
    }
    for n in 1..=8 {
        let c: u128 = Partition::all(n).iter().map(|p| p.hook_length_count()).sum();
        println!("n = {n}: {c}");
    }
}
