//! HOMFLYPT of a few closures.
use knotmf::braid::BraidWord;
use knotmf::hecke::homflypt;

fn main() {
    for (name, word, n) in [("unknot", "", 1), ("2-unlink", "", 2), ("hopf", "1 1", 2), ("trefoil", "1 1 1", 2), ("figure eight", "1 -2 1 -2", 3)] {
        let b = BraidWord::parse(word, Some(n)).unwrap();
        println!("{name:>12}: {}", homflypt(&b));
    }
}
