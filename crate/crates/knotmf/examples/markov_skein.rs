//! Seeded Markov and skein suites.
use knotmf::cli::verify::{markov, skein, Status};

fn main() {
    for r in [markov(7, 50), skein(7, 50)] {
        println!("{}: {} pass, {} fail", r.suite, r.count(Status::Pass), r.count(Status::Fail));
    }
}
