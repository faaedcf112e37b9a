//! C•⟨0,χ1⟩ ⋆ C•⟨0,χ1⟩ with its step log.
use knotmf::mf::{blob_square, GradedTwist};

fn main() {
    let t = GradedTwist::chars(&[], &[1]);
    let c = blob_square(&t, &t).unwrap();
    for s in &c.log {
        println!("{:>2} {:?} {} {}", s.step, s.status, s.operation, s.params);
    }
    let s: Vec<String> = c.summands.iter().map(|x| x.to_string()).collect();
    println!("= {}", s.join(" ⊕ "));
    println!("q-form {:?}", c.q_form);
}
