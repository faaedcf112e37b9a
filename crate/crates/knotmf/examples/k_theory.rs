//! K-classes on X̄ and the C+ relation.
use knotmf::mf::{k_convolve, k_relation_check, plus_comb, plus_minus_check, GradedTwist, KComb, Named};

fn main() {
    let r = k_relation_check(&GradedTwist::chars(&[-1], &[-1])).unwrap();
    println!("[C+] = {}\nrhs  = {}\nholds {} (generic t {})", r.lhs, r.rhs, r.holds, r.holds_generic_t);
    let dot = KComb::term(Named::Dot, 0, &[], &[1]);
    println!("C•⟨0,χ1⟩⋆C•⟨0,χ1⟩ = {}", k_convolve(&dot, &dot).unwrap());
    println!("[C+] as a combination: {}", plus_comb());
    let pm = plus_minus_check().unwrap();
    println!("C+⋆C- = {}\nresidual against C∥: {}", pm.product, pm.residual);
}
