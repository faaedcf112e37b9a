//! Braid images in H_n and the Ocneanu trace.
use knotmf::braid::{jm_element, BraidWord};
use knotmf::hecke::{from_braid, trace_ocneanu};

fn main() {
    let b = BraidWord::parse("1 2 1", Some(3)).unwrap();
    let h = from_braid(&b);
    println!("T(σ1σ2σ1) = {h}");
    println!("tr = {}", trace_ocneanu(&h));
    let d1 = from_braid(&jm_element(1, 3).unwrap());
    let d2 = from_braid(&jm_element(2, 3).unwrap());
    println!("δ1δ2 = δ2δ1: {}", &d1 * &d2 == &d2 * &d1);
}
