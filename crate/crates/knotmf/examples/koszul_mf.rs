//! Koszul factorizations, tensor products and eliminations.
use knotmf::mf::{koszul, tensor, ElimMode, Elimination};
use knotmf::scalar::{LaurentPoly, VarRegistry};

fn main() {
    let r = VarRegistry::plain(&["x", "y", "z", "w"]);
    let v = |n: &str, k| LaurentPoly::var(&r, n, k);
    let x5 = koszul(vec![(v("x", 2), v("x", 3))], v("x", 5), &r).unwrap();
    let xy = koszul(vec![(v("x", 1), v("y", 1))], &v("x", 1) * &v("y", 1), &r).unwrap();
    println!("{x5}\nD² = x⁵: {}", x5.check_square().is_ok());
    let t = tensor(&x5, &xy).unwrap();
    println!("{t}\nrank {}", t.rank());
    let zw = koszul(vec![(v("z", 1), v("w", 1))], &v("z", 1) * &v("w", 1), &r).unwrap();
    let both = tensor(&xy, &zw).unwrap();
    match both.eliminate_row(1, ElimMode::Knorrer) {
        Ok(Elimination::Reduced(m, c)) => println!("Knörrer on row 1: {m}\n  {c:?}"),
        Ok(Elimination::Contractible(c)) => println!("contractible: {c:?}"),
        Err(e) => println!("Knörrer on row 1: {e}"),
    }
}
