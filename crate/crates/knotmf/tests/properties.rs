use proptest::prelude::*;

use knotmf::braid::BraidWord;
use knotmf::hecke::{from_braid, homflypt};
use knotmf::localization::{syt_enumerate, Partition};
use knotmf::mf::{koszul, tensor};
use knotmf::scalar::{LaurentPoly, QuotientReducer, Scalar, VarRegistry, Q};

fn reg() -> std::sync::Arc<VarRegistry> {
    VarRegistry::plain(&["x", "y", "z"])
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i32..=3, -3i32..=3, -2i32..=2), -5i64..=5), 0..5).prop_map(|ts| {
        let r = reg();
        LaurentPoly::from_terms(&r, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c].into(), Q::from_integer(k.into()))))
    })
}

fn nonneg_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((0i32..=3, 0i32..=3), -4i64..=4), 1..4).prop_map(|ts| {
        let r = reg();
        LaurentPoly::from_terms(&r, ts.into_iter().map(|((a, b), k)| (vec![a, b, 0].into(), Q::from_integer(k.into()))))
    })
}

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i });
        prop::collection::vec(letter, 0..=8).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(), b in poly(), k in -2i32..=2) {
        let r = reg();
        let img = [("x", &LaurentPoly::var(&r, "y", 1) * &LaurentPoly::var(&r, "z", k)), ("y", LaurentPoly::var(&r, "x", -1))];
        let s = |p: &LaurentPoly| p.substitute(&img, &r).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn normal_form_is_idempotent(a in nonneg_poly()) {
        let r = VarRegistry::plain(&["a11", "a12", "a21", "a22"]);
        let red = QuotientReducer::det1(&r, &["a"]).unwrap();
        let p = a.substitute(&[("x", LaurentPoly::var(&r, "a11", 1)), ("y", LaurentPoly::var(&r, "a22", 1)), ("z", LaurentPoly::var(&r, "a12", 1))], &r).unwrap();
        let n = red.reduce(&p);
        prop_assert!(red.is_normal(&n));
        prop_assert_eq!(red.reduce(&n), n.clone());
        prop_assert!(red.equal(&p, &n));
    }

    #[test]
    fn markov_moves(b in braid(), k in 0usize..8) {
        let p = homflypt(&b);
        prop_assert_eq!(homflypt(&b.rotate(k)), p.clone());
        prop_assert_eq!(homflypt(&b.stabilize(true)), p.clone());
        prop_assert_eq!(homflypt(&b.stabilize(false)), p);
    }

    #[test]
    fn skein(b in braid(), pos in 0usize..9, i in 1i32..4) {
        let i = 1 + (i - 1) % (b.strands() as i32 - 1);
        let pos = pos.min(b.len());
        let p = homflypt(&b.insert(pos, i).unwrap());
        let m = homflypt(&b.insert(pos, -i).unwrap());
        let lhs = &(&Scalar::a(1) * p.scalar()) - &(&Scalar::a(-1) * m.scalar());
        prop_assert_eq!(lhs, &Scalar::s() * homflypt(&b).scalar());
    }

    #[test]
    fn mirror_inverts_variables(b in braid()) {
        prop_assert_eq!(homflypt(&b.mirror()).scalar().clone(), homflypt(&b).scalar().mirror());
    }

    #[test]
    fn hecke_image_is_multiplicative(a in braid(), c in braid()) {
        let n = a.strands().max(c.strands());
        let a = BraidWord::new(n, a.letters().to_vec()).unwrap();
        let c = BraidWord::new(n, c.letters().to_vec()).unwrap();
        prop_assert_eq!(from_braid(&a.concat(&c).unwrap()), &from_braid(&a) * &from_braid(&c));
    }

    #[test]
    fn koszul_tensor_squares(a in nonneg_poly(), b in nonneg_poly(), c in nonneg_poly(), d in nonneg_poly()) {
        let r = reg();
        let m1 = koszul(vec![(a.clone(), b.clone())], &a * &b, &r).unwrap();
        let m2 = koszul(vec![(c.clone(), d.clone())], &c * &d, &r).unwrap();
        let t = tensor(&m1, &m2).unwrap();
        prop_assert!(t.check_square().is_ok());
        prop_assert!(t.materialize().check_square().is_ok());
    }

    #[test]
    fn hook_length(parts in prop::collection::vec(1usize..=4, 1..=3)) {
        let mut parts = parts;
        parts.sort_unstable_by(|x, y| y.cmp(x));
        let p = Partition::new(parts).unwrap();
        let ts = syt_enumerate(&p);
        prop_assert_eq!(ts.len() as u128, p.hook_length_count());
        prop_assert!(ts.iter().all(|t| t.is_valid()));
    }
}
