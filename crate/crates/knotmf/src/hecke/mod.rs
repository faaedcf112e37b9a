//! Hecke algebra in the permutation basis, the Ocneanu trace and HOMFLYPT.

mod invariant;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::braid::{BraidWord, Permutation};
use crate::mf::GradedTwist;
use crate::scalar::{q_pow, qa_registry, s_poly, LaurentPoly, Scalar};

pub use invariant::{homflypt, InvariantTerm, InvariantValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("generator {i} out of range for {n} strands")]
    OutOfRange { i: i32, n: usize },
    #[error("strand mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
}

/// Σ c_w T_w with c_w ∈ ℤ[q^±1].
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(w: Permutation) -> Self {
        Self::basis_with(w, LaurentPoly::one(qa_registry()))
    }

    pub fn basis_with(w: Permutation, c: LaurentPoly) -> Self {
        let mut h = Self::zero(w.n());
        h.add_term(w, c);
        h
    }

    pub fn identity(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(|| LaurentPoly::zero(qa_registry()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Permutation, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(|| LaurentPoly::zero(qa_registry()));
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut h = Self::zero(self.n);
        for (w, x) in &self.terms {
            h.add_term(w.clone(), x * c);
        }
        h
    }

    /// Right multiplication by g_i.
    pub fn mul_gen(&self, i: usize) -> Self {
        let s = s_poly();
        let mut h = Self::zero(self.n);
        for (w, c) in &self.terms {
            let ws = w.right_mul_s(i);
            if w.is_right_descent(i) {
                h.add_term(ws, c.clone());
                h.add_term(w.clone(), c * &s);
            } else {
                h.add_term(ws, c.clone());
            }
        }
        h
    }

    pub fn try_mul(&self, other: &HeckeElement) -> Result<Self, HeckeError> {
        if self.n != other.n {
            return Err(HeckeError::StrandMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (v, c) in &other.terms {
            let mut part = self.scale(c);
            for i in v.reduced_word() {
                part = part.mul_gen(i);
            }
            out = &out + &part;
        }
        Ok(out)
    }

    /// Embed H_n into H_{n+1}.
    pub fn extend(&self) -> Self {
        let mut h = Self::zero(self.n + 1);
        for (w, c) in &self.terms {
            h.add_term(w.extend(), c.clone());
        }
        h
    }
}

impl<'a> Add<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        assert_eq!(self.n, rhs.n, "strand mismatch");
        let mut h = self.clone();
        for (w, c) in &rhs.terms {
            h.add_term(w.clone(), c.clone());
        }
        h
    }
}

impl<'a> Sub<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self + &rhs.scale(&LaurentPoly::int(qa_registry(), -1))
    }
}

impl<'a> Mul<&'a HeckeElement> for &'a HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_mul(rhs).expect("strand mismatch")
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*T{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// g_i for i > 0, g_{|i|}⁻¹ = g_{|i|} − (q − q⁻¹) for i < 0.
pub fn gen_image(i: i32, n: usize) -> Result<HeckeElement, HeckeError> {
    let k = i.unsigned_abs() as usize;
    if k == 0 || k >= n {
        return Err(HeckeError::OutOfRange { i, n });
    }
    let mut h = HeckeElement::basis(Permutation::s(k, n));
    if i < 0 {
        h.add_term(Permutation::identity(n), -&s_poly());
    }
    Ok(h)
}

pub fn from_braid(b: &BraidWord) -> HeckeElement {
    let n = b.strands();
    let mut h = HeckeElement::identity(n);
    for &l in b.letters() {
        let k = l.unsigned_abs() as usize;
        let g = h.mul_gen(k);
        h = if l > 0 { g } else { &g - &h.scale(&s_poly()) };
    }
    h
}

/// Ocneanu trace normalized by tr(1) = 1, with tr(x g_{n−1} y) = z·tr(xy).
#[derive(Default)]
pub struct Trace {
    memo: HashMap<Permutation, Scalar>,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn of(&mut self, h: &HeckeElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in h.terms() {
            let t = self.basis(w);
            acc = &acc + &t.scale_poly(c);
        }
        acc
    }

    pub fn basis(&mut self, w: &Permutation) -> Scalar {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let n = w.n();
        let val = if n <= 1 {
            Scalar::one()
        } else if let Some(r) = w.restrict() {
            self.basis(&r)
        } else {
            // w = v∘s_{n−1}∘s_{n−2}∘…∘s_j with j = w⁻¹(n) and v fixing n
            let j = w.inverse().apply(n);
            let mut c = Permutation::identity(n);
            for k in (j..n).rev() {
                c = c.right_mul_s(k);
            }
            let v = w.compose(&c.inverse());
            debug_assert_eq!(v.length() + c.length(), w.length());
            let v = v.restrict().expect("coset representative fixes n");
            let mut y = HeckeElement::basis(v);
            for k in (j..n - 1).rev() {
                y = y.mul_gen(k);
            }
            &Scalar::z() * &self.of(&y)
        };
        self.memo.insert(w.clone(), val.clone());
        val
    }
}

pub fn trace_ocneanu(h: &HeckeElement) -> Scalar {
    Trace::new().of(h)
}

/// q-power helper for tests and examples.
pub fn qp(k: i32) -> LaurentPoly {
    q_pow(k)
}

/// [C+] = q⁻¹([C∥] − [C•⟨−χ1,−χ1⟩]) on the two-strand presentations.
pub fn ktheory_skein_check() -> bool {
    ktheory_skein_check_with(&GradedTwist::chars(&[-1], &[-1]))
}

/// Same relation with another twist on the C• term.
pub fn ktheory_skein_check_with(dot_twist: &GradedTwist) -> bool {
    crate::mf::k_relation_check(dot_twist).map(|r| r.holds).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn generator_images() {
        let g = gen_image(1, 2).unwrap();
        let gi = gen_image(-1, 2).unwrap();
        assert_eq!(&g * &gi, HeckeElement::identity(2));
        assert_eq!(gi.coeff(&Permutation::identity(2)), -&s_poly());
        assert!(gen_image(2, 2).is_err());
    }

    #[test]
    fn quadratic_relation() {
        let g = gen_image(1, 2).unwrap();
        let expect = &HeckeElement::identity(2) + &g.scale(&s_poly());
        assert_eq!(&g * &g, expect);
    }

    #[test]
    fn trefoil_image() {
        let h = from_braid(&b("1 1 1", 2));
        let s = s_poly();
        let one = LaurentPoly::one(qa_registry());
        assert_eq!(h.coeff(&Permutation::identity(2)), s);
        assert_eq!(h.coeff(&Permutation::s(1, 2)), &one + &(&s * &s));
    }

    #[test]
    fn braid_relation() {
        assert_eq!(from_braid(&b("1 2 1", 3)), from_braid(&b("2 1 2", 3)));
        assert_eq!(from_braid(&b("1 3", 4)), from_braid(&b("3 1", 4)));
    }

    #[test]
    fn trace_basics() {
        assert_eq!(trace_ocneanu(&HeckeElement::identity(3)), Scalar::one());
        assert_eq!(trace_ocneanu(&gen_image(1, 2).unwrap()), Scalar::z());
        // s1 s2 s1: z(1 + s z)
        let h = from_braid(&b("1 2 1", 3));
        let z = Scalar::z();
        let expect = &z * &(&Scalar::one() + &(&Scalar::s() * &z));
        assert_eq!(trace_ocneanu(&h), expect);
    }

    #[test]
    fn trace_is_central() {
        let all = Permutation::all(3);
        for x in &all {
            for y in &all {
                let hx = HeckeElement::basis(x.clone());
                let hy = HeckeElement::basis(y.clone());
                assert_eq!(trace_ocneanu(&(&hx * &hy)), trace_ocneanu(&(&hy * &hx)));
            }
        }
    }

    #[test]
    fn ktheory_relation() {
        assert!(ktheory_skein_check());
        assert!(!ktheory_skein_check_with(&GradedTwist::none()));
        let par = crate::mf::kclass_named(crate::mf::Named::Par, &GradedTwist::none()).unwrap();
        assert_eq!(par, crate::mf::kclass_named(crate::mf::Named::Par, &GradedTwist::none()).unwrap());
    }
}
