use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{LaurentPoly, TermJson};
use super::registry::{VarRegistry, VarWeight};
use super::{Q, ScalarError};

/// The ring ℚ[q^±, a^±] in which Hecke coefficients live.
pub fn qa_registry() -> &'static Arc<VarRegistry> {
    static REG: OnceLock<Arc<VarRegistry>> = OnceLock::new();
    REG.get_or_init(|| VarRegistry::new(&[("q", VarWeight::qt(1, 0)), ("a", VarWeight::zero())]).unwrap())
}

pub fn q_pow(k: i32) -> LaurentPoly {
    LaurentPoly::var(qa_registry(), "q", k)
}

pub fn a_pow(k: i32) -> LaurentPoly {
    LaurentPoly::var(qa_registry(), "a", k)
}

/// s = q − q⁻¹ as a polynomial.
pub fn s_poly() -> LaurentPoly {
    &q_pow(1) - &q_pow(-1)
}

/// u = 1 − a⁻² as a polynomial.
pub fn u_poly() -> LaurentPoly {
    &LaurentPoly::one(qa_registry()) - &a_pow(-2)
}

/// numerator / (s^s_exp · u^u_exp)
#[derive(Clone)]
pub struct Scalar {
    num: LaurentPoly,
    s_exp: u32,
    u_exp: u32,
}

impl Scalar {
    pub fn new(num: LaurentPoly, s_exp: u32, u_exp: u32) -> Self {
        assert!(Arc::ptr_eq(num.registry(), qa_registry()) || **num.registry() == **qa_registry());
        let mut x = Scalar { num, s_exp, u_exp };
        x.reduce();
        x
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self::new(num, 0, 0)
    }

    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(qa_registry()), s_exp: 0, u_exp: 0 }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(c: i64) -> Self {
        Scalar { num: LaurentPoly::int(qa_registry(), c), s_exp: 0, u_exp: 0 }
    }

    pub fn q(k: i32) -> Self {
        Self::from_poly(q_pow(k))
    }

    pub fn a(k: i32) -> Self {
        Self::from_poly(a_pow(k))
    }

    /// s = q − q⁻¹
    pub fn s() -> Self {
        Self::from_poly(s_poly())
    }

    /// D = (a − a⁻¹)/(q − q⁻¹), the unknot value.
    pub fn d() -> Self {
        Self::new(&a_pow(1) - &a_pow(-1), 1, 0)
    }

    /// z = (q − q⁻¹)/(1 − a⁻²), the Markov parameter of the trace.
    pub fn z() -> Self {
        Self::new(s_poly(), 0, 1)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn s_exp(&self) -> u32 {
        self.s_exp
    }

    pub fn u_exp(&self) -> u32 {
        self.u_exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel atom factors that divide the numerator exactly.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.s_exp = 0;
            self.u_exp = 0;
            return;
        }
        // s = −q⁻¹(1 − q²)
        while self.s_exp > 0 {
            match self.num.div_binomial(&[2, 0], &Q::one()) {
                Some(d) => {
                    self.num = -&d.shift(&[1, 0]);
                    self.s_exp -= 1;
                }
                None => break,
            }
        }
        while self.u_exp > 0 {
            match self.num.div_binomial(&[0, -2], &Q::one()) {
                Some(d) => {
                    self.num = d;
                    self.u_exp -= 1;
                }
                None => break,
            }
        }
    }

    pub fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    fn lift(&self, s: u32, u: u32) -> LaurentPoly {
        let mut n = self.num.clone();
        for _ in self.s_exp..s {
            n = &n * &s_poly();
        }
        for _ in self.u_exp..u {
            n = &n * &u_poly();
        }
        n
    }

    pub fn div_atoms(&self, s: u32, u: u32) -> Self {
        Self::new(self.num.clone(), self.s_exp + s, self.u_exp + u)
    }

    pub fn div_monomial(&self, q: i32, a: i32) -> Self {
        Scalar { num: self.num.shift(&[-q, -a]), s_exp: self.s_exp, u_exp: self.u_exp }
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> Self {
        Self::new(&self.num * p, self.s_exp, self.u_exp)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Scalar::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Cross-multiplied equality of the represented rational functions.
    pub fn same_value(&self, other: &Scalar) -> bool {
        let s = self.s_exp.max(other.s_exp);
        let u = self.u_exp.max(other.u_exp);
        self.lift(s, u) == other.lift(s, u)
    }

    /// Exact value as a Laurent polynomial, if the denominator cancelled.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        (self.s_exp == 0 && self.u_exp == 0).then_some(&self.num)
    }

    /// The value at (a⁻¹, q⁻¹).
    pub fn mirror(&self) -> Self {
        // P(a⁻¹, q⁻¹): s ↦ −s, u ↦ 1 − a² = −a²·u
        let reg = qa_registry();
        let num = self.num.map_exps(reg, |e| vec![-e[0], -e[1]]);
        let mut num = num;
        if self.s_exp % 2 == 1 {
            num = -&num;
        }
        if self.u_exp % 2 == 1 {
            num = -&num;
        }
        let num = num.shift(&[0, -2 * self.u_exp as i32]);
        Scalar::new(num, self.s_exp, self.u_exp)
    }

    /// Evaluate at rational (q, a).
    pub fn eval(&self, q: &Q, a: &Q) -> Result<Q, ScalarError> {
        let n = self.num.eval(&[q.clone(), a.clone()])?;
        let s = s_poly().eval(&[q.clone(), a.clone()])?;
        let u = u_poly().eval(&[q.clone(), a.clone()])?;
        let mut d = Q::one();
        for _ in 0..self.s_exp {
            d *= &s;
        }
        for _ in 0..self.u_exp {
            d *= &u;
        }
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(n / d)
    }

    pub fn to_json(&self) -> ScalarJson {
        ScalarJson { numerator: self.num.to_json(), s_exp: self.s_exp, u_exp: self.u_exp }
    }

    pub fn from_json(j: &ScalarJson) -> Result<Self, ScalarError> {
        Ok(Scalar::new(LaurentPoly::from_json(qa_registry(), &j.numerator)?, j.s_exp, j.u_exp))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub numerator: Vec<TermJson>,
    pub s_exp: u32,
    pub u_exp: u32,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        // reduced forms are unique, so structural comparison suffices
        self.s_exp == other.s_exp && self.u_exp == other.u_exp && self.num == other.num
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let s = self.s_exp.max(rhs.s_exp);
        let u = self.u_exp.max(rhs.u_exp);
        Scalar::new(&self.lift(s, u) + &rhs.lift(s, u), s, u)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &-rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        Scalar::new(&self.num * &rhs.num, self.s_exp + rhs.s_exp, self.u_exp + rhs.u_exp)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, s_exp: self.s_exp, u_exp: self.u_exp }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut den = Vec::new();
        match self.s_exp {
            0 => {}
            1 => den.push("(q - q^-1)".to_string()),
            k => den.push(format!("(q - q^-1)^{k}")),
        }
        match self.u_exp {
            0 => {}
            1 => den.push("(1 - a^-2)".to_string()),
            k => den.push(format!("(1 - a^-2)^{k}")),
        }
        if den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, den.join("*"))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_times_z_is_a() {
        assert_eq!(&Scalar::d() * &Scalar::z(), Scalar::a(1));
    }

    #[test]
    fn reduce_cancels_s() {
        let p = &q_pow(3) + &a_pow(-1);
        let x = Scalar::new(&p * &s_poly(), 1, 0);
        assert_eq!(x.as_poly(), Some(&p));
        let d = Scalar::d();
        assert_eq!(d.numerator(), &(&a_pow(1) - &a_pow(-1)));
        assert_eq!(d.s_exp(), 1);
        assert_eq!(d.u_exp(), 0);
    }

    #[test]
    fn addition_common_denominator() {
        // 1/s + 1/s = 2/s and z - s = s a^-2 / u
        let inv_s = Scalar::new(LaurentPoly::one(qa_registry()), 1, 0);
        assert_eq!(&inv_s + &inv_s, Scalar::new(LaurentPoly::int(qa_registry(), 2), 1, 0));
        let lhs = &Scalar::z() - &Scalar::s();
        let rhs = Scalar::new(&s_poly() * &a_pow(-2), 0, 1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mirror_is_involution() {
        let x = &Scalar::z() * &Scalar::d();
        assert_eq!(x.mirror().mirror(), x);
        // D is mirror invariant
        assert_eq!(Scalar::d().mirror(), Scalar::d());
    }
}
