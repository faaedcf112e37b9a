use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::format_q;
use super::{Q, ScalarError};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly1(Vec<Q>);

impl Poly1 {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly1(c)
    }

    pub fn zero() -> Self {
        Poly1(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// c·z^k
    pub fn monomial(k: usize, c: Q) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Lowest index with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn div_rem(&self, d: &Poly1) -> (Poly1, Poly1) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly1::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        let lc = d.lead();
        for i in (0..quo.len()).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            quo[i] = c;
        }
        (Poly1::new(quo), Poly1::new(r))
    }

    pub fn gcd(a: &Poly1, b: &Poly1) -> Poly1 {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        if x.is_zero() {
            return x;
        }
        let l = x.lead();
        x.scale(&l.recip())
    }

    /// Taylor coefficients at z = p, i.e. the polynomial in w = z − p.
    pub fn shift_to(&self, p: &Q) -> Poly1 {
        // Horner on polynomials: P(p + w)
        let mut acc = Poly1::zero();
        let lin = Poly1::new(vec![p.clone(), Q::one()]);
        for c in self.0.iter().rev() {
            acc = &(&acc * &lin) + &Poly1::constant(c.clone());
        }
        acc
    }
}

impl<'a> Add<&'a Poly1> for &'a Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let n = self.0.len().max(rhs.0.len());
        Poly1::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly1> for &'a Poly1 {
    type Output = Poly1;
    fn sub(self, rhs: &Poly1) -> Poly1 {
        let n = self.0.len().max(rhs.0.len());
        Poly1::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly1> for &'a Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut v = vec![Q::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly1::new(v)
    }
}

/// z^shift · num(z) / den(z) over ℚ with gcd(num, den) = 1, den monic and den(0) ≠ 0.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunc1 {
    num: Poly1,
    den: Poly1,
    shift: i32,
}

impl RationalFunc1 {
    pub fn new(num: Poly1, den: Poly1, shift: i32) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut f = RationalFunc1 { num, den, shift };
        f.normalize();
        Ok(f)
    }

    pub fn from_poly(p: Poly1) -> Self {
        Self::new(p, Poly1::constant(Q::one()), 0).unwrap()
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly1::constant(c))
    }

    /// z^k
    pub fn z_pow(k: i32) -> Self {
        RationalFunc1 { num: Poly1::constant(Q::one()), den: Poly1::constant(Q::one()), shift: k }
    }

    /// z − c
    pub fn linear(c: Q) -> Self {
        Self::from_poly(Poly1::new(vec![-c, Q::one()]))
    }

    pub fn numerator(&self) -> &Poly1 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly1 {
        &self.den
    }

    pub fn z_shift(&self) -> i32 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly1::constant(Q::one());
            self.shift = 0;
            return;
        }
        // pull powers of z out of both parts
        let vn = self.num.valuation().unwrap();
        let vd = self.den.valuation().unwrap();
        self.num = Poly1::new(self.num.0[vn..].to_vec());
        self.den = Poly1::new(self.den.0[vd..].to_vec());
        self.shift += vn as i32 - vd as i32;
        let g = Poly1::gcd(&self.num, &self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let l = self.den.lead();
        self.num = self.num.scale(&l.recip());
        self.den = self.den.scale(&l.recip());
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone(), -self.shift)
    }

    pub fn pow(&self, k: i32) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut r = Self::constant(Q::one());
        for _ in 0..k.unsigned_abs() {
            r = &r * &base;
        }
        Ok(r)
    }

    pub fn eval(&self, x: &Q) -> Result<Q, ScalarError> {
        let d = self.den.eval(x);
        if d.is_zero() || (x.is_zero() && self.shift < 0) {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.num.eval(x) / d * super::laurent::pow_q(x, self.shift))
    }

    /// Laurent expansion in w = z − p up to and including w^order.
    /// Without `laurent`, a pole at p is an error.
    pub fn series_at(&self, p: &Q, order: i32, laurent: bool) -> Result<BTreeMap<i32, Q>, ScalarError> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if self.shift >= 0 {
            num = &num * &Poly1::monomial(self.shift as usize, Q::one());
        } else {
            den = &den * &Poly1::monomial((-self.shift) as usize, Q::one());
        }
        let n = num.shift_to(p);
        let d = den.shift_to(p);
        let vd = d.valuation().unwrap() as i32;
        if vd > 0 && !laurent {
            return Err(ScalarError::Pole);
        }
        let dtail: Vec<Q> = d.0[vd as usize..].to_vec();
        let d0 = dtail[0].clone();
        // series of n / dtail, then shift by −vd
        let need = (order + vd).max(-1);
        let mut out = BTreeMap::new();
        let mut quo: Vec<Q> = Vec::new();
        for k in 0..=need.max(0) as usize {
            let mut c = n.coeff(k);
            for j in 1..dtail.len().min(k + 1) {
                c -= &dtail[j] * &quo[k - j];
            }
            let c = c / &d0;
            quo.push(c);
        }
        for (k, c) in quo.into_iter().enumerate() {
            let e = k as i32 - vd;
            if e <= order && !c.is_zero() {
                out.insert(e, c);
            }
        }
        Ok(out)
    }

    /// Coefficient of (z − p)^{-1}.
    pub fn residue(&self, p: &Q) -> Result<Q, ScalarError> {
        let s = self.series_at(p, -1, true)?;
        Ok(s.get(&-1).cloned().unwrap_or_else(Q::zero))
    }

    /// Distinct rational poles (roots of the denominator and z = 0 if shift < 0).
    pub fn rational_poles(&self) -> Vec<Q> {
        let mut poles = Vec::new();
        if self.shift < 0 {
            poles.push(Q::zero());
        }
        poles.extend(rational_roots(&self.den));
        poles
    }
}

/// Rational roots of a polynomial via the rational root theorem on the
/// integer-cleared polynomial.
pub fn rational_roots(p: &Poly1) -> Vec<Q> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let lcm = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.0.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let v = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if v > 0 {
        roots.push(Q::zero());
    }
    let c0 = ints[v].clone();
    let cn = ints.last().unwrap().clone();
    let divs = |n: &BigInt| -> Vec<BigInt> {
        let n = if n < &BigInt::zero() { -n } else { n.clone() };
        let mut d = Vec::new();
        let mut i = BigInt::one();
        while &i * &i <= n {
            if (&n % &i).is_zero() {
                d.push(i.clone());
                d.push(&n / &i);
            }
            i += 1;
        }
        d
    };
    let mut seen = std::collections::BTreeSet::new();
    for a in divs(&c0) {
        for b in divs(&cn) {
            for sign in [1, -1] {
                let r = Q::new(a.clone() * sign, b.clone());
                if seen.insert(r.clone()) && p.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

impl<'a> Add<&'a RationalFunc1> for &'a RationalFunc1 {
    type Output = RationalFunc1;
    fn add(self, rhs: &RationalFunc1) -> RationalFunc1 {
        let m = self.shift.min(rhs.shift);
        let a = &self.num * &Poly1::monomial((self.shift - m) as usize, Q::one());
        let b = &rhs.num * &Poly1::monomial((rhs.shift - m) as usize, Q::one());
        let num = &(&a * &rhs.den) + &(&b * &self.den);
        RationalFunc1::new(num, &self.den * &rhs.den, m).unwrap()
    }
}

impl<'a> Neg for &'a RationalFunc1 {
    type Output = RationalFunc1;
    fn neg(self) -> RationalFunc1 {
        RationalFunc1 { num: self.num.scale(&-Q::one()), den: self.den.clone(), shift: self.shift }
    }
}

impl<'a> Sub<&'a RationalFunc1> for &'a RationalFunc1 {
    type Output = RationalFunc1;
    fn sub(self, rhs: &RationalFunc1) -> RationalFunc1 {
        self + &-rhs
    }
}

impl<'a> Mul<&'a RationalFunc1> for &'a RationalFunc1 {
    type Output = RationalFunc1;
    fn mul(self, rhs: &RationalFunc1) -> RationalFunc1 {
        RationalFunc1::new(&self.num * &rhs.num, &self.den * &rhs.den, self.shift + rhs.shift).unwrap()
    }
}

impl<'a> Div<&'a RationalFunc1> for &'a RationalFunc1 {
    type Output = RationalFunc1;
    fn div(self, rhs: &RationalFunc1) -> RationalFunc1 {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl fmt::Display for RationalFunc1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly1| -> String {
            let parts: Vec<String> = p
                .0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => format_q(c),
                    1 => format!("{}*z", format_q(c)),
                    _ => format!("{}*z^{}", format_q(c), i),
                })
                .collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        };
        write!(f, "z^{} * ({}) / ({})", self.shift, show(&self.num), show(&self.den))
    }
}

impl fmt::Debug for RationalFunc1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn geometric_series() {
        // 1/(1 - z)
        let f = RationalFunc1::new(Poly1::constant(q(1)), Poly1::new(vec![q(1), q(-1)]), 0).unwrap();
        let s = f.series_at(&q(0), 3, false).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.values().all(|c| c.is_one()));
    }

    #[test]
    fn simple_residue() {
        // z/(z - 1) has residue 1 at z = 1
        let f = &RationalFunc1::z_pow(1) / &RationalFunc1::linear(q(1));
        assert_eq!(f.residue(&q(1)).unwrap(), q(1));
        assert!(f.series_at(&q(1), 2, false).is_err());
    }

    #[test]
    fn gcd_reduction() {
        // (z^2 - 1)/(z - 1) = z + 1
        let f = RationalFunc1::new(Poly1::new(vec![q(-1), q(0), q(1)]), Poly1::new(vec![q(-1), q(1)]), 0).unwrap();
        assert_eq!(f, RationalFunc1::from_poly(Poly1::new(vec![q(1), q(1)])));
    }

    #[test]
    fn double_pole_residue() {
        // z^2/(z-2)^2 = 1 + 4/(z-2) + 4/(z-2)^2
        let l = RationalFunc1::linear(q(2));
        let f = &RationalFunc1::z_pow(2) / &(&l * &l);
        assert_eq!(f.residue(&q(2)).unwrap(), q(4));
        assert_eq!(rational_roots(f.denominator()), vec![q(2)]);
    }
}
