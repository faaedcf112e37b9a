use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::registry::{VarRegistry, VarWeight};
use super::{Q, ScalarError};

pub type Exps = Vec<i32>;

/// Sparse multivariate Laurent polynomial over the rationals.
#[derive(Clone)]
pub struct LaurentPoly {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<Exps, Q>,
}

/// Result of a grading query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Zero,
    Homogeneous(VarWeight),
    Inhomogeneous,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_reg(&self.reg, &other.reg) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl std::hash::Hash for LaurentPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

pub(crate) fn same_reg(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn checked(x: i64) -> i32 {
    i32::try_from(x).expect("exponent overflow")
}

impl LaurentPoly {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        LaurentPoly { reg: reg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::constant(reg, Q::one())
    }

    pub fn constant(reg: &Arc<VarRegistry>, c: Q) -> Self {
        let mut p = Self::zero(reg);
        if !c.is_zero() {
            p.terms.insert(vec![0; reg.len()], c);
        }
        p
    }

    pub fn int(reg: &Arc<VarRegistry>, c: i64) -> Self {
        Self::constant(reg, Q::from_integer(BigInt::from(c)))
    }

    pub fn monomial(reg: &Arc<VarRegistry>, exps: Exps, c: Q) -> Self {
        assert_eq!(exps.len(), reg.len(), "exponent vector length");
        let mut p = Self::zero(reg);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `name` raised to `k`.
    pub fn var(reg: &Arc<VarRegistry>, name: &str, k: i32) -> Self {
        let i = reg.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var_idx(reg, i, k)
    }

    pub fn var_idx(reg: &Arc<VarRegistry>, i: usize, k: i32) -> Self {
        let mut e = vec![0; reg.len()];
        e[i] = k;
        Self::monomial(reg, e, Q::one())
    }

    pub fn from_terms(reg: &Arc<VarRegistry>, terms: impl IntoIterator<Item = (Exps, Q)>) -> Self {
        let mut p = Self::zero(reg);
        for (e, c) in terms {
            assert_eq!(e.len(), reg.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exps, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Single term, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(&Exps, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, e: Exps, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if same_reg(&self.reg, &other.reg) {
            Ok(())
        } else {
            Err(ScalarError::RegistryMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        let mut r = Self::zero(&self.reg);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| checked(*a as i64 + *b as i64)).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.reg);
        }
        LaurentPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Q::from_integer(BigInt::from(c)))
    }

    /// Multiply by the monomial x^e.
    pub fn shift(&self, e: &[i32]) -> Self {
        LaurentPoly {
            reg: self.reg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.iter().zip(e).map(|(a, b)| checked(*a as i64 + *b as i64)).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(&self.reg);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        r
    }

    /// Integer power; negative powers only for monomials.
    pub fn powi(&self, k: i32) -> Result<Self, ScalarError> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let inv = self.inverse_monomial().ok_or(ScalarError::NotInvertible)?;
        Ok(inv.pow((-k) as u32))
    }

    pub fn inverse_monomial(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        let ne: Exps = e.iter().map(|x| -x).collect();
        Some(Self::monomial(&self.reg, ne, c.recip()))
    }

    /// Exponent of variable `i` ranges over [min, max]; None for zero.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as i64).sum()).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] != 0)
    }

    pub fn weight_of_exps(&self, e: &[i32]) -> VarWeight {
        let mut w = VarWeight::zero();
        for (i, &k) in e.iter().enumerate() {
            if k != 0 {
                w = w.add(&self.reg.weight(i).scale(k as i64));
            }
        }
        w.normalized()
    }

    pub fn weight_of(&self) -> Weight {
        let mut out: Option<VarWeight> = None;
        for e in self.terms.keys() {
            let w = self.weight_of_exps(e);
            match &out {
                None => out = Some(w),
                Some(o) if *o != w => return Weight::Inhomogeneous,
                _ => {}
            }
        }
        match out {
            None => Weight::Zero,
            Some(w) => Weight::Homogeneous(w),
        }
    }

    /// Ring map into `target`. Variables without an image map to the variable of
    /// the same name in `target`.
    pub fn substitute(&self, images: &[(&str, LaurentPoly)], target: &Arc<VarRegistry>) -> Result<Self, ScalarError> {
        let mut imgs: Vec<Option<LaurentPoly>> = vec![None; self.reg.len()];
        for (name, p) in images {
            let i = self.reg.index_of(name).ok_or_else(|| ScalarError::UnknownVariable(name.to_string()))?;
            if !same_reg(p.registry(), target) {
                return Err(ScalarError::RegistryMismatch);
            }
            imgs[i] = Some(p.clone());
        }
        for (i, img) in imgs.iter_mut().enumerate() {
            if img.is_none() && self.involves(i) {
                let name = self.reg.name(i);
                let j = target.index_of(name).ok_or_else(|| ScalarError::UnknownVariable(name.to_string()))?;
                *img = Some(LaurentPoly::var_idx(target, j, 1));
            }
        }
        let mut cache: Vec<BTreeMap<i32, LaurentPoly>> = vec![BTreeMap::new(); self.reg.len()];
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut m = LaurentPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let img = imgs[i].as_ref().unwrap();
                let pw = match cache[i].get(&k) {
                    Some(p) => p.clone(),
                    None => {
                        let p = img.powi(k).map_err(|_| ScalarError::NonInvertibleImage(self.reg.name(i).to_string()))?;
                        cache[i].insert(k, p.clone());
                        p
                    }
                };
                m = &m * &pw;
                if m.is_zero() {
                    break;
                }
            }
            out = &out + &m;
        }
        Ok(out)
    }

    /// Same polynomial read in a registry that contains all variables used here.
    pub fn embed(&self, target: &Arc<VarRegistry>) -> Result<Self, ScalarError> {
        self.substitute(&[], target)
    }

    /// Evaluate every variable at a rational number.
    pub fn eval(&self, point: &[Q]) -> Result<Q, ScalarError> {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    if point[i].is_zero() && k < 0 {
                        return Err(ScalarError::DivisionByZero);
                    }
                    m *= pow_q(&point[i], k);
                }
            }
            s += m;
        }
        Ok(s)
    }

    /// Exact quotient by (1 − c·x^m), if it exists.
    pub fn div_binomial(&self, m: &[i32], c: &Q) -> Option<Self> {
        assert!(m.iter().any(|&x| x != 0), "binomial with constant monomial");
        assert!(!c.is_zero());
        let pivot = m.iter().position(|&x| x != 0).unwrap();
        let step = m[pivot];
        // group terms along lines e + k·m
        let mut lines: BTreeMap<Exps, BTreeMap<i64, Q>> = BTreeMap::new();
        for (e, coef) in &self.terms {
            let k = (e[pivot] as i64).div_euclid(step as i64);
            let base: Exps = e.iter().zip(m).map(|(a, b)| checked(*a as i64 - k * *b as i64)).collect();
            lines.entry(base).or_default().insert(k, coef.clone());
        }
        let mut out = LaurentPoly::zero(&self.reg);
        for (base, line) in lines {
            // P(y) = Σ p_k y^k with y = c·x^m rescaled: write p_k = r_k c^k
            let lo = *line.keys().next().unwrap();
            let hi = *line.keys().last().unwrap();
            let mut acc = Q::zero();
            for k in lo..hi {
                if let Some(p) = line.get(&k) {
                    acc += p / pow_q(c, k as i32);
                }
                if !acc.is_zero() {
                    let e: Exps = base.iter().zip(m).map(|(a, b)| checked(*a as i64 + k * *b as i64)).collect();
                    out.add_term(e, &acc * pow_q(c, k as i32));
                }
            }
            acc += line.get(&hi).unwrap() / pow_q(c, hi as i32);
            if !acc.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    /// Quotient by a monomial-coefficient-free divisor is not supported in general;
    /// this divides by a single term.
    pub fn div_monomial(&self, e: &[i32], c: &Q) -> Self {
        let ne: Exps = e.iter().map(|x| -x).collect();
        self.shift(&ne).scale(&c.recip())
    }

    /// Apply f to each coefficient's exponent vector, merging collisions.
    pub fn map_exps(&self, target: &Arc<VarRegistry>, f: impl Fn(&Exps) -> Exps) -> Self {
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Collect by the exponent of variable `i`: returns exponent → coefficient polynomial
    /// with variable `i` removed (set to exponent zero).
    pub fn collect_var(&self, i: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i];
            f[i] = 0;
            out.entry(k).or_insert_with(|| LaurentPoly::zero(&self.reg)).add_term(f, c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson { exponents: e.clone(), coeff: format_q(c) })
            .collect()
    }

    pub fn from_json(reg: &Arc<VarRegistry>, terms: &[TermJson]) -> Result<Self, ScalarError> {
        let mut p = LaurentPoly::zero(reg);
        for t in terms {
            if t.exponents.len() != reg.len() {
                return Err(ScalarError::Parse(format!("exponent vector of length {}", t.exponents.len())));
            }
            p.add_term(t.exponents.clone(), parse_q(&t.coeff)?);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i32>,
    pub coeff: String,
}

pub fn pow_q(x: &Q, k: i32) -> Q {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

pub fn format_q(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q, ScalarError> {
    let err = || ScalarError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| err())?)),
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("registry mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(&-rhs).expect("registry mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("registry mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest terms first reads more naturally
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    let n = self.reg.name(i);
                    if k == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_q(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Arc<VarRegistry> {
        VarRegistry::plain(&["x", "y", "q"])
    }

    #[test]
    fn basic_arithmetic() {
        let r = reg();
        let x = LaurentPoly::var(&r, "x", 1);
        assert!((&x + &-&x).is_zero());
        let q = LaurentPoly::var(&r, "q", 1);
        let qi = LaurentPoly::var(&r, "q", -1);
        let s = &(&q + &qi) + &q;
        assert_eq!(s.to_string(), "2*q + q^-1");
        assert_eq!(&x.pow(2) * &x.pow(3), x.pow(5));
        let lhs = &(&q - &qi) * &(&q + &qi);
        assert_eq!(lhs, &q.pow(2) - &qi.pow(2));
    }

    #[test]
    fn binomial_division() {
        let r = reg();
        let q = LaurentPoly::var(&r, "q", 1);
        let one = LaurentPoly::one(&r);
        let p = &(&one - &q.pow(2)) * &(&q + &LaurentPoly::var(&r, "x", -2));
        let d = p.div_binomial(&[0, 0, 2], &Q::one()).unwrap();
        assert_eq!(d, &q + &LaurentPoly::var(&r, "x", -2));
        assert!(q.div_binomial(&[0, 0, 2], &Q::one()).is_none());
        // 1 - 4q^2 divided by 1 - 2q
        let p = &one - &q.pow(2).scale_int(4);
        let d = p.div_binomial(&[0, 0, 1], &Q::from_integer(2.into())).unwrap();
        assert_eq!(d, &one + &q.scale_int(2));
    }

    #[test]
    fn substitution_is_ring_map() {
        let r = reg();
        let x = LaurentPoly::var(&r, "x", 1);
        let y = LaurentPoly::var(&r, "y", 1);
        let xy = &x * &y;
        let z = xy.substitute(&[("x", LaurentPoly::zero(&r))], &r).unwrap();
        assert!(z.is_zero());
        assert_eq!(xy.substitute(&[], &r).unwrap(), xy);
        let inv = LaurentPoly::var(&r, "x", -1);
        assert!(inv.substitute(&[("x", &x + &y)], &r).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = reg();
        let p = &LaurentPoly::var(&r, "x", -3).scale(&Q::new(3.into(), 7.into())) + &LaurentPoly::int(&r, 5);
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&j).unwrap();
        assert_eq!(LaurentPoly::from_json(&r, &back).unwrap(), p);
    }
}
