use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::laurent::{Exps, LaurentPoly};
use super::registry::VarRegistry;
use super::{Q, ScalarError};

/// Rational function num / Π(1 − x^m)^k whose denominator is a product of
/// binomial atoms. Atom exponents are kept with a positive leading entry.
#[derive(Clone)]
pub struct Frac {
    num: LaurentPoly,
    den: BTreeMap<Exps, u32>,
}

/// Rewrite 1 − x^m with leading-positive m: returns (m', sign, shift) with
/// 1 − x^m = sign · x^shift · (1 − x^m').
fn canonical_atom(m: &[i32]) -> Result<(Exps, bool, Exps), ScalarError> {
    let lead = m.iter().find(|&&x| x != 0).ok_or(ScalarError::DivisionByZero)?;
    if *lead > 0 {
        Ok((m.to_vec(), false, vec![0; m.len()]))
    } else {
        // 1 − x^m = −x^m (1 − x^{−m})
        Ok((m.iter().map(|x| -x).collect(), true, m.to_vec()))
    }
}

impl Frac {
    pub fn from_poly(num: LaurentPoly) -> Self {
        Frac { num, den: BTreeMap::new() }
    }

    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        Self::from_poly(LaurentPoly::zero(reg))
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::from_poly(LaurentPoly::one(reg))
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        self.num.registry()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn atoms(&self) -> &BTreeMap<Exps, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divide by (1 − x^m)^k.
    pub fn div_atom(&self, m: &[i32], k: u32) -> Result<Self, ScalarError> {
        let (cm, neg, shift) = canonical_atom(m)?;
        let mut r = self.clone();
        for _ in 0..k {
            let neg_shift: Exps = shift.iter().map(|x| -x).collect();
            r.num = r.num.shift(&neg_shift);
            if neg {
                r.num = -&r.num;
            }
        }
        *r.den.entry(cm).or_insert(0) += k;
        r.reduce();
        Ok(r)
    }

    /// Multiply by (1 − x^m).
    pub fn mul_atom(&self, m: &[i32]) -> Self {
        let one = LaurentPoly::one(self.registry());
        let b = &one - &LaurentPoly::monomial(self.registry(), m.to_vec(), Q::one());
        let mut r = Frac { num: &self.num * &b, den: self.den.clone() };
        r.reduce();
        r
    }

    /// Divide by a binomial c1·x^e1 − c2·x^e2 with e1 ≠ e2.
    pub fn div_difference(&self, e1: &[i32], c1: &Q, e2: &[i32], c2: &Q) -> Result<Self, ScalarError> {
        if c1.is_zero() || c2.is_zero() {
            return Err(ScalarError::NotInvertible);
        }
        // c1 x^e1 (1 − (c2/c1) x^{e2−e1}); only unit ratios c2/c1 = 1 are atoms
        if c1 != c2 {
            return Err(ScalarError::NotInvertible);
        }
        let m: Exps = e2.iter().zip(e1).map(|(a, b)| a - b).collect();
        let r = self.div_monomial(e1, c1);
        r.div_atom(&m, 1)
    }

    pub fn div_monomial(&self, e: &[i32], c: &Q) -> Self {
        Frac { num: self.num.div_monomial(e, c), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = Frac { num: self.num.scale(c), den: self.den.clone() };
        r.reduce();
        r
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut r = Frac { num: &self.num * p, den: self.den.clone() };
        r.reduce();
        r
    }

    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let atoms: Vec<Exps> = self.den.keys().cloned().collect();
        for m in atoms {
            loop {
                let k = self.den[&m];
                if k == 0 {
                    self.den.remove(&m);
                    break;
                }
                match self.num.div_binomial(&m, &Q::one()) {
                    Some(d) => {
                        self.num = d;
                        *self.den.get_mut(&m).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, k| *k > 0);
    }

    fn lifted(&self, den: &BTreeMap<Exps, u32>) -> LaurentPoly {
        let one = LaurentPoly::one(self.registry());
        let mut n = self.num.clone();
        for (m, &k) in den {
            let have = self.den.get(m).copied().unwrap_or(0);
            let b = &one - &LaurentPoly::monomial(self.registry(), m.clone(), Q::one());
            for _ in have..k {
                n = &n * &b;
            }
        }
        n
    }

    fn common(&self, other: &Frac) -> BTreeMap<Exps, u32> {
        let mut den = self.den.clone();
        for (m, &k) in &other.den {
            let e = den.entry(m.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        den
    }

    /// Equality of the represented rational functions.
    pub fn same_value(&self, other: &Frac) -> bool {
        let den = self.common(other);
        self.lifted(&den) == other.lifted(&den)
    }

    /// Substitute variables by monomials (coefficient one), e.g. T ↦ Q⁻¹.
    /// Fails if an atom collapses to zero.
    pub fn substitute_monomial(&self, images: &[(&str, Exps)], target: &Arc<VarRegistry>) -> Result<Self, ScalarError> {
        let reg = self.registry();
        let mut map: Vec<Exps> = Vec::with_capacity(reg.len());
        for i in 0..reg.len() {
            let name = reg.name(i);
            match images.iter().find(|(n, _)| *n == name) {
                Some((_, e)) => map.push(e.clone()),
                None => {
                    let mut e = vec![0; target.len()];
                    if let Some(j) = target.index_of(name) {
                        e[j] = 1;
                        map.push(e);
                    } else if self.num.involves(i) || self.den.keys().any(|m| m[i] != 0) {
                        return Err(ScalarError::UnknownVariable(name.to_string()));
                    } else {
                        map.push(e);
                    }
                }
            }
        }
        let image = |e: &Exps| -> Exps {
            let mut out = vec![0i32; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    for (o, x) in out.iter_mut().zip(&map[i]) {
                        *o += k * x;
                    }
                }
            }
            out
        };
        let mut r = Frac::from_poly(self.num.map_exps(target, image));
        for (m, &k) in &self.den {
            let im = image(m);
            if im.iter().all(|&x| x == 0) {
                return Err(ScalarError::DivisionByZero);
            }
            r = r.div_atom(&im, k)?;
        }
        Ok(r)
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Q]) -> Result<Q, ScalarError> {
        let n = self.num.eval(point)?;
        let mut d = Q::one();
        for (m, &k) in &self.den {
            let mono = LaurentPoly::monomial(self.registry(), m.clone(), Q::one()).eval(point)?;
            let b = Q::one() - mono;
            for _ in 0..k {
                d *= &b;
            }
        }
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(n / d)
    }

    /// Power series in the variables `series_vars` (all other variables kept
    /// formal), truncated at total degree `order` in those variables.
    pub fn series(&self, series_vars: &[usize], order: i32) -> Result<LaurentPoly, ScalarError> {
        let deg = |e: &Exps| -> i32 { series_vars.iter().map(|&i| e[i]).sum() };
        let mut out = self.num.clone();
        for (m, &k) in &self.den {
            let step = deg(m);
            let pure = m.iter().enumerate().all(|(i, &x)| x == 0 || series_vars.contains(&i));
            if step <= 0 || !pure || series_vars.iter().any(|&i| m[i] < 0) {
                return Err(ScalarError::NotPowerSeries);
            }
            let min_num = out.terms().keys().map(deg).min().unwrap_or(0);
            let room = order - min_num;
            for _ in 0..k {
                let mut geo = LaurentPoly::zero(self.registry());
                let mut j = 0;
                while j * step <= room.max(0) {
                    geo.add_term(m.iter().map(|x| x * j).collect(), Q::one());
                    j += 1;
                }
                out = truncate(&(&out * &geo), series_vars, order);
            }
        }
        Ok(truncate(&out, series_vars, order))
    }
}

fn truncate(p: &LaurentPoly, vars: &[usize], order: i32) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.registry(),
        p.terms()
            .iter()
            .filter(|(e, _)| vars.iter().map(|&i| e[i]).sum::<i32>() <= order)
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.same_value(other)
    }
}

impl<'a> Add<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let den = self.common(rhs);
        let mut r = Frac { num: &self.lifted(&den) + &rhs.lifted(&den), den };
        r.reduce();
        r
    }
}

impl<'a> Sub<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self + &-rhs
    }
}

impl<'a> Mul<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        let mut den = self.den.clone();
        for (m, &k) in &rhs.den {
            *den.entry(m.clone()).or_insert(0) += k;
        }
        let mut r = Frac { num: &self.num * &rhs.num, den };
        r.reduce();
        r
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let reg = self.registry();
        let atoms: Vec<String> = self
            .den
            .iter()
            .map(|(m, k)| {
                let mono = LaurentPoly::monomial(reg, m.clone(), Q::one());
                if *k == 1 {
                    format!("(1 - {mono})")
                } else {
                    format!("(1 - {mono})^{k}")
                }
            })
            .collect();
        write!(f, "({}) / {}", self.num, atoms.join("*"))
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Arc<VarRegistry> {
        VarRegistry::plain(&["Q", "T", "a"])
    }

    #[test]
    fn partial_fractions_recombine() {
        let r = reg();
        // 1/((1-Q)(1-T)) = sum over Q^i T^j; check series and recombination
        let f = Frac::one(&r).div_atom(&[1, 0, 0], 1).unwrap().div_atom(&[0, 1, 0], 1).unwrap();
        let s = f.series(&[0, 1], 2).unwrap();
        assert_eq!(s.len(), 6);
        // (Q - T)/(Q - T) cancels
        let q = LaurentPoly::var(&r, "Q", 1);
        let t = LaurentPoly::var(&r, "T", 1);
        let g = Frac::from_poly(&q - &t).div_difference(&[1, 0, 0], &Q::one(), &[0, 1, 0], &Q::one()).unwrap();
        assert!(g.atoms().is_empty());
        assert_eq!(g.numerator(), &LaurentPoly::one(&r));
    }

    #[test]
    fn negative_atom_is_canonicalized() {
        let r = reg();
        let f = Frac::one(&r).div_atom(&[-1, 0, 0], 1).unwrap();
        // 1/(1 - Q^-1) = -Q/(1 - Q)
        let g = Frac::from_poly(-&LaurentPoly::var(&r, "Q", 1)).div_atom(&[1, 0, 0], 1).unwrap();
        assert!(f.same_value(&g));
        assert_eq!(f.atoms().keys().next().unwrap(), &vec![1, 0, 0]);
    }

    #[test]
    fn specialization_detects_collision() {
        let r = reg();
        let f = Frac::one(&r).div_atom(&[1, 1, 0], 1).unwrap();
        assert!(f.substitute_monomial(&[("T", vec![-1, 0, 0])], &r).is_err());
        let g = Frac::one(&r).div_atom(&[1, 0, 0], 2).unwrap();
        let h = g.substitute_monomial(&[("T", vec![-1, 0, 0])], &r).unwrap();
        assert!(h.same_value(&g));
    }
}
