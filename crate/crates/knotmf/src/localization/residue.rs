use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{loc_registry, LocalizationError};
use crate::scalar::{pow_q, Exps, Frac, LaurentPoly, RationalFunc1, VarRegistry, Q};

/// c·x^e, a point where poles and fixed points sit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub coeff: Q,
    pub exps: Exps,
}

impl Mono {
    pub fn new(coeff: Q, exps: Exps) -> Self {
        Mono { coeff, exps }
    }

    pub fn unit(exps: Exps) -> Self {
        Mono { coeff: Q::one(), exps }
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::unit(vec![0; reg.len()])
    }

    pub fn times(&self, other: &Mono) -> Mono {
        Mono { coeff: &self.coeff * &other.coeff, exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, k: i32) -> Mono {
        Mono { coeff: pow_q(&self.coeff, k), exps: self.exps.iter().map(|x| x * k).collect() }
    }

    pub fn to_poly(&self, reg: &Arc<VarRegistry>) -> LaurentPoly {
        LaurentPoly::monomial(reg, self.exps.clone(), self.coeff.clone())
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.exps.iter().zip(point).fold(self.coeff.clone(), |acc, (&e, x)| acc * pow_q(x, e))
    }
}

/// coeff · z^shift · Π (z − α)^{e_α}
#[derive(Clone, Debug)]
pub struct Factored {
    pub coeff: Frac,
    pub shift: i32,
    pub factors: BTreeMap<Mono, i32>,
}

impl Factored {
    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Factored { coeff: Frac::one(reg), shift: 0, factors: BTreeMap::new() }
    }

    /// r(z) = z^b (1 + a z⁻¹)
    pub fn jm_weight(b: i32) -> Self {
        let reg = loc_registry();
        let mut f = Self::one(reg);
        f.shift = b - 1;
        let mut e = vec![0; reg.len()];
        e[2] = 1;
        f.factors.insert(Mono::new(-Q::one(), e), 1);
        f
    }

    pub fn with_factor(mut self, alpha: Mono, e: i32) -> Self {
        let slot = self.factors.entry(alpha.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&alpha);
        }
        self
    }

    pub fn times(&self, other: &Factored) -> Factored {
        let mut r = Factored { coeff: &self.coeff * &other.coeff, shift: self.shift + other.shift, factors: self.factors.clone() };
        for (a, &e) in &other.factors {
            r = r.with_factor(a.clone(), e);
        }
        r
    }

    /// Nonzero poles with their orders.
    pub fn poles(&self) -> Vec<(Mono, u32)> {
        self.factors.iter().filter(|(_, &e)| e < 0).map(|(a, &e)| (a.clone(), (-e) as u32)).collect()
    }

    /// Residue at z = β of the integrand coeff·z^shift·Π(z − α)^e dz.
    pub fn residue(&self, beta: &Mono) -> Result<Frac, LocalizationError> {
        let reg = self.coeff.registry().clone();
        let m = match self.factors.get(beta) {
            Some(&e) if e < 0 => (-e) as usize,
            _ => return Ok(Frac::zero(&reg)),
        };
        // regular part expanded in w = z − β up to w^{m−1}
        let mut series = vec![Frac::zero(&reg); m];
        series[0] = Frac::one(&reg);
        let mul = |s: &[Frac], t: &[Frac]| -> Vec<Frac> {
            let mut out = vec![Frac::zero(&reg); m];
            for (i, a) in s.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in t.iter().enumerate().take(m - i) {
                    if !b.is_zero() {
                        out[i + j] = &out[i + j] + &(a * b);
                    }
                }
            }
            out
        };
        // z^shift = β^shift (1 + w/β)^shift
        if self.shift != 0 {
            let t: Vec<Frac> = (0..m)
                .map(|j| Frac::from_poly(beta.pow(self.shift - j as i32).to_poly(&reg)).scale(&binom(self.shift, j)))
                .collect();
            series = mul(&series, &t);
        }
        for (alpha, &e) in &self.factors {
            if alpha == beta {
                continue;
            }
            let d = &beta.to_poly(&reg) - &alpha.to_poly(&reg);
            let t: Vec<Frac> = if e > 0 {
                (0..m).map(|j| if j as i32 <= e { Frac::from_poly(d.pow((e - j as i32) as u32)).scale(&binom(e, j)) } else { Frac::zero(&reg) }).collect()
            } else {
                let inv = invert_difference(beta, alpha, &reg)?;
                let mut pw = Frac::one(&reg);
                for _ in 0..(-e) {
                    pw = &pw * &inv;
                }
                let mut out = Vec::with_capacity(m);
                for j in 0..m {
                    out.push(pw.scale(&binom(e, j)));
                    pw = &pw * &inv;
                }
                out
            };
            series = mul(&series, &t);
        }
        Ok(&self.coeff * &series[m - 1])
    }
}

/// 1/(β − α) for monomials whose difference is an atom times a monomial.
fn invert_difference(beta: &Mono, alpha: &Mono, reg: &Arc<VarRegistry>) -> Result<Frac, LocalizationError> {
    let one = Frac::one(reg);
    if beta.exps == alpha.exps {
        let c = &beta.coeff - &alpha.coeff;
        return Ok(one.div_monomial(&beta.exps, &c));
    }
    one.div_difference(&beta.exps, &beta.coeff, &alpha.exps, &alpha.coeff)
        .map_err(|_| LocalizationError::NotAtomic(format!("{:?} - {:?}", beta, alpha)))
}

/// Generalized binomial coefficient C(s, j) for integer s.
fn binom(s: i32, j: usize) -> Q {
    let mut r = Q::one();
    for i in 0..j {
        r = r * Q::from_integer((s - i as i32).into()) / Q::from_integer(((i + 1) as i64).into());
    }
    r
}

/// Kernel of the push-forward, including the measure dz/z:
/// z/(z − 1) · Π_i ζ(z_i/z) · z⁻¹ = (z − 1)⁻¹ Π_i (z − z_i)(z − QT z_i) / ((z − Q z_i)(z − T z_i)).
pub fn kernel(prior: &[Mono]) -> Factored {
    let reg = loc_registry();
    let (q, t) = (Mono::unit(vec![1, 0, 0]), Mono::unit(vec![0, 1, 0]));
    let qt = q.times(&t);
    let mut k = Factored::one(reg).with_factor(Mono::one(reg), -1);
    for zi in prior {
        k = k
            .with_factor(zi.clone(), 1)
            .with_factor(qt.times(zi), 1)
            .with_factor(q.times(zi), -1)
            .with_factor(t.times(zi), -1);
    }
    k
}

/// Residues of r(z)·kernel at the kernel-side poles, with the poles of r
/// kept outside the contour. Poles without a residue are dropped.
pub fn residue_pushforward(r: &Factored, prior: &[Mono]) -> Result<Vec<(Mono, Frac)>, LocalizationError> {
    let k = kernel(prior);
    let kernel_poles: Vec<Mono> = k.poles().into_iter().map(|(p, _)| p).collect();
    for (p, _) in r.poles() {
        if kernel_poles.contains(&p) {
            return Err(LocalizationError::PoleCollision(format!("{p:?}")));
        }
    }
    let full = r.times(&k);
    let mut out = Vec::new();
    for p in kernel_poles {
        let res = full.residue(&p)?;
        if !res.is_zero() {
            out.push((p, res));
        }
    }
    Ok(out)
}

/// One surviving chain of poles and the product of its residues.
#[derive(Clone, Debug)]
pub struct Chain {
    pub points: Vec<Mono>,
    pub value: Frac,
}

/// Iterated push-forward of Π_j z_j^{b_j}(1 + a z_j⁻¹), outermost variable
/// first. `box_exps[j]` is the exponent attached to the (j+1)-th variable.
pub fn residue_chains(box_exps: &[i32]) -> Result<Vec<Chain>, LocalizationError> {
    let reg = loc_registry();
    let mut chains = vec![Chain { points: Vec::new(), value: Frac::one(reg) }];
    for &b in box_exps {
        let r = Factored::jm_weight(b);
        let mut next = Vec::new();
        for ch in &chains {
            for (p, res) in residue_pushforward(&r, &ch.points)? {
                let mut points = ch.points.clone();
                points.push(p);
                next.push(Chain { points, value: &ch.value * &res });
            }
        }
        chains = next;
    }
    Ok(chains)
}

/// The same iterated residues with Q, T specialized to rationals. The result
/// is the coefficient list in a (lowest power first).
pub fn residue_numeric(box_exps: &[i32], qv: &Q, tv: &Q) -> Result<Vec<Q>, LocalizationError> {
    fn go(box_exps: &[i32], prior: &mut Vec<Q>, acc: Vec<Q>, qv: &Q, tv: &Q, out: &mut Vec<Q>) -> Result<(), LocalizationError> {
        let j = prior.len();
        if j == box_exps.len() {
            if out.len() < acc.len() {
                out.resize(acc.len(), Q::zero());
            }
            for (o, c) in out.iter_mut().zip(acc) {
                *o += c;
            }
            return Ok(());
        }
        let mut k = RationalFunc1::linear(Q::one()).inv()?;
        for zi in prior.iter() {
            let num = &RationalFunc1::linear(zi.clone()) * &RationalFunc1::linear(qv * tv * zi);
            let den = &RationalFunc1::linear(qv * zi) * &RationalFunc1::linear(tv * zi);
            k = &k * &(&num / &den);
        }
        let b = box_exps[j];
        let parts = [&k * &RationalFunc1::z_pow(b), &k * &RationalFunc1::z_pow(b - 1)];
        let mut poles: Vec<Q> = parts.iter().flat_map(|f| f.rational_poles()).filter(|p| !p.is_zero()).collect();
        poles.sort();
        poles.dedup();
        for p in poles {
            let r0 = parts[0].residue(&p)?;
            let r1 = parts[1].residue(&p)?;
            if r0.is_zero() && r1.is_zero() {
                continue;
            }
            // acc · (r0 + a r1)
            let mut next = vec![Q::zero(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i] += c * &r0;
                next[i + 1] += c * &r1;
            }
            prior.push(p);
            go(box_exps, prior, next, qv, tv, out)?;
            prior.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(box_exps, &mut Vec::new(), vec![Q::one()], qv, tv, &mut out)?;
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}

/// Evaluate a coefficient list in a.
pub fn eval_in_a(coeffs: &[Q], a: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * a + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    #[test]
    fn single_box_residue() {
        let reg = loc_registry();
        let res = residue_pushforward(&Factored::jm_weight(3), &[]).unwrap();
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].0, Mono::one(reg));
        let one_plus_a = &LaurentPoly::one(reg) + &LaurentPoly::var(reg, "a", 1);
        assert_eq!(res[0].1, Frac::from_poly(one_plus_a));
    }

    #[test]
    fn two_box_chains_are_q_and_t() {
        let chains = residue_chains(&[0, 1]).unwrap();
        let second: Vec<Exps> = chains.iter().map(|c| c.points[1].exps.clone()).collect();
        assert_eq!(second, vec![vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn no_enclosed_pole_gives_nothing() {
        // r = (z − 1)(z − Q)(z − T) cancels every kernel pole at the second step
        let reg = loc_registry();
        let r = Factored::one(reg)
            .with_factor(Mono::one(reg), 1)
            .with_factor(Mono::unit(vec![1, 0, 0]), 1)
            .with_factor(Mono::unit(vec![0, 1, 0]), 1);
        let res = residue_pushforward(&r, &[Mono::one(reg)]).unwrap();
        assert!(res.is_empty());
    }

    #[test]
    fn collision_is_reported() {
        let reg = loc_registry();
        let r = Factored::one(reg).with_factor(Mono::one(reg), -1);
        assert!(matches!(residue_pushforward(&r, &[]), Err(LocalizationError::PoleCollision(_))));
    }

    #[test]
    fn double_pole_residue() {
        // z^2/(z − 1)^2 dz has residue 2 at z = 1
        let reg = loc_registry();
        let mut f = Factored::one(reg).with_factor(Mono::one(reg), -2);
        f.shift = 2;
        assert_eq!(f.residue(&Mono::one(reg)).unwrap(), Frac::from_poly(LaurentPoly::int(reg, 2)));
    }

    #[test]
    fn numeric_matches_symbolic() {
        let (qv, tv) = (qr(2, 3), qr(5, 7));
        for b in [vec![0, 1], vec![0, 2, 1], vec![0, -1]] {
            let sym: Frac = residue_chains(&b).unwrap().iter().fold(Frac::zero(loc_registry()), |acc, c| &acc + &c.value);
            let num = residue_numeric(&b, &qv, &tv).unwrap();
            for av in [qr(3, 11), qr(-13, 5)] {
                let lhs = sym.eval(&[qv.clone(), tv.clone(), av.clone()]).unwrap();
                assert_eq!(lhs, eval_in_a(&num, &av), "{b:?}");
            }
        }
    }
}
