//! Localization characters of Jucys–Murphy braids: sums over standard
//! tableaux with the ζ-kernel, iterated residues, and the ℙ¹ cohomology of
//! the two-strand Markov move.

mod markov;
mod residue;
mod tableau;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use markov::{markov_example_sigma1, p1_cohomology, MarkovExample};
pub use residue::{eval_in_a, kernel, residue_chains, residue_numeric, residue_pushforward, Chain, Factored, Mono};
pub use tableau::{syt_all, syt_enumerate, Partition, StandardTableau};

use crate::braid::{jm_monomial, BraidError, BraidWord};
use crate::hecke::{homflypt, InvariantValue};
use crate::scalar::{format_q, qa_registry, Frac, LaurentPoly, ScalarError, VarRegistry, VarWeight, Q};

pub const RESIDUE_MAX_STRANDS: usize = 4;
pub const SYT_MAX_STRANDS: usize = 8;
pub const DEFAULT_ORDER: i32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalizationError {
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("cells do not form a standard tableau")]
    InvalidTableau,
    #[error("{mode} mode supports at most {max} strands, got {n}")]
    Guard { mode: &'static str, n: usize, max: usize },
    #[error("pole of r(z) collides with a kernel pole at {0}")]
    PoleCollision(String),
    #[error("difference {0} is not invertible with binomial denominators")]
    NotAtomic(String),
    #[error("residue and tableau modes disagree for b = {0:?}")]
    ModeDisagreement(Vec<i32>),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// ℚ[Q^±, T^±, a^±] with Q = q², T = t²/q².
pub fn loc_registry() -> &'static Arc<VarRegistry> {
    static REG: OnceLock<Arc<VarRegistry>> = OnceLock::new();
    REG.get_or_init(|| {
        VarRegistry::new(&[("Q", VarWeight::qt(2, 0)), ("T", VarWeight::qt(-2, 2)), ("a", VarWeight::zero())]).unwrap()
    })
}

const VQ: usize = 0;
const VT: usize = 1;
const VA: usize = 2;

/// ζ(x) = (1 − x)(1 − QTx) / ((1 − Qx)(1 − Tx)) at a monomial x.
pub fn zeta(x: &[i32]) -> Result<Frac, LocalizationError> {
    let reg = loc_registry();
    let sh = |d: [i32; 3]| -> Vec<i32> { x.iter().zip(d).map(|(a, b)| a + b).collect() };
    let one = Frac::one(reg);
    let num = one.mul_atom(x).mul_atom(&sh([1, 1, 0]));
    Ok(num.div_atom(&sh([1, 0, 0]), 1)?.div_atom(&sh([0, 1, 0]), 1)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Residue,
    Syt,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Residue => "residue",
            Mode::Syt => "syt",
        }
    }
}

/// Exponent of the variable for box label k (2 ≤ k ≤ n): δ_i = σ_i⋯σ_{n−1}²⋯σ_i
/// acts on the last strands, so box k carries the exponent of δ_{n+1−k}.
pub fn box_exponents(b: &[i32]) -> Vec<i32> {
    let mut e = vec![0];
    e.extend(b.iter().rev());
    e
}

/// (1 + a) for box 1 times Π_{k≥2} z_k^{e_k}(1 + a/z_k)/(1 − 1/z_k) Π_{i<k} ζ(z_i/z_k),
/// where the factors vanishing at the tableau (the consumed pole) are dropped.
pub fn syt_term(t: &StandardTableau, box_exps: &[i32]) -> Result<Frac, LocalizationError> {
    let reg = loc_registry();
    let n = t.size();
    let z = |i: usize| -> Vec<i32> { vec![t.coarm(i) as i32, t.coleg(i) as i32, 0] };
    let one_plus_a = &LaurentPoly::one(reg) + &LaurentPoly::var(reg, "a", 1);
    let mut acc = Frac::from_poly(one_plus_a);
    for k in 2..=n {
        let zk = z(k);
        let e = box_exps[k - 1];
        let mut w = LaurentPoly::monomial(reg, zk.clone(), Q::one());
        w = &w.powi(e)? * &(&LaurentPoly::one(reg) + &LaurentPoly::monomial(reg, vec![-zk[0], -zk[1], 1], Q::one()));
        acc = acc.mul_poly(&w).div_atom(&[-zk[0], -zk[1], 0], 1)?;
        let (rk, ck) = t.cell(k);
        for i in 1..k {
            let (ri, ci) = t.cell(i);
            let x = [ci as i32 - ck as i32, ri as i32 - rk as i32, 0];
            let left = ri == rk && ci + 1 == ck;
            let below = ci == ck && ri + 1 == rk;
            let diag = ri + 1 == rk && ci + 1 == ck;
            acc = acc.mul_atom(&x);
            if !diag {
                acc = acc.mul_atom(&[x[0] + 1, x[1] + 1, 0]);
            }
            if !left {
                acc = acc.div_atom(&[x[0] + 1, x[1], 0], 1)?;
            }
            if !below {
                acc = acc.div_atom(&[x[0], x[1] + 1, 0], 1)?;
            }
        }
    }
    Ok(acc)
}

/// The free factor 1/(1 − Q)^n of the unreduced theory.
fn free_factor(f: &Frac, n: usize) -> Result<Frac, LocalizationError> {
    Ok(f.div_atom(&[1, 0, 0], n as u32)?)
}

/// Exact (a, Q, T)-character of the closure of δ^b, with its truncation order.
#[derive(Clone, Debug)]
pub struct Character {
    pub strands: usize,
    pub b: Vec<i32>,
    pub mode: Mode,
    pub value: Frac,
    pub order: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    #[serde(rename = "Q_exp")]
    pub q_exp: i32,
    #[serde(rename = "T_exp")]
    pub t_exp: i32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub a_exp: i32,
    pub series: Vec<SeriesTerm>,
    pub truncation_order: i32,
}

impl Character {
    /// Power series in Q, T (total degree ≤ order), grouped by a-degree.
    pub fn series(&self) -> Result<BTreeMap<i32, LaurentPoly>, LocalizationError> {
        let s = self.value.series(&[VQ, VT], self.order)?;
        Ok(s.collect_var(VA))
    }

    pub fn to_json(&self) -> Result<Vec<CharacterJson>, LocalizationError> {
        Ok(self
            .series()?
            .into_iter()
            .map(|(a_exp, p)| CharacterJson {
                a_exp,
                series: p
                    .terms()
                    .iter()
                    .map(|(e, c)| SeriesTerm { q_exp: e[VQ], t_exp: e[VT], coeff: format_q(c) })
                    .collect(),
                truncation_order: self.order,
            })
            .collect())
    }

    pub fn from_json(terms: &[CharacterJson]) -> Result<LaurentPoly, LocalizationError> {
        let reg = loc_registry();
        let mut p = LaurentPoly::zero(reg);
        for t in terms {
            for s in &t.series {
                p.add_term(vec![s.q_exp, s.t_exp, t.a_exp], crate::scalar::parse_q(&s.coeff)?);
            }
        }
        Ok(p)
    }
}

fn check_guard(mode: Mode, n: usize) -> Result<(), LocalizationError> {
    let max = match mode {
        Mode::Residue => RESIDUE_MAX_STRANDS,
        Mode::Syt => SYT_MAX_STRANDS,
    };
    if n > max {
        return Err(LocalizationError::Guard { mode: mode.name(), n, max });
    }
    Ok(())
}

/// Residue-mode sum over pole chains, before the free factor.
pub fn residue_sum(b: &[i32]) -> Result<Frac, LocalizationError> {
    check_guard(Mode::Residue, b.len() + 1)?;
    let chains = residue_chains(&box_exponents(b))?;
    Ok(chains.iter().fold(Frac::zero(loc_registry()), |acc, c| &acc + &c.value))
}

/// Tableau-mode sum, before the free factor.
pub fn syt_sum(b: &[i32]) -> Result<Frac, LocalizationError> {
    let n = b.len() + 1;
    check_guard(Mode::Syt, n)?;
    let e = box_exponents(b);
    let mut acc = Frac::zero(loc_registry());
    for t in syt_all(n) {
        acc = &acc + &syt_term(&t, &e)?;
    }
    Ok(acc)
}

pub fn superpoly_jm(b: &[i32], mode: Mode, order: i32) -> Result<Character, LocalizationError> {
    let n = b.len() + 1;
    let sum = match mode {
        Mode::Residue => residue_sum(b)?,
        Mode::Syt => syt_sum(b)?,
    };
    Ok(Character { strands: n, b: b.to_vec(), mode, value: free_factor(&sum, n)?, order })
}

/// The braid δ_1^{b_1}⋯δ_{n−1}^{b_{n−1}}.
pub fn jm_braid(b: &[i32]) -> Result<BraidWord, LocalizationError> {
    if b.is_empty() {
        return Ok(BraidWord::identity(1));
    }
    Ok(jm_monomial(b)?)
}

/// Calibration monomial per strand, fitted once on the unknot.
pub fn calibration_per_strand() -> LaurentPoly {
    LaurentPoly::monomial(qa_registry(), vec![1, 1], -Q::one())
}

/// (−a q)^n a^{−writhe}: the factor turning an anti-diagonal character into
/// the HOMFLYPT value.
pub fn calibration(n: usize, writhe: i64) -> LaurentPoly {
    calibration_per_strand().pow(n as u32).shift(&[0, -(writhe as i32)])
}

/// Specialize T = Q⁻¹, Q = q², a ↦ −a⁻², landing in ℚ(q, a).
pub fn anti_diagonal(f: &Frac) -> Result<Frac, LocalizationError> {
    let reg = qa_registry();
    let num = LaurentPoly::from_terms(
        reg,
        f.numerator().terms().iter().map(|(e, c)| {
            let q = 2 * (e[VQ] - e[VT]);
            let c = if e[VA] % 2 == 0 { c.clone() } else { -c.clone() };
            (vec![q, -2 * e[VA]], c)
        }),
    );
    let mut r = Frac::from_poly(num);
    for (m, &k) in f.atoms() {
        if m[VA] != 0 {
            return Err(LocalizationError::NotAtomic(format!("atom {m:?} involves a")));
        }
        let e = [2 * (m[VQ] - m[VT]), 0];
        if e == [0, 0] {
            return Err(ScalarError::DivisionByZero.into());
        }
        r = r.div_atom(&e, k)?;
    }
    Ok(r)
}

/// HOMFLYPT value as a fraction with (1 − q²) atoms.
pub fn invariant_as_frac(p: &InvariantValue) -> Result<Frac, LocalizationError> {
    let s = p.scalar();
    // 1/(q − q⁻¹) = −q / (1 − q²)
    let k = s.s_exp();
    let mono = LaurentPoly::monomial(qa_registry(), vec![k as i32, 0], if k % 2 == 0 { Q::one() } else { -Q::one() });
    Ok(Frac::from_poly(s.numerator() * &mono).div_atom(&[2, 0], k)?)
}

/// Calibrated anti-diagonal character of δ^b, to be compared with homflypt.
pub fn calibrated_homflypt(ch: &Character) -> Result<Frac, LocalizationError> {
    let braid = jm_braid(&ch.b)?;
    let spec = anti_diagonal(&ch.value)?;
    Ok(spec.mul_poly(&calibration(ch.strands, braid.writhe())))
}

/// Seeded rationals; two-prime quotients keep Q and T multiplicatively
/// independent, so specializations stay generic.
pub fn sample_points(seed: u64, count: usize) -> Vec<(Q, Q)> {
    const PRIMES: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut idx: Vec<usize> = Vec::new();
            while idx.len() < 4 {
                let i = rng.gen_range(0..PRIMES.len());
                if !idx.contains(&i) {
                    idx.push(i);
                }
            }
            (Q::new(PRIMES[idx[0]].into(), PRIMES[idx[1]].into()), Q::new(PRIMES[idx[2]].into(), PRIMES[idx[3]].into()))
        })
        .collect()
}

/// Seeded rational points away from 0 and ±1.
pub fn sample_rationals(seed: u64, count: usize) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=9);
        let x = Q::new(n.into(), d.into());
        if !x.is_zero() && x != Q::one() && x != -Q::one() && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub b: Vec<i32>,
    pub symbolic_agree: bool,
    pub numeric_points: usize,
    pub numeric_agree: bool,
    pub chains: usize,
    pub tableaux: usize,
    pub chains_are_tableaux: bool,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.symbolic_agree && self.numeric_agree && self.chains == self.tableaux && self.chains_are_tableaux
    }
}

/// Residue mode (symbolic and at seeded points) against tableau mode, plus
/// the check that surviving chains are exactly the tableau growth sequences.
pub fn cross_check_modes(b: &[i32], seed: u64, points: usize) -> Result<CrossCheck, LocalizationError> {
    let n = b.len() + 1;
    let e = box_exponents(b);
    let chains = residue_chains(&e)?;
    let res = chains.iter().fold(Frac::zero(loc_registry()), |acc, c| &acc + &c.value);
    let syt = syt_sum(b)?;
    let tableaux = syt_all(n);
    let chains_are_tableaux = chains.iter().all(|c| {
        let cells: Option<Vec<(usize, usize)>> = c
            .points
            .iter()
            .map(|m| (m.coeff.is_one() && m.exps[VA] == 0 && m.exps[VQ] >= 0 && m.exps[VT] >= 0).then(|| (m.exps[VT] as usize, m.exps[VQ] as usize)))
            .collect();
        cells.is_some_and(|cells| StandardTableau::from_cells(cells).is_ok())
    });
    let mut numeric_agree = true;
    let avals = sample_rationals(seed ^ 0x5eed, 2);
    for (qv, tv) in sample_points(seed, points) {
        let num = residue_numeric(&e, &qv, &tv)?;
        for av in &avals {
            let x = syt.eval(&[qv.clone(), tv.clone(), av.clone()])?;
            if x != eval_in_a(&num, av) {
                numeric_agree = false;
            }
        }
    }
    Ok(CrossCheck {
        b: b.to_vec(),
        symbolic_agree: res.same_value(&syt),
        numeric_points: points,
        numeric_agree,
        chains: chains.len(),
        tableaux: tableaux.len(),
        chains_are_tableaux,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomflyCheck {
    pub b: Vec<i32>,
    pub exact: bool,
    pub points: Vec<String>,
    pub points_agree: bool,
    pub series_order: i32,
    pub series_agree: bool,
}

impl HomflyCheck {
    pub fn passed(&self) -> bool {
        self.exact && self.points_agree && self.series_agree
    }
}

/// Compare the calibrated anti-diagonal character with homflypt of δ^b:
/// symbolically, at seeded rational q-points (with seeded a-values), and as
/// q-series to the given order.
pub fn homflypt_cross_check(b: &[i32], seed: u64, points: usize, order: i32) -> Result<HomflyCheck, LocalizationError> {
    let ch = superpoly_jm(b, Mode::Residue, order)?;
    let lhs = calibrated_homflypt(&ch)?;
    let rhs = invariant_as_frac(&homflypt(&jm_braid(b)?))?;
    let qs = sample_rationals(seed, points);
    let avals = sample_rationals(seed.wrapping_add(1), points);
    let mut agree = true;
    for (q0, a0) in qs.iter().zip(&avals) {
        if lhs.eval(&[q0.clone(), a0.clone()])? != rhs.eval(&[q0.clone(), a0.clone()])? {
            agree = false;
        }
    }
    let ls = lhs.series(&[0], order)?;
    let rs = rhs.series(&[0], order)?;
    Ok(HomflyCheck {
        b: b.to_vec(),
        exact: lhs.same_value(&rhs),
        points: qs.iter().map(format_q).collect(),
        points_agree: agree,
        series_order: order,
        series_agree: ls == rs,
    })
}

/// Per tableau, the term of b + M·(1,…,1) equals the term of b times the
/// det(B)^M character Π_i z_i^M. `det_char` lets callers swap in a wrong
/// character as a negative control.
pub fn full_twist_shift_check_with(b: &[i32], m: i32, det_char: impl Fn(&StandardTableau, i32) -> LaurentPoly) -> Result<bool, LocalizationError> {
    let n = b.len() + 1;
    check_guard(Mode::Syt, n)?;
    let shifted: Vec<i32> = b.iter().map(|x| x + m).collect();
    let (e0, e1) = (box_exponents(b), box_exponents(&shifted));
    for t in syt_all(n) {
        let lhs = syt_term(&t, &e1)?;
        let rhs = syt_term(&t, &e0)?.mul_poly(&det_char(&t, m));
        if !lhs.same_value(&rhs) {
            return Ok(false);
        }
    }
    // the same statement chain by chain in residue mode
    if n <= RESIDUE_MAX_STRANDS {
        let c0 = residue_chains(&e0)?;
        let c1 = residue_chains(&e1)?;
        if c0.len() != c1.len() {
            return Ok(false);
        }
        for (x, y) in c0.iter().zip(&c1) {
            let t = match chain_tableau(x) {
                Some(t) => t,
                None => return Ok(false),
            };
            if x.points != y.points || !y.value.same_value(&x.value.mul_poly(&det_char(&t, m))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn full_twist_shift_check(b: &[i32], m: i32) -> Result<bool, LocalizationError> {
    full_twist_shift_check_with(b, m, det_character)
}

/// Π_i z_i^M at the fixed point of a tableau.
pub fn det_character(t: &StandardTableau, m: i32) -> LaurentPoly {
    let (mut q, mut tt) = (0, 0);
    for &(r, c) in t.cells() {
        q += c as i32;
        tt += r as i32;
    }
    LaurentPoly::monomial(loc_registry(), vec![q * m, tt * m, 0], Q::one())
}

fn chain_tableau(c: &Chain) -> Option<StandardTableau> {
    let cells: Option<Vec<(usize, usize)>> = c
        .points
        .iter()
        .map(|m| (m.exps[VQ] >= 0 && m.exps[VT] >= 0).then(|| (m.exps[VT] as usize, m.exps[VQ] as usize)))
        .collect();
    StandardTableau::from_cells(cells?).ok()
}

/// Parse "b1,b2,..." (empty for one strand).
pub fn parse_jm(text: &str) -> Result<Vec<i32>, LocalizationError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i32>().map_err(|_| ScalarError::Parse(format!("bad exponent {s:?}")).into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    fn poly(s: &[(i32, i32, i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(loc_registry(), s.iter().map(|&(q, t, a, c)| (vec![q, t, a], qi(c))))
    }

    #[test]
    fn zeta_basics() {
        // ζ at x = 0 is 1; the numerator vanishes at x = 1
        let z = zeta(&[1, 0, 0]).unwrap();
        assert!(z.numerator().eval(&[qi(1), qi(5), qi(2)]).unwrap().is_zero());
        assert!(zeta(&[0, 0, 0]).unwrap().is_zero());
    }

    #[test]
    fn unknot_character() {
        let ch = superpoly_jm(&[], Mode::Syt, 4).unwrap();
        let expect = Frac::from_poly(poly(&[(0, 0, 0, 1), (0, 0, 1, 1)])).div_atom(&[1, 0, 0], 1).unwrap();
        assert_eq!(ch.value, expect);
        let s = ch.series().unwrap();
        assert_eq!(s[&0], poly(&[(0, 0, 0, 1), (1, 0, 0, 1), (2, 0, 0, 1), (3, 0, 0, 1), (4, 0, 0, 1)]));
    }

    #[test]
    fn hopf_character_and_homflypt() {
        let ch = superpoly_jm(&[1], Mode::Residue, 12).unwrap();
        // (1 + a)(Q + T − QT + a) / (1 − Q)^2
        let num = &poly(&[(0, 0, 0, 1), (0, 0, 1, 1)]) * &poly(&[(1, 0, 0, 1), (0, 1, 0, 1), (1, 1, 0, -1), (0, 0, 1, 1)]);
        assert_eq!(ch.value, Frac::from_poly(num).div_atom(&[1, 0, 0], 2).unwrap());
        let c = homflypt_cross_check(&[1], 3, 5, 12).unwrap();
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn three_strand_calibration_holds() {
        for b in [[1, 0], [0, 1], [1, 1]] {
            let c = homflypt_cross_check(&b, 11, 2, 6).unwrap();
            assert!(c.exact, "{b:?}");
        }
    }

    #[test]
    fn modes_agree_small() {
        for b in [vec![2], vec![1, 2]] {
            let c = cross_check_modes(&b, 1, 2).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn full_twist_shift() {
        assert!(full_twist_shift_check(&[1], 1).unwrap());
        assert!(full_twist_shift_check(&[1], 0).unwrap());
        let wrong = |t: &StandardTableau, m: i32| det_character(t, m + 1);
        assert!(!full_twist_shift_check_with(&[1], 1, wrong).unwrap());
    }

    #[test]
    fn guards() {
        assert!(matches!(superpoly_jm(&[1; 5], Mode::Residue, 4), Err(LocalizationError::Guard { .. })));
        assert!(matches!(superpoly_jm(&[1; 8], Mode::Syt, 4), Err(LocalizationError::Guard { .. })));
    }

    #[test]
    fn json_round_trip() {
        let ch = superpoly_jm(&[2], Mode::Syt, 6).unwrap();
        let j = ch.to_json().unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: Vec<CharacterJson> = serde_json::from_str(&text).unwrap();
        let p = Character::from_json(&back).unwrap();
        assert_eq!(p, ch.value.series(&[VQ, VT], 6).unwrap());
    }
}
