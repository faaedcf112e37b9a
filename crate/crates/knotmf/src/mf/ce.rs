use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::linalg::{cokernel_complement, kernel};
use super::MfError;
use crate::scalar::{Exps, LaurentPoly, VarRegistry, VarWeight, Q};

/// Polynomial ring on the registry's variables with a derivation δ given on
/// generators. Left/right weights of the registry are the left and middle
/// torus characters.
#[derive(Clone, Debug)]
pub struct CEPresentation {
    pub reg: Arc<VarRegistry>,
    pub delta: Vec<LaurentPoly>,
    pub bound: usize,
}

impl CEPresentation {
    pub fn new(reg: &Arc<VarRegistry>, images: &[(&str, LaurentPoly)], bound: usize) -> Result<Self, MfError> {
        let mut delta = vec![LaurentPoly::zero(reg); reg.len()];
        for (n, p) in images {
            let i = reg.index_of(n).ok_or_else(|| MfError::Scalar(crate::scalar::ScalarError::UnknownVariable(n.to_string())))?;
            delta[i] = p.clone();
        }
        let p = CEPresentation { reg: reg.clone(), delta, bound };
        for i in 0..reg.len() {
            let x = LaurentPoly::var_idx(reg, i, 1);
            if !p.apply(&p.apply(&x)).is_zero() {
                return Err(MfError::NotSquareZero(reg.name(i).to_string()));
            }
        }
        Ok(p)
    }

    /// δ on the n = 2 unipotent radical: δ a_{i2} = −a_{i1}, δ a_{i1} = 0.
    pub fn delta2(bound: usize) -> Self {
        let reg = gl2_registry("a");
        let v = |n: &str| LaurentPoly::var(&reg, n, 1);
        Self::new(&reg, &[("a12", -v("a11")), ("a22", -v("a21"))], bound).unwrap()
    }

    pub fn zero(reg: &Arc<VarRegistry>, bound: usize) -> Self {
        CEPresentation { reg: reg.clone(), delta: vec![LaurentPoly::zero(reg); reg.len()], bound }
    }

    /// Leibniz extension of δ.
    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.reg);
        for (e, c) in p.terms() {
            for (i, &k) in e.iter().enumerate() {
                if k == 0 || self.delta[i].is_zero() {
                    continue;
                }
                let mut rest = e.clone();
                rest[i] -= 1;
                let m = LaurentPoly::monomial(&self.reg, rest, c * Q::from_integer(k.into()));
                out = &out + &(&m * &self.delta[i]);
            }
        }
        out
    }

    /// Weight change of δ (constant on generators it moves).
    fn shift(&self) -> VarWeight {
        for (i, d) in self.delta.iter().enumerate() {
            if let Some(e) = d.terms().keys().next() {
                return d.weight_of_exps(e).sub(self.reg.weight(i)).normalized();
            }
        }
        VarWeight::zero()
    }
}

/// Registry m11, m12, m21, m22 with m_ij of left weight χ_i and middle weight −χ_j.
pub fn gl2_registry(m: &str) -> Arc<VarRegistry> {
    let e = |i: usize| if i == 1 { vec![1, 0] } else { vec![0, 1] };
    let vars: Vec<(String, VarWeight)> = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .map(|&(i, j)| {
            let r: Vec<i64> = e(j).iter().map(|x| -x).collect();
            (format!("{m}{i}{j}"), VarWeight::new(0, 0, &e(i), &r).normalized())
        })
        .collect();
    VarRegistry::new(&vars).unwrap()
}

/// One graded piece of H⁰ or H¹.
#[derive(Clone, Debug, Serialize)]
pub struct CePiece {
    pub degree: usize,
    pub left: Vec<i64>,
    pub middle: Vec<i64>,
    pub basis: Vec<String>,
    #[serde(skip)]
    pub polys: Vec<LaurentPoly>,
}

#[derive(Clone, Debug)]
pub struct CeResult {
    pub shift: VarWeight,
    pub h0: Vec<CePiece>,
    pub h1: Vec<CePiece>,
}

impl CeResult {
    pub fn h0_dim(&self, degree: usize) -> usize {
        self.h0.iter().filter(|p| p.degree == degree).map(|p| p.polys.len()).sum()
    }

    pub fn h1_dim(&self, degree: usize) -> usize {
        self.h1.iter().filter(|p| p.degree == degree).map(|p| p.polys.len()).sum()
    }
}

fn monomials(n: usize, k: usize) -> Vec<Exps> {
    fn go(i: usize, n: usize, rest: usize, cur: &mut Vec<i32>, out: &mut Vec<Exps>) {
        if i + 1 == n {
            cur.push(rest as i32);
            out.push(cur.clone().into());
            cur.pop();
            return;
        }
        for e in (0..=rest).rev() {
            cur.push(e as i32);
            go(i + 1, n, rest - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Kernel and cokernel of δ on each (degree, weight) piece up to the bound.
pub fn ce_homology_rank2(p: &CEPresentation) -> Result<CeResult, MfError> {
    let reg = &p.reg;
    let shift = p.shift();
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    for k in 0..=p.bound {
        let mut by_weight: BTreeMap<(Vec<i64>, Vec<i64>), Vec<Exps>> = BTreeMap::new();
        for e in monomials(reg.len(), k) {
            let w = LaurentPoly::zero(reg).weight_of_exps(&e).normalized();
            by_weight.entry((w.left, w.right)).or_default().push(e);
        }
        for ((left, right), src) in &by_weight {
            let tw = VarWeight::new(0, 0, left, right).add(&shift).normalized();
            let empty = Vec::new();
            let tgt = by_weight.get(&(tw.left.clone(), tw.right.clone())).unwrap_or(&empty);
            // δ : src → tgt, columns indexed by src
            let mut m = vec![vec![Q::zero(); src.len()]; tgt.len()];
            for (c, e) in src.iter().enumerate() {
                let img = p.apply(&LaurentPoly::monomial(reg, e.clone(), Q::from_integer(1.into())));
                for (te, tc) in img.terms() {
                    let r = tgt.iter().position(|x| x == te).ok_or_else(|| MfError::Inhomogeneous(img.to_string()))?;
                    m[r][c] = tc.clone();
                }
            }
            let ker = if tgt.is_empty() {
                (0..src.len()).map(|c| (0..src.len()).map(|r| if r == c { Q::from_integer(1.into()) } else { Q::zero() }).collect()).collect()
            } else {
                kernel(&m, src.len())
            };
            let polys: Vec<LaurentPoly> = ker
                .iter()
                .map(|v| LaurentPoly::from_terms(reg, src.iter().cloned().zip(v.iter().cloned())))
                .collect();
            if !polys.is_empty() {
                h0.push(piece(k, left, right, polys));
            }
        }
        // cokernels, indexed by target weight
        let inv = shift.neg();
        for ((left, right), tgt) in &by_weight {
            let sw = VarWeight::new(0, 0, left, right).add(&inv).normalized();
            let empty = Vec::new();
            let src = by_weight.get(&(sw.left.clone(), sw.right.clone())).unwrap_or(&empty);
            let mut m = vec![vec![Q::zero(); src.len()]; tgt.len()];
            for (c, e) in src.iter().enumerate() {
                let img = p.apply(&LaurentPoly::monomial(reg, e.clone(), Q::from_integer(1.into())));
                for (te, tc) in img.terms() {
                    if let Some(r) = tgt.iter().position(|x| x == te) {
                        m[r][c] = tc.clone();
                    }
                }
            }
            let keep = if src.is_empty() { (0..tgt.len()).collect() } else { cokernel_complement(&m, tgt.len()) };
            let polys: Vec<LaurentPoly> = keep.iter().map(|&r| LaurentPoly::monomial(reg, tgt[r].clone(), Q::from_integer(1.into()))).collect();
            if !polys.is_empty() {
                h1.push(piece(k, left, right, polys));
            }
        }
    }
    Ok(CeResult { shift, h0, h1 })
}

fn piece(degree: usize, left: &[i64], middle: &[i64], polys: Vec<LaurentPoly>) -> CePiece {
    CePiece { degree, left: left.to_vec(), middle: middle.to_vec(), basis: polys.iter().map(|p| p.to_string()).collect(), polys }
}

/// (H* ⊗ μ)^T: H⁰ classes of middle weight −μ, and H¹ classes whose middle
/// weight plus that of 𝔫* (the negated δ-shift) is −μ.
#[derive(Clone, Debug, Serialize)]
pub struct Extracted {
    pub mu: Vec<i64>,
    pub h0: Vec<CePiece>,
    pub h1: Vec<CePiece>,
    pub stable: bool,
}

pub fn extract_weight(p: &CEPresentation, mu: &[i64]) -> Result<Extracted, MfError> {
    let pick = |r: &CeResult| {
        let target = VarWeight::new(0, 0, &[], mu).neg().normalized().right;
        let nstar = r.shift.neg();
        let h0: Vec<CePiece> = r.h0.iter().filter(|c| c.middle == target).cloned().collect();
        let h1: Vec<CePiece> = r
            .h1
            .iter()
            .filter(|c| VarWeight::new(0, 0, &[], &c.middle).add(&VarWeight::new(0, 0, &[], &nstar.right)).normalized().right == target)
            .cloned()
            .collect();
        (h0, h1)
    };
    let (h0, h1) = pick(&ce_homology_rank2(p)?);
    let mut q = p.clone();
    q.bound += 1;
    let (g0, g1) = pick(&ce_homology_rank2(&q)?);
    let stable = g0.len() == h0.len() && g1.len() == h1.len();
    Ok(Extracted { mu: mu.to_vec(), h0, h1, stable })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta2_invariants() {
        let p = CEPresentation::delta2(4);
        let r = ce_homology_rank2(&p).unwrap();
        for k in 0..=4 {
            // spanned by a11^i a21^j det^m with i + j + 2m = k
            let want = (0..=k / 2).map(|m| k - 2 * m + 1).sum::<usize>();
            assert_eq!(r.h0_dim(k), want, "degree {k}");
            assert_eq!(r.h1_dim(k), want, "degree {k}");
        }
    }

    #[test]
    fn zero_derivation() {
        let reg = gl2_registry("a");
        let r = ce_homology_rank2(&CEPresentation::zero(&reg, 2)).unwrap();
        assert_eq!(r.h0_dim(2), 10);
        assert_eq!(r.h1_dim(2), 10);
    }

    #[test]
    fn weight_chi1_part() {
        let e = extract_weight(&CEPresentation::delta2(4), &[1]).unwrap();
        let all: Vec<String> = e.h0.iter().flat_map(|c| c.basis.clone()).collect();
        assert_eq!(all.len(), 2);
        assert!(all.contains(&"a11".to_string()) && all.contains(&"a21".to_string()));
        assert!(e.h1.is_empty());
        assert!(e.stable);
    }

    #[test]
    fn not_square_zero() {
        let reg = VarRegistry::plain(&["u", "v"]);
        let v = |n: &str| LaurentPoly::var(&reg, n, 1);
        assert!(CEPresentation::new(&reg, &[("u", v("v")), ("v", v("u"))], 2).is_err());
    }
}
