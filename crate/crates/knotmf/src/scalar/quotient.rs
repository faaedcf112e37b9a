use std::sync::Arc;

use super::laurent::{Exps, LaurentPoly};
use super::registry::VarRegistry;
use super::ScalarError;

/// One rewrite rule x_i·x_j → rhs, where rhs involves neither x_i nor x_j.
#[derive(Clone, Debug)]
pub struct Relation {
    pub i: usize,
    pub j: usize,
    pub rhs: LaurentPoly,
}

/// Normal forms modulo relations a11·a22 = a12·a21 + c for one or more
/// 2×2 matrices of variables (lex order a11 > a22 > a12 > a21 inside each).
#[derive(Clone, Debug)]
pub struct QuotientReducer {
    reg: Arc<VarRegistry>,
    rels: Vec<Relation>,
}

impl QuotientReducer {
    pub fn new(reg: &Arc<VarRegistry>, rels: Vec<Relation>) -> Result<Self, ScalarError> {
        for r in &rels {
            if r.rhs.involves(r.i) || r.rhs.involves(r.j) {
                return Err(ScalarError::BadRelation);
            }
        }
        // distinct relations must not share leading variables, which keeps the
        // rewrite system confluent
        for (k, r) in rels.iter().enumerate() {
            for s in &rels[k + 1..] {
                if [r.i, r.j].iter().any(|v| *v == s.i || *v == s.j) {
                    return Err(ScalarError::BadRelation);
                }
            }
        }
        Ok(QuotientReducer { reg: reg.clone(), rels })
    }

    /// det(m) = c for the matrix named `m` (variables m11, m12, m21, m22).
    pub fn det_relation(reg: &Arc<VarRegistry>, m: &str, c: LaurentPoly) -> Result<Relation, ScalarError> {
        let idx = |s: &str| reg.index_of(&format!("{m}{s}")).ok_or_else(|| ScalarError::UnknownVariable(format!("{m}{s}")));
        let (i11, i12, i21, i22) = (idx("11")?, idx("12")?, idx("21")?, idx("22")?);
        let rhs = &(&LaurentPoly::var_idx(reg, i12, 1) * &LaurentPoly::var_idx(reg, i21, 1)) + &c;
        Ok(Relation { i: i11, j: i22, rhs })
    }

    /// The SL₂ chart det(m) = 1 for each listed matrix.
    pub fn det1(reg: &Arc<VarRegistry>, mats: &[&str]) -> Result<Self, ScalarError> {
        let rels = mats
            .iter()
            .map(|m| Self::det_relation(reg, m, LaurentPoly::one(reg)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(reg, rels)
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn relations(&self) -> &[Relation] {
        &self.rels
    }

    pub fn reduce(&self, p: &LaurentPoly) -> LaurentPoly {
        let mut cur = p.clone();
        loop {
            let mut changed = false;
            let mut out = LaurentPoly::zero(&self.reg);
            for (e, c) in cur.terms() {
                let hit = self.rels.iter().find(|r| e[r.i] > 0 && e[r.j] > 0);
                match hit {
                    None => out.add_term(e.clone(), c.clone()),
                    Some(r) => {
                        changed = true;
                        let k = e[r.i].min(e[r.j]);
                        let mut rest: Exps = e.clone();
                        rest[r.i] -= k;
                        rest[r.j] -= k;
                        let t = &LaurentPoly::monomial(&self.reg, rest, c.clone()) * &r.rhs.pow(k as u32);
                        out = &out + &t;
                    }
                }
            }
            cur = out;
            if !changed {
                return cur;
            }
        }
    }

    pub fn is_normal(&self, p: &LaurentPoly) -> bool {
        p.terms().keys().all(|e| self.rels.iter().all(|r| e[r.i] <= 0 || e[r.j] <= 0))
    }

    pub fn equal(&self, p: &LaurentPoly, q: &LaurentPoly) -> bool {
        self.reduce(&(p - q)).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<VarRegistry>, QuotientReducer) {
        let reg = VarRegistry::plain(&["a11", "a12", "a21", "a22"]);
        let red = QuotientReducer::det1(&reg, &["a"]).unwrap();
        (reg, red)
    }

    #[test]
    fn relation_itself() {
        let (reg, red) = setup();
        let v = |n| LaurentPoly::var(&reg, n, 1);
        let lhs = &v("a11") * &v("a22");
        let expect = &(&v("a12") * &v("a21")) + &LaurentPoly::one(&reg);
        assert_eq!(red.reduce(&lhs), expect);
        let det = &lhs - &(&v("a12") * &v("a21"));
        assert!(red.reduce(&det).is_one());
        let cube = &lhs * &v("a11");
        assert_eq!(red.reduce(&cube), &(&v("a11") * &(&v("a12") * &v("a21"))) + &v("a11"));
    }
}
