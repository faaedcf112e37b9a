use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{from_braid, Trace};
use crate::braid::BraidWord;
use crate::scalar::{qa_registry, LaurentPoly, Scalar, TermJson};

/// HOMFLYPT value: a Laurent polynomial in a whose coefficients are
/// q-Laurent polynomials over powers of (q − q⁻¹).
#[derive(Clone, PartialEq, Eq)]
pub struct InvariantValue(Scalar);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTerm {
    pub a_exp: i32,
    pub coeff_num: Vec<TermJson>,
    pub denom_s_exp: u32,
}

impl InvariantValue {
    pub fn new(x: Scalar) -> Self {
        assert_eq!(x.u_exp(), 0, "HOMFLYPT value kept a (1 - a^-2) denominator");
        InvariantValue(x)
    }

    pub fn scalar(&self) -> &Scalar {
        &self.0
    }

    /// Per a-power coefficient, each reduced on its own.
    pub fn terms(&self) -> Vec<(i32, Scalar)> {
        let num = self.0.numerator();
        let by_a: BTreeMap<i32, LaurentPoly> = num.collect_var(1);
        by_a.into_iter()
            .map(|(k, c)| (k, Scalar::new(c, self.0.s_exp(), 0)))
            .collect()
    }

    pub fn to_json(&self) -> Vec<InvariantTerm> {
        self.terms()
            .into_iter()
            .map(|(k, c)| InvariantTerm { a_exp: k, coeff_num: c.numerator().to_json(), denom_s_exp: c.s_exp() })
            .collect()
    }

    pub fn from_json(terms: &[InvariantTerm]) -> Result<Self, crate::scalar::ScalarError> {
        let mut acc = Scalar::zero();
        for t in terms {
            let c = LaurentPoly::from_json(qa_registry(), &t.coeff_num)?;
            if c.involves(1) {
                return Err(crate::scalar::ScalarError::Parse("coefficient involves a".into()));
            }
            acc = &acc + &Scalar::new(c.shift(&[0, t.a_exp]), t.denom_s_exp, 0);
        }
        Ok(InvariantValue(acc))
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// P(b) = Dⁿ · a^(−writhe) · tr(b).
pub fn homflypt(b: &BraidWord) -> InvariantValue {
    homflypt_with(b, &mut Trace::new())
}

pub fn homflypt_with(b: &BraidWord, tr: &mut Trace) -> InvariantValue {
    let t = tr.of(&from_braid(b));
    let pre = &Scalar::d().pow(b.strands() as u32) * &Scalar::a(-(b.writhe() as i32));
    InvariantValue::new(&pre * &t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{a_pow, q_pow};

    #[test]
    fn unknot_and_unlink() {
        let u = homflypt(&BraidWord::identity(1));
        assert_eq!(u.scalar(), &Scalar::d());
        let l = homflypt(&BraidWord::identity(2));
        assert_eq!(l.scalar(), &Scalar::d().pow(2));
    }

    #[test]
    fn trefoil() {
        let t = homflypt(&BraidWord::parse("1 1 1", None).unwrap());
        let inner = &(&(&a_pow(-2) * &q_pow(2)) + &(&a_pow(-2) * &q_pow(-2))) - &a_pow(-4);
        let expect = &Scalar::d() * &Scalar::from_poly(inner);
        assert_eq!(t.scalar(), &expect);
    }

    #[test]
    fn figure_eight_matches_table() {
        // tabulated v⁻² − 1 − z² + v² with v = a⁻¹, z = q − q⁻¹
        let t = homflypt(&BraidWord::parse("1 -2 1 -2", None).unwrap());
        let one = LaurentPoly::one(qa_registry());
        let inner = &(&(&a_pow(2) + &a_pow(-2)) + &one) - &(&q_pow(2) + &q_pow(-2));
        assert_eq!(t.scalar(), &(&Scalar::d() * &Scalar::from_poly(inner)));
    }

    #[test]
    fn json_round_trip() {
        let t = homflypt(&BraidWord::parse("1 1 1", None).unwrap());
        let j = t.to_json();
        assert_eq!(InvariantValue::from_json(&j).unwrap(), t);
        assert!(j.iter().all(|x| x.denom_s_exp <= 1));
    }
}
