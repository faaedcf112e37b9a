//! Matrix factorizations: Koszul presentations, D² verification, tensor
//! products, θ-basis changes, row eliminations, rank-2 Chevalley–Eilenberg
//! homology and the two-strand convolution scripts.

mod ce;
mod conv;
mod kclass;
mod koszul;
mod linalg;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use ce::{ce_homology_rank2, extract_weight, gl2_registry, CEPresentation, CePiece, CeResult, Extracted};
pub use conv::{blob_square, conv_registry, convolution_n2, named_x0, twist_to_q, unit_law, w_circ, AuditStep, Convolution, Named, QTwisted, StepStatus};
pub use kclass::{k_convolve, k_registry, k_relation_check, kclass, kclass_named, named_xbar, plus_comb, plus_minus_check, xbar_registry, KComb, KRelation, KTerm, PlusMinus};
pub use koszul::{extend_koszul, koszul, tensor, Certificate, ElimMode, Elimination, GenericMF, KoszulMF, Mat, SquareWitness};

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MfError {
    #[error("Σ aᵢbᵢ − F = {0}")]
    PotentialMismatch(String),
    #[error("rings differ")]
    RingMismatch,
    #[error("row indices must differ and be in range")]
    BadIndex,
    #[error("row {0}: neither entry qualifies for elimination")]
    NotEliminable(usize),
    #[error("entry {0} is not homogeneous")]
    Inhomogeneous(String),
    #[error("derivation is not square-zero on {0}")]
    NotSquareZero(String),
    #[error("row {0}: differential summand has t-weight {1}")]
    WeightMismatch(usize, String),
    #[error("step {step} ({operation}) failed: {witness}")]
    StepFailed { step: usize, operation: String, witness: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// q^k t^l F⟨χ_l, χ_r⟩. Characters are integer vectors in the χᵢ basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedTwist {
    pub q: i64,
    pub t: i64,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

impl GradedTwist {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn chars(left: &[i64], right: &[i64]) -> Self {
        GradedTwist { q: 0, t: 0, left: left.to_vec(), right: right.to_vec() }
    }

    pub fn q_shift(q: i64) -> Self {
        GradedTwist { q, ..Self::default() }
    }

    pub fn compose(&self, other: &GradedTwist) -> GradedTwist {
        GradedTwist {
            q: self.q + other.q,
            t: self.t + other.t,
            left: add(&self.left, &other.left),
            right: add(&self.right, &other.right),
        }
        .normalized()
    }

    pub fn normalized(mut self) -> Self {
        while self.left.last() == Some(&0) {
            self.left.pop();
        }
        while self.right.last() == Some(&0) {
            self.right.pop();
        }
        self
    }
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

/// χ-vector as "χ1+2χ2", "-χ1" or "0".
pub fn format_chi(v: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("χ{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for GradedTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q != 0 {
            write!(f, "q^{} ", self.q)?;
        }
        if self.t != 0 {
            write!(f, "t^{} ", self.t)?;
        }
        write!(f, "⟨{},{}⟩", format_chi(&self.left), format_chi(&self.right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_composition() {
        let a = GradedTwist::chars(&[0, 1], &[1]);
        let b = GradedTwist::chars(&[0, -1], &[-1, 1]);
        assert_eq!(a.compose(&b), GradedTwist::chars(&[], &[0, 1]));
        assert_eq!(a.compose(&GradedTwist::none()), a);
        assert_eq!(format!("{}", GradedTwist::chars(&[1], &[-1, 2])), "⟨χ1,-χ1+2χ2⟩");
    }
}
