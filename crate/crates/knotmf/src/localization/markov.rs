use std::sync::Arc;

use super::LocalizationError;
use crate::scalar::{Frac, LaurentPoly, VarRegistry, VarWeight};

/// (dim H⁰, dim H¹) of O(d) on ℙ¹.
pub fn p1_cohomology(d: i64) -> (u64, u64) {
    ((d + 1).max(0) as u64, (-d - 1).max(0) as u64)
}

fn q_registry() -> Arc<VarRegistry> {
    VarRegistry::new(&[("q", VarWeight::qt(1, 0))]).unwrap()
}

/// Graded dimensions of H⁰, H¹, H² for σ₁^{±1} on two strands.
#[derive(Clone, Debug)]
pub struct MarkovExample {
    pub sign: i32,
    pub h: [Frac; 3],
}

impl MarkovExample {
    pub fn series(&self, order: i32) -> Result<[LaurentPoly; 3], LocalizationError> {
        let s = |f: &Frac| f.series(&[0], order);
        Ok([s(&self.h[0])?, s(&self.h[1])?, s(&self.h[2])?])
    }
}

/// The free locus is ℙ¹ × ℂ² with tautological bundle O ⊕ O(−1). H^k(σ₁^{±1})
/// is the total cohomology of Λ^k(O ⊕ O(−1)) ⊗ O(d) with d = 0 for σ₁ and
/// d = −1 for σ₁⁻¹, times ℂ[x₁₁] with deg x₁₁ = q².
pub fn markov_example_sigma1(sign: i32) -> Result<MarkovExample, LocalizationError> {
    let reg = q_registry();
    let twist = if sign >= 0 { 0 } else { -1 };
    // line-bundle degrees of Λ^0, Λ^1, Λ^2 of O ⊕ O(−1)
    let wedge: [&[i64]; 3] = [&[0], &[0, -1], &[-1]];
    let free = Frac::one(&reg).div_atom(&[2], 1)?;
    let mut h: Vec<Frac> = Vec::new();
    for degs in wedge {
        let dim: u64 = degs
            .iter()
            .map(|d| {
                let (h0, h1) = p1_cohomology(d + twist);
                h0 + h1
            })
            .sum();
        h.push(free.scale(&crate::scalar::qi(dim as i64)));
    }
    Ok(MarkovExample { sign, h: [h[0].clone(), h[1].clone(), h[2].clone()] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_bundles() {
        assert_eq!(p1_cohomology(0), (1, 0));
        assert_eq!(p1_cohomology(-1), (0, 0));
        assert_eq!(p1_cohomology(-2), (0, 1));
        assert_eq!(p1_cohomology(3), (4, 0));
    }

    #[test]
    fn sigma_and_inverse() {
        let reg = q_registry();
        let free = Frac::one(&reg).div_atom(&[2], 1).unwrap();
        let zero = Frac::zero(&reg);
        let p = markov_example_sigma1(1).unwrap();
        assert_eq!(p.h, [free.clone(), free.clone(), zero.clone()]);
        let m = markov_example_sigma1(-1).unwrap();
        assert_eq!(m.h, [zero, free.clone(), free]);
        // H^{k+1}(σ⁻¹) = H^k(σ)
        assert_eq!(m.h[1], p.h[0]);
        assert_eq!(m.h[2], p.h[1]);
    }
}
