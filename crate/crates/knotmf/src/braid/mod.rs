//! Braid words, closure combinatorics and Jucys–Murphy elements.

mod perm;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("letter 0 is not a generator")]
    ZeroLetter,
    #[error("letter {letter} out of range for {strands} strands")]
    OutOfRange { letter: i32, strands: usize },
    #[error("token {0:?} is not an integer")]
    BadToken(String),
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("index {i} out of range 1..={max}")]
    IndexOutOfRange { i: usize, max: usize },
    #[error("braids need at least one strand")]
    NoStrands,
}

/// Signed generator word on n strands: letter i > 0 is σ_i, i < 0 is σ_|i|⁻¹.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &l in &letters {
            if l == 0 {
                return Err(BraidError::ZeroLetter);
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(BraidError::OutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    /// Whitespace-separated nonzero integers; strands default to 1 + max|letter|.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let l: i32 = tok.parse().map_err(|_| BraidError::BadToken(tok.to_string()))?;
            if l == 0 {
                return Err(BraidError::ZeroLetter);
            }
            letters.push(l);
        }
        let min = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        Self::new(strands.unwrap_or(min), letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// s_{|i1|}∘s_{|i2|}∘… in word order.
    pub fn closure_permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            p = p.right_mul_s(l.unsigned_abs() as usize);
        }
        p
    }

    pub fn component_count(&self) -> usize {
        self.closure_permutation().cycle_count()
    }

    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// Inverse braid: reversed word with flipped signs.
    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Move the first k letters to the end.
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Same word on n+1 strands followed by σ_n^{±1}.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Insert one letter before position `pos`.
    pub fn insert(&self, pos: usize, letter: i32) -> Result<Self, BraidError> {
        let mut letters = self.letters.clone();
        letters.insert(pos.min(letters.len()), letter);
        Self::new(self.strands, letters)
    }

    pub fn to_text(&self) -> String {
        let s: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        s.join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}]", self.strands, self.to_text())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// δ_i = σ_i σ_{i+1} … σ_{n−1} σ_{n−1} … σ_{i+1} σ_i for 1 ≤ i ≤ n−1.
pub fn jm_element(i: usize, n: usize) -> Result<BraidWord, BraidError> {
    if i < 1 || i + 1 > n {
        return Err(BraidError::IndexOutOfRange { i, max: n.saturating_sub(1) });
    }
    let up: Vec<i32> = (i..n).map(|k| k as i32).collect();
    let mut letters = up.clone();
    letters.extend(up.iter().rev());
    BraidWord::new(n, letters)
}

/// Product of δ_1 … δ_{n−1}.
pub fn full_twist(n: usize) -> Result<BraidWord, BraidError> {
    let mut b = BraidWord::identity(n);
    for i in 1..n {
        b = b.concat(&jm_element(i, n)?)?;
    }
    Ok(b)
}

/// δ_1^{b_1} ⋯ δ_{n−1}^{b_{n−1}} on n = len + 1 strands (negative powers use δ⁻¹).
pub fn jm_monomial(exps: &[i32]) -> Result<BraidWord, BraidError> {
    let n = exps.len() + 1;
    let mut b = BraidWord::identity(n);
    for (k, &e) in exps.iter().enumerate() {
        let d = jm_element(k + 1, n)?;
        let d = if e < 0 { d.inverse() } else { d };
        for _ in 0..e.unsigned_abs() {
            b = b.concat(&d)?;
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let b = BraidWord::parse("1 1 1", None).unwrap();
        assert_eq!(b.strands(), 2);
        assert_eq!(b.len(), 3);
        assert_eq!(BraidWord::parse("1 -2 1 -2", Some(3)).unwrap().len(), 4);
        assert_eq!(BraidWord::parse("0", None), Err(BraidError::ZeroLetter));
        assert!(BraidWord::parse("1 x", None).is_err());
        assert!(BraidWord::parse("3", Some(3)).is_err());
    }

    #[test]
    fn writhe_and_components() {
        assert_eq!(BraidWord::parse("1 1 1", None).unwrap().writhe(), 3);
        assert_eq!(BraidWord::parse("1 -2", None).unwrap().writhe(), 0);
        assert_eq!(BraidWord::identity(2).writhe(), 0);
        assert_eq!(BraidWord::parse("1", None).unwrap().component_count(), 1);
        assert_eq!(BraidWord::identity(2).component_count(), 2);
        assert_eq!(BraidWord::parse("1 1", None).unwrap().component_count(), 2);
    }

    #[test]
    fn jm_and_twist() {
        assert_eq!(jm_element(1, 2).unwrap().letters(), &[1, 1]);
        assert_eq!(jm_element(2, 3).unwrap().letters(), &[2, 2]);
        assert_eq!(jm_element(1, 4).unwrap().len(), 6);
        assert!(jm_element(3, 3).is_err());
        assert_eq!(full_twist(2).unwrap().letters(), &[1, 1]);
        assert!(full_twist(1).unwrap().is_empty());
        assert_eq!(full_twist(3).unwrap().writhe(), 6);
    }

    #[test]
    fn word_operations() {
        let b = BraidWord::parse("1 -2 1", None).unwrap();
        assert_eq!(b.rotate(1).letters(), &[-2, 1, 1]);
        assert_eq!(BraidWord::parse("1", None).unwrap().mirror().letters(), &[-1]);
        let c = b.concat(&b.mirror()).unwrap();
        assert_eq!(c.writhe(), b.writhe() + b.mirror().writhe());
    }
}
