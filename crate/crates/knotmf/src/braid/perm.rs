use std::fmt;

use serde::{Deserialize, Serialize};

/// Permutation of {1..n} in one-line notation, stored zero-based.
/// Composition is (u∘v)(i) = u(v(i)); `w.right_mul_s(i)` is w∘s_i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From one-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
            v.push(x - 1);
        }
        Some(Permutation(v))
    }

    /// The adjacent transposition s_i = (i, i+1), 1 ≤ i ≤ n−1.
    pub fn s(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} out of range for n = {n}");
        let mut p = Self::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// One-based image of one-based i.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn compose(&self, v: &Permutation) -> Permutation {
        assert_eq!(self.n(), v.n());
        Permutation(v.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// w∘s_i
    pub fn right_mul_s(&self, i: usize) -> Permutation {
        let mut p = self.clone();
        p.0.swap(i - 1, i);
        p
    }

    /// s_i∘w
    pub fn left_mul_s(&self, i: usize) -> Permutation {
        let p = Self::s(i, self.n());
        p.compose(self)
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut l = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// l(w∘s_i) < l(w)
    pub fn is_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// A reduced word w = s_{j1}∘…∘s_{jk}.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..w.n()).find(|&i| w.is_right_descent(i)) {
            word.push(i);
            w = w.right_mul_s(i);
        }
        word.reverse();
        word
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut c = 0;
        for s in 0..self.n() {
            if !seen[s] {
                c += 1;
                let mut i = s;
                while !seen[i] {
                    seen[i] = true;
                    i = self.0[i];
                }
            }
        }
        c
    }

    /// Restriction to {1..n−1}, if n is fixed.
    pub fn restrict(&self) -> Option<Permutation> {
        let n = self.n();
        (n > 0 && self.0[n - 1] == n - 1).then(|| Permutation(self.0[..n - 1].to_vec()))
    }

    /// Embed into S_{n+1} fixing n+1.
    pub fn extend(&self) -> Permutation {
        let mut v = self.0.clone();
        v.push(self.n());
        Permutation(v)
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..n).collect();
        heap_permute(&mut v, n, &mut out);
        out.sort();
        out
    }
}

fn heap_permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation(v.clone()));
        return;
    }
    for i in 0..k {
        heap_permute(v, k - 1, out);
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_roundtrip() {
        for w in Permutation::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut p = Permutation::identity(4);
            for &i in &word {
                p = p.right_mul_s(i);
            }
            assert_eq!(p, w);
        }
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn composition_convention() {
        let s1 = Permutation::s(1, 3);
        let s2 = Permutation::s(2, 3);
        // (s1∘s2)(3) = s1(2) = 1
        assert_eq!(s1.compose(&s2).apply(3), 1);
        assert_eq!(s1.right_mul_s(2), s1.compose(&s2));
        assert_eq!(s2.left_mul_s(1), s1.compose(&s2));
    }
}
