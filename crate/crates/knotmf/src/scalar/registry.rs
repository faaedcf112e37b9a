use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ScalarError;

/// Grading data attached to one ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct VarWeight {
    pub q: i64,
    pub t: i64,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

impl VarWeight {
    pub fn qt(q: i64, t: i64) -> Self {
        VarWeight { q, t, left: Vec::new(), right: Vec::new() }
    }

    pub fn new(q: i64, t: i64, left: &[i64], right: &[i64]) -> Self {
        VarWeight { q, t, left: left.to_vec(), right: right.to_vec() }
    }

    pub fn zero() -> Self {
        VarWeight::default()
    }

    pub fn add(&self, other: &VarWeight) -> VarWeight {
        VarWeight {
            q: self.q + other.q,
            t: self.t + other.t,
            left: add_vec(&self.left, &other.left),
            right: add_vec(&self.right, &other.right),
        }
    }

    pub fn scale(&self, k: i64) -> VarWeight {
        VarWeight {
            q: self.q * k,
            t: self.t * k,
            left: self.left.iter().map(|x| x * k).collect(),
            right: self.right.iter().map(|x| x * k).collect(),
        }
    }

    pub fn neg(&self) -> VarWeight {
        self.scale(-1)
    }

    pub fn sub(&self, other: &VarWeight) -> VarWeight {
        self.add(&other.neg())
    }

    /// Trailing zeros of the character vectors are not significant.
    pub fn normalized(&self) -> VarWeight {
        let mut w = self.clone();
        trim(&mut w.left);
        trim(&mut w.right);
        w
    }
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarRegistry {
    names: Vec<String>,
    weights: Vec<VarWeight>,
    index: HashMap<String, usize>,
}

impl VarRegistry {
    pub fn new<S: AsRef<str>>(vars: &[(S, VarWeight)]) -> Result<Arc<Self>, ScalarError> {
        let mut reg = VarRegistry { names: Vec::new(), weights: Vec::new(), index: HashMap::new() };
        for (name, w) in vars {
            let name = name.as_ref().to_string();
            if reg.index.contains_key(&name) {
                return Err(ScalarError::DuplicateVariable(name));
            }
            reg.index.insert(name.clone(), reg.names.len());
            reg.names.push(name);
            reg.weights.push(w.clone());
        }
        Ok(Arc::new(reg))
    }

    /// Registry whose variables all carry zero weight.
    pub fn plain(names: &[&str]) -> Arc<Self> {
        let vars: Vec<(&str, VarWeight)> = names.iter().map(|n| (*n, VarWeight::zero())).collect();
        Self::new(&vars).expect("duplicate variable name")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, i: usize) -> &VarWeight {
        &self.weights[i]
    }
}
