use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{GradedTwist, MfError};
use crate::scalar::{LaurentPoly, QuotientReducer, Relation, VarRegistry, Q};

pub type Mat = Vec<Vec<LaurentPoly>>;

fn same_ring(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn reduce_with(red: Option<&QuotientReducer>, p: &LaurentPoly) -> LaurentPoly {
    match red {
        Some(r) => r.reduce(p),
        None => p.clone(),
    }
}

fn mat_mul(reg: &Arc<VarRegistry>, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![LaurentPoly::zero(reg); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

/// First entry where `m` differs from c·Id.
fn diff_from_scalar(red: Option<&QuotientReducer>, m: &Mat, c: &LaurentPoly) -> Option<(usize, usize, LaurentPoly)> {
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let d = if i == j { e - c } else { e.clone() };
            let d = reduce_with(red, &d);
            if !d.is_zero() {
                return Some((i, j, d));
            }
        }
    }
    None
}

/// Offending entry of a failed D² = F check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub block: &'static str,
    pub row: usize,
    pub col: usize,
    pub entry: String,
}

impl fmt::Display for SquareWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}] − F·δ = {}", self.block, self.row, self.col, self.entry)
    }
}

/// Z/2-graded free module with D⁰: even → odd and D¹: odd → even.
#[derive(Clone, Debug)]
pub struct GenericMF {
    reg: Arc<VarRegistry>,
    reducer: Option<QuotientReducer>,
    pub d0: Mat,
    pub d1: Mat,
    pub potential: LaurentPoly,
}

impl GenericMF {
    pub fn new(reg: &Arc<VarRegistry>, d0: Mat, d1: Mat, potential: LaurentPoly) -> Self {
        GenericMF { reg: reg.clone(), reducer: None, d0, d1, potential }
    }

    pub fn with_reducer(mut self, red: Option<QuotientReducer>) -> Self {
        self.reducer = red;
        self
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.d1.len(), self.d0.len())
    }

    /// D¹D⁰ = F·Id and D⁰D¹ = F·Id, modulo the reducer if any.
    pub fn check_square(&self) -> Result<(), SquareWitness> {
        let red = self.reducer.as_ref();
        for (block, a, b) in [("D¹D⁰", &self.d1, &self.d0), ("D⁰D¹", &self.d0, &self.d1)] {
            let p = mat_mul(&self.reg, a, b);
            if let Some((row, col, e)) = diff_from_scalar(red, &p, &self.potential) {
                return Err(SquareWitness { block, row, col, entry: e.to_string() });
            }
        }
        Ok(())
    }

    /// Full differential on even ⊕ odd.
    fn full(&self) -> (Vec<bool>, Mat) {
        let (ne, no) = self.ranks();
        let n = ne + no;
        let mut d = vec![vec![LaurentPoly::zero(&self.reg); n]; n];
        for i in 0..no {
            for j in 0..ne {
                d[ne + i][j] = self.d0[i][j].clone();
            }
        }
        for i in 0..ne {
            for j in 0..no {
                d[i][ne + j] = self.d1[i][j].clone();
            }
        }
        let parity = (0..n).map(|k| k >= ne).collect();
        (parity, d)
    }

    fn from_full(reg: &Arc<VarRegistry>, parity: &[bool], d: &Mat, potential: LaurentPoly, red: Option<QuotientReducer>) -> Self {
        let even: Vec<usize> = (0..parity.len()).filter(|&k| !parity[k]).collect();
        let odd: Vec<usize> = (0..parity.len()).filter(|&k| parity[k]).collect();
        let d0 = odd.iter().map(|&i| even.iter().map(|&j| d[i][j].clone()).collect()).collect();
        let d1 = even.iter().map(|&i| odd.iter().map(|&j| d[i][j].clone()).collect()).collect();
        GenericMF { reg: reg.clone(), reducer: red, d0, d1, potential }
    }

    /// Graded tensor product with the Koszul sign rule.
    pub fn tensor(&self, other: &GenericMF) -> Result<GenericMF, MfError> {
        if !same_ring(&self.reg, &other.reg) {
            return Err(MfError::RingMismatch);
        }
        let (p1, d1) = self.full();
        let (p2, d2) = other.full();
        let (n1, n2) = (p1.len(), p2.len());
        let idx = |i: usize, j: usize| i * n2 + j;
        let mut d = vec![vec![LaurentPoly::zero(&self.reg); n1 * n2]; n1 * n2];
        let mut parity = vec![false; n1 * n2];
        for i in 0..n1 {
            for j in 0..n2 {
                parity[idx(i, j)] = p1[i] ^ p2[j];
                for k in 0..n1 {
                    if !d1[k][i].is_zero() {
                        d[idx(k, j)][idx(i, j)] = d1[k][i].clone();
                    }
                }
                for l in 0..n2 {
                    if !d2[l][j].is_zero() {
                        d[idx(i, l)][idx(i, j)] = if p1[i] { -&d2[l][j] } else { d2[l][j].clone() };
                    }
                }
            }
        }
        let f = &self.potential + &other.potential;
        let red = self.reducer.clone().or_else(|| other.reducer.clone());
        Ok(GenericMF::from_full(&self.reg, &parity, &d, f, red))
    }
}

/// Sign of moving θ_i past the generators of S below i.
fn wedge_sign(mask: usize, i: usize) -> bool {
    (mask & ((1 << i) - 1)).count_ones() % 2 == 1
}

/// Exterior-algebra element as mask → coefficient.
type Ext = BTreeMap<usize, LaurentPoly>;

/// x ∧ θ_k
fn wedge_right(reg: &Arc<VarRegistry>, x: &Ext, k: usize, c: &LaurentPoly) -> Ext {
    let mut out: Ext = BTreeMap::new();
    for (&m, v) in x {
        if m & (1 << k) != 0 {
            continue;
        }
        let above = (m >> (k + 1)).count_ones() % 2 == 1;
        let t = v * c;
        let t = if above { -&t } else { t };
        let e = out.entry(m | (1 << k)).or_insert_with(|| LaurentPoly::zero(reg));
        *e = &*e + &t;
    }
    out
}

/// Outcome of eliminate_row.
#[derive(Clone, Debug)]
pub enum Elimination {
    /// The whole object is null-homotopic; the checked homotopy is recorded.
    Contractible(Certificate),
    /// Smaller presentation and the certificate of the step.
    Reduced(KoszulMF, Certificate),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// θ_i ↦ θ_i + p·θ_j with D_old·Φ = Φ·D_new and Φ(p)Φ(−p) = Id checked.
    Transform { i: usize, j: usize, p: String },
    /// H = u⁻¹∂_i or u⁻¹θ_i with DH + HD = Id checked.
    Homotopy { row: usize, slot: &'static str, unit: String },
    /// Row dropped and var ↦ image applied to the remaining rows.
    Restriction { row: usize, var: String, image: String },
    /// Knörrer pair removed.
    Knorrer { row: usize, vars: (String, String) },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElimMode {
    Unit,
    Coordinate,
    Knorrer,
}

/// K[a⃗, b⃗]: Λ•⟨θ₁..θ_m⟩ with D = Σ aᵢθᵢ + bᵢ∂/∂θᵢ.
#[derive(Clone, Debug)]
pub struct KoszulMF {
    reg: Arc<VarRegistry>,
    reducer: Option<QuotientReducer>,
    rows: Vec<(LaurentPoly, LaurentPoly)>,
    potential: LaurentPoly,
    pub twist: GradedTwist,
}

pub fn koszul(rows: Vec<(LaurentPoly, LaurentPoly)>, f: LaurentPoly, reg: &Arc<VarRegistry>) -> Result<KoszulMF, MfError> {
    KoszulMF::new(reg, None, rows, f)
}

/// Lemma-of-extension closed form for a Koszul complex: given F = Σ cᵢfᵢ the
/// differential d⁺ = Σ fᵢ∂ᵢ completes to d⁺ + Σ cᵢθᵢ, i.e. K[c⃗, f⃗].
pub fn extend_koszul(f: &[LaurentPoly], c: &[LaurentPoly], potential: LaurentPoly, reg: &Arc<VarRegistry>) -> Result<KoszulMF, MfError> {
    if f.len() != c.len() {
        return Err(MfError::BadIndex);
    }
    let rows = c.iter().cloned().zip(f.iter().cloned()).collect();
    koszul(rows, potential, reg)
}

/// Row concatenation; potentials add.
pub fn tensor(m1: &KoszulMF, m2: &KoszulMF) -> Result<KoszulMF, MfError> {
    if !same_ring(&m1.reg, &m2.reg) {
        return Err(MfError::RingMismatch);
    }
    let mut rows = m1.rows.clone();
    rows.extend(m2.rows.iter().cloned());
    let red = m1.reducer.clone().or_else(|| m2.reducer.clone());
    let mut out = KoszulMF::new(&m1.reg, red, rows, &m1.potential + &m2.potential)?;
    out.twist = m1.twist.compose(&m2.twist);
    Ok(out)
}

impl KoszulMF {
    pub fn new(reg: &Arc<VarRegistry>, reducer: Option<QuotientReducer>, rows: Vec<(LaurentPoly, LaurentPoly)>, potential: LaurentPoly) -> Result<Self, MfError> {
        for (a, b) in &rows {
            if !same_ring(a.registry(), reg) || !same_ring(b.registry(), reg) {
                return Err(MfError::RingMismatch);
            }
        }
        let m = KoszulMF { reg: reg.clone(), reducer, rows, potential, twist: GradedTwist::none() };
        let d = m.reduce(&(&m.row_sum() - &m.potential));
        if !d.is_zero() {
            return Err(MfError::PotentialMismatch(d.to_string()));
        }
        Ok(m.normalize())
    }

    fn normalize(mut self) -> Self {
        self.rows = self.rows.iter().map(|(a, b)| (self.reduce(a), self.reduce(b))).collect();
        self.potential = self.reduce(&self.potential);
        self
    }

    pub fn with_twist(mut self, t: GradedTwist) -> Self {
        self.twist = t;
        self
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn reducer(&self) -> Option<&QuotientReducer> {
        self.reducer.as_ref()
    }

    pub fn rows(&self) -> &[(LaurentPoly, LaurentPoly)] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn potential(&self) -> &LaurentPoly {
        &self.potential
    }

    pub fn reduce(&self, p: &LaurentPoly) -> LaurentPoly {
        reduce_with(self.reducer.as_ref(), p)
    }

    fn row_sum(&self) -> LaurentPoly {
        self.rows.iter().fold(LaurentPoly::zero(&self.reg), |s, (a, b)| &s + &(a * b))
    }

    /// Full 2^m × 2^m differential in the basis of wedge monomials (bitmasks).
    fn full_matrix(&self) -> Mat {
        let m = self.rows.len();
        let n = 1usize << m;
        let mut d = vec![vec![LaurentPoly::zero(&self.reg); n]; n];
        for s in 0..n {
            for (i, (a, b)) in self.rows.iter().enumerate() {
                let neg = wedge_sign(s, i);
                let (t, c) = if s & (1 << i) == 0 { (s | (1 << i), a) } else { (s & !(1 << i), b) };
                if !c.is_zero() {
                    d[t][s] = if neg { -c } else { c.clone() };
                }
            }
        }
        d
    }

    /// The 2^m-dimensional GenericMF, even part spanned by even wedge monomials.
    pub fn materialize(&self) -> GenericMF {
        let n = 1usize << self.rows.len();
        let parity: Vec<bool> = (0..n).map(|s| s.count_ones() % 2 == 1).collect();
        GenericMF::from_full(&self.reg, &parity, &self.full_matrix(), self.potential.clone(), self.reducer.clone())
    }

    pub fn check_square(&self) -> Result<(), SquareWitness> {
        self.materialize().check_square()
    }

    /// Canonical text of the rows and potential.
    pub fn state_text(&self) -> String {
        let rows: Vec<String> = self.rows.iter().map(|(a, b)| format!("({} | {})", a, b)).collect();
        format!("[{}] F={} {}", rows.join("; "), self.potential, self.twist)
    }

    pub fn state_hash(&self) -> String {
        Sha256::digest(self.state_text().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Per-row θ weights (q, t) making every summand of D have t-weight
    /// equal to half the t-weight of F. Fails on inhomogeneous entries or
    /// rows whose entries do not multiply into the weight of F.
    pub fn check_t_weights(&self) -> Result<Vec<(i64, i64)>, MfError> {
        let wf = qt_weight(&self.potential)?.ok_or(MfError::Inhomogeneous("F = 0".into()))?;
        if wf.1 % 2 != 0 {
            return Err(MfError::WeightMismatch(0, format!("F has t-weight {}", wf.1)));
        }
        if wf.0 % 2 != 0 {
            return Err(MfError::WeightMismatch(0, format!("F has q-weight {}", wf.0)));
        }
        let wd = (wf.0 / 2, wf.1 / 2);
        let mut out = Vec::new();
        for (i, (a, b)) in self.rows.iter().enumerate() {
            let (wa, wb) = (qt_weight(a)?, qt_weight(b)?);
            match (wa, wb) {
                (Some(x), Some(y)) if (x.0 + y.0, x.1 + y.1) != wf => {
                    return Err(MfError::WeightMismatch(i, format!("{:?}·{:?} ≠ {:?}", x, y, wf)));
                }
                _ => {}
            }
            // θᵢ carries D-weight minus the weight of aᵢ
            let w = match (wa, wb) {
                (Some(x), _) => (wd.0 - x.0, wd.1 - x.1),
                (None, Some(y)) => (y.0 - wd.0, y.1 - wd.1),
                (None, None) => (0, 0),
            };
            out.push(w);
        }
        Ok(out)
    }

    /// Apply a ring map to all entries (used for coordinate changes such as
    /// b ↦ adj(a)·c); the result is revalidated in the target ring.
    pub fn map_ring(&self, images: &[(&str, LaurentPoly)], target: &Arc<VarRegistry>, reducer: Option<QuotientReducer>) -> Result<KoszulMF, MfError> {
        let s = |p: &LaurentPoly| p.substitute(images, target);
        let rows = self.rows.iter().map(|(a, b)| Ok((s(a)?, s(b)?))).collect::<Result<Vec<_>, MfError>>()?;
        let mut out = KoszulMF::new(target, reducer, rows, s(&self.potential)?)?;
        out.twist = self.twist.clone();
        Ok(out)
    }

    /// θ_i ↦ θ_i + p·θ_j. Row i becomes (aᵢ, bᵢ + p·b_j), row j becomes
    /// (a_j − p·aᵢ, b_j). The exterior-algebra automorphism Φ is materialized
    /// and D_old·Φ = Φ·D_new is checked.
    pub fn row_transform(&self, i: usize, j: usize, p: &LaurentPoly) -> Result<(KoszulMF, Certificate), MfError> {
        let m = self.rows.len();
        if i == j || i >= m || j >= m {
            return Err(MfError::BadIndex);
        }
        let mut rows = self.rows.clone();
        rows[i].1 = &self.rows[i].1 + &(p * &self.rows[j].1);
        rows[j].0 = &self.rows[j].0 - &(p * &self.rows[i].0);
        let mut out = KoszulMF::new(&self.reg, self.reducer.clone(), rows, self.potential.clone())?;
        out.twist = self.twist.clone();
        let phi = self.phi(i, j, p);
        let red = self.reducer.as_ref();
        let lhs = mat_mul(&self.reg, &self.full_matrix(), &phi);
        let rhs = mat_mul(&self.reg, &phi, &out.full_matrix());
        for (r, (x, y)) in lhs.iter().zip(&rhs).enumerate() {
            for (c, (u, v)) in x.iter().zip(y).enumerate() {
                let d = reduce_with(red, &(u - v));
                if !d.is_zero() {
                    return Err(MfError::StepFailed { step: 0, operation: "row_transform".into(), witness: format!("(DΦ − ΦD')[{r},{c}] = {d}") });
                }
            }
        }
        let back = mat_mul(&self.reg, &phi, &self.phi(i, j, &-p));
        if let Some((r, c, d)) = diff_from_scalar(red, &back, &LaurentPoly::one(&self.reg)) {
            return Err(MfError::StepFailed { step: 0, operation: "row_transform".into(), witness: format!("Φ(p)Φ(−p)[{r},{c}] − δ = {d}") });
        }
        Ok((out, Certificate::Transform { i, j, p: p.to_string() }))
    }

    /// Φ: Λ(θ') → Λ(θ), θ'_i ↦ θ_i + p·θ_j, θ'_k ↦ θ_k.
    fn phi(&self, i: usize, j: usize, p: &LaurentPoly) -> Mat {
        let m = self.rows.len();
        let n = 1usize << m;
        let one = LaurentPoly::one(&self.reg);
        let mut out = vec![vec![LaurentPoly::zero(&self.reg); n]; n];
        for s in 0..n {
            let mut x: Ext = BTreeMap::from([(0usize, one.clone())]);
            for k in 0..m {
                if s & (1 << k) == 0 {
                    continue;
                }
                let mut y = wedge_right(&self.reg, &x, k, &one);
                if k == i {
                    for (mm, v) in wedge_right(&self.reg, &x, j, p) {
                        let e = y.entry(mm).or_insert_with(|| LaurentPoly::zero(&self.reg));
                        *e = &*e + &v;
                    }
                }
                x = y;
            }
            for (t, v) in x {
                out[t][s] = v;
            }
        }
        out
    }

    /// Remove row `index`.
    ///
    /// * `Unit`: an entry is a nonzero constant u; the object is then
    ///   null-homotopic via H = u⁻¹∂ᵢ (a-slot) or u⁻¹θᵢ (b-slot), checked.
    /// * `Coordinate`: an entry is c·v + g with v a variable, c a constant and
    ///   g free of v. The row is dropped and v ↦ −g/c applied to the rest
    ///   (restriction to the zero locus, whose push-forward is the original).
    /// * `Knorrer`: both entries are constant multiples of variables that
    ///   occur nowhere else; the row is dropped and F loses aᵢbᵢ.
    pub fn eliminate_row(&self, index: usize, mode: ElimMode) -> Result<Elimination, MfError> {
        let (a, b) = self.rows.get(index).ok_or(MfError::BadIndex)?;
        match mode {
            ElimMode::Unit => {
                let (slot, u) = match (a.as_constant(), b.as_constant()) {
                    (Some(u), _) if !num_traits::Zero::is_zero(&u) => ("a", u),
                    (_, Some(u)) if !num_traits::Zero::is_zero(&u) => ("b", u),
                    _ => return Err(MfError::NotEliminable(index)),
                };
                self.check_unit_homotopy(index, slot, &u)?;
                Ok(Elimination::Contractible(Certificate::Homotopy { row: index, slot, unit: crate::scalar::format_q(&u) }))
            }
            ElimMode::Coordinate => self.restrict_row(index, None),
            ElimMode::Knorrer => {
                let va = single_variable(a).ok_or(MfError::NotEliminable(index))?;
                let vb = single_variable(b).ok_or(MfError::NotEliminable(index))?;
                let rest = &self.potential - &(a * b);
                let elsewhere = |v: usize| rest.involves(v) || self.rows.iter().enumerate().any(|(k, (x, y))| k != index && (x.involves(v) || y.involves(v)));
                if va == vb || elsewhere(va) || elsewhere(vb) {
                    return Err(MfError::NotEliminable(index));
                }
                let rows = self.rows.iter().enumerate().filter(|&(k, _)| k != index).map(|(_, r)| r.clone()).collect();
                let mut out = KoszulMF::new(&self.reg, self.reducer.clone(), rows, rest)?;
                out.twist = self.twist.clone();
                let names = (self.reg.name(va).to_string(), self.reg.name(vb).to_string());
                Ok(Elimination::Reduced(out, Certificate::Knorrer { row: index, vars: names }))
            }
        }
    }

    /// Coordinate elimination of row `index`, optionally naming the variable.
    pub fn restrict_row(&self, index: usize, var: Option<&str>) -> Result<Elimination, MfError> {
        let (a, b) = self.rows.get(index).ok_or(MfError::BadIndex)?;
        let want = var.map(|n| self.reg.index_of(n).ok_or_else(|| MfError::Scalar(crate::scalar::ScalarError::UnknownVariable(n.into())))).transpose()?;
        let (v, image) = [b, a]
            .iter()
            .find_map(|e| linear_in_variable(e, want))
            .ok_or(MfError::NotEliminable(index))?;

                let name = self.reg.name(v).to_string();
                if self.reducer.as_ref().is_some_and(|r| r.relations().iter().any(|rel| rel.i == v || rel.j == v)) {
                    return Err(MfError::NotEliminable(index));
                }
                let images = [(name.as_str(), image.clone())];
                let s = |p: &LaurentPoly| p.substitute(&images, &self.reg);
                let reducer = match &self.reducer {
                    None => None,
                    Some(r) => {
                        let rels = r.relations().iter().map(|rel| Ok(Relation { i: rel.i, j: rel.j, rhs: s(&rel.rhs)? })).collect::<Result<Vec<_>, MfError>>()?;
                        Some(QuotientReducer::new(&self.reg, rels)?)
                    }
                };
                let rows = self
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != index)
                    .map(|(_, (x, y))| Ok((s(x)?, s(y)?)))
                    .collect::<Result<Vec<_>, MfError>>()?;
                let f = &s(&self.potential)? - &s(&(a * b))?;
                let mut out = KoszulMF::new(&self.reg, reducer, rows, f)?;
                out.twist = self.twist.clone();
                Ok(Elimination::Reduced(out, Certificate::Restriction { row: index, var: name, image: image.to_string() }))
                }

    fn check_unit_homotopy(&self, index: usize, slot: &str, u: &Q) -> Result<(), MfError> {
        let n = 1usize << self.rows.len();
        let inv = LaurentPoly::constant(&self.reg, Q::from_integer(1.into()) / u);
        let mut h = vec![vec![LaurentPoly::zero(&self.reg); n]; n];
        for s in 0..n {
            let has = s & (1 << index) != 0;
            let target = match (slot, has) {
                ("a", true) => s & !(1 << index),
                ("b", false) => s | (1 << index),
                _ => continue,
            };
            h[target][s] = if wedge_sign(s, index) { -&inv } else { inv.clone() };
        }
        let d = self.full_matrix();
        let dh = mat_mul(&self.reg, &d, &h);
        let hd = mat_mul(&self.reg, &h, &d);
        let sum: Mat = dh.iter().zip(&hd).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect();
        match diff_from_scalar(self.reducer.as_ref(), &sum, &LaurentPoly::one(&self.reg)) {
            None => Ok(()),
            Some((r, c, e)) => Err(MfError::StepFailed { step: 0, operation: "eliminate_row".into(), witness: format!("(DH+HD)[{r},{c}] − δ = {e}") }),
        }
    }
}

impl fmt::Display for KoszulMF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.state_text())
    }
}

/// (q, t) weight of a homogeneous polynomial; None for zero.
fn qt_weight(p: &LaurentPoly) -> Result<Option<(i64, i64)>, MfError> {
    let mut w = None;
    for e in p.terms().keys() {
        let v = p.weight_of_exps(e);
        let x = (v.q, v.t);
        if w.is_some_and(|y| y != x) {
            return Err(MfError::Inhomogeneous(p.to_string()));
        }
        w = Some(x);
    }
    Ok(w)
}

/// e = c·v + g with g free of v: returns (v, −g/c).
fn linear_in_variable(e: &LaurentPoly, want: Option<usize>) -> Option<(usize, LaurentPoly)> {
    let reg = e.registry();
    for v in 0..reg.len() {
        if want.is_some_and(|w| w != v) {
            continue;
        }
        let parts = e.collect_var(v);
        if parts.keys().any(|&k| k != 0 && k != 1) {
            continue;
        }
        let Some(c) = parts.get(&1).and_then(|p| p.as_constant()) else { continue };
        let g = parts.get(&0).cloned().unwrap_or_else(|| LaurentPoly::zero(reg));
        let inv = Q::from_integer(1.into()) / c;
        return Some((v, g.scale(&-inv)));
    }
    None
}

/// e = c·v for a single variable v.
fn single_variable(e: &LaurentPoly) -> Option<usize> {
    let (exps, _) = e.as_monomial()?;
    let nz: Vec<usize> = (0..exps.len()).filter(|&i| exps[i] != 0).collect();
    (nz.len() == 1 && exps[nz[0]] == 1).then(|| nz[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> Arc<VarRegistry> {
        VarRegistry::plain(&["x", "y", "z", "w"])
    }

    fn v(r: &Arc<VarRegistry>, n: &str, k: i32) -> LaurentPoly {
        LaurentPoly::var(r, n, k)
    }

    #[test]
    fn x5_and_xy() {
        let r = reg();
        let x5 = koszul(vec![(v(&r, "x", 2), v(&r, "x", 3))], v(&r, "x", 5), &r).unwrap();
        assert!(x5.check_square().is_ok());
        let xy = koszul(vec![(v(&r, "x", 1), v(&r, "y", 1))], &v(&r, "x", 1) * &v(&r, "y", 1), &r).unwrap();
        assert!(xy.check_square().is_ok());
        let bad = koszul(vec![(v(&r, "x", 1), v(&r, "y", 1))], &v(&r, "x", 1) + &v(&r, "y", 1), &r);
        assert!(matches!(bad, Err(MfError::PotentialMismatch(_))));
    }

    #[test]
    fn perturbed_entry_has_witness() {
        let r = reg();
        let xy = koszul(vec![(v(&r, "x", 1), v(&r, "y", 1))], &v(&r, "x", 1) * &v(&r, "y", 1), &r).unwrap();
        let mut g = xy.materialize();
        g.d0[0][0] = &g.d0[0][0] + &LaurentPoly::one(&r);
        let w = g.check_square().unwrap_err();
        assert_eq!((w.row, w.col), (0, 0));
    }

    #[test]
    fn tensor_adds_potentials() {
        let r = reg();
        let x = |k| v(&r, "x", k);
        let xy = koszul(vec![(x(1), v(&r, "y", 1))], &x(1) * &v(&r, "y", 1), &r).unwrap();
        let x5 = koszul(vec![(x(2), x(3))], x(5), &r).unwrap();
        let t = tensor(&xy, &x5).unwrap();
        assert_eq!(t.potential(), &(&(&x(1) * &v(&r, "y", 1)) + &x(5)));
        assert!(t.check_square().is_ok());
        let g = xy.materialize().tensor(&x5.materialize()).unwrap();
        assert!(g.check_square().is_ok());
        assert_eq!(g.ranks(), (2, 2));
        let unit = koszul(vec![], LaurentPoly::zero(&r), &r).unwrap();
        assert_eq!(tensor(&xy, &unit).unwrap().rows(), xy.rows());
    }

    #[test]
    fn extension_lemma() {
        let r = reg();
        let x = |k| v(&r, "x", k);
        let m = extend_koszul(&[x(1)], &[x(4)], x(5), &r).unwrap();
        assert_eq!(m.rows(), &[(x(4), x(1))]);
        let folded = extend_koszul(&[x(1), v(&r, "y", 1)], &[LaurentPoly::zero(&r), LaurentPoly::zero(&r)], LaurentPoly::zero(&r), &r).unwrap();
        assert!(folded.check_square().is_ok());
        assert!(extend_koszul(&[x(1)], &[x(1)], x(5), &r).is_err());
    }

    #[test]
    fn transforms_round_trip() {
        let r = reg();
        let (x, y, z, w) = (v(&r, "x", 1), v(&r, "y", 1), v(&r, "z", 1), v(&r, "w", 1));
        let f = &(&x * &y) + &(&z * &w);
        let m = koszul(vec![(x.clone(), y.clone()), (z.clone(), w.clone())], f, &r).unwrap();
        let p = &x + &z;
        let (t, _) = m.row_transform(0, 1, &p).unwrap();
        assert!(t.check_square().is_ok());
        let (back, _) = t.row_transform(0, 1, &-&p).unwrap();
        assert_eq!(back.rows(), m.rows());
        let (same, _) = m.row_transform(1, 0, &LaurentPoly::zero(&r)).unwrap();
        assert_eq!(same.rows(), m.rows());
        assert!(m.row_transform(1, 1, &p).is_err());
    }

    #[test]
    fn eliminations() {
        let r = reg();
        let (x, y, z, w) = (v(&r, "x", 1), v(&r, "y", 1), v(&r, "z", 1), v(&r, "w", 1));
        let one = LaurentPoly::one(&r);
        let f = &(&x * &y) + &z;
        let m = koszul(vec![(x.clone(), y.clone()), (one.clone(), z.clone())], f, &r).unwrap();
        assert!(matches!(m.eliminate_row(1, ElimMode::Unit).unwrap(), Elimination::Contractible(_)));
        assert!(m.eliminate_row(0, ElimMode::Unit).is_err());

        let f = &(&x * &y) + &(&z * &w);
        let m = koszul(vec![(x.clone(), y.clone()), (z.clone(), w.clone())], f, &r).unwrap();
        match m.eliminate_row(1, ElimMode::Knorrer).unwrap() {
            Elimination::Reduced(k, _) => assert_eq!(k.potential(), &(&x * &y)),
            _ => panic!(),
        }

        // (0, z − x²): restrict to z = x²
        let zero = LaurentPoly::zero(&r);
        let f = &x * &(&y + &z);
        let m = koszul(vec![(x.clone(), &y + &z), (zero, &z - &x.pow(2))], f, &r).unwrap();
        match m.eliminate_row(1, ElimMode::Coordinate).unwrap() {
            Elimination::Reduced(k, Certificate::Restriction { var, .. }) => {
                assert_eq!(var, "z");
                assert_eq!(k.rows()[0].1, &y + &x.pow(2));
                assert!(k.check_square().is_ok());
            }
            _ => panic!(),
        }
    }
}
