use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::ce::{gl2_registry, CEPresentation};
use super::koszul::{tensor, Elimination};
use super::{add, format_chi, GradedTwist, KoszulMF, MfError};
use crate::scalar::{LaurentPoly, QuotientReducer, VarRegistry, VarWeight};

/// Coordinates of 𝔤 × 𝔫 × GL₂ × 𝔫 × GL₂ × 𝔫 plus a third GL₂ for c = ab.
/// X = [[x0, x1], [xm, −x0]] (the trace drops out of every potential).
pub fn conv_registry() -> &'static Arc<VarRegistry> {
    static REG: OnceLock<Arc<VarRegistry>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut v: Vec<(String, VarWeight)> = Vec::new();
        for x in ["xm", "x0", "x1"] {
            v.push((x.into(), VarWeight::qt(2, 0)));
        }
        for y in ["y1", "y2", "y3"] {
            v.push((y.into(), VarWeight::qt(-2, -2)));
        }
        for m in ["a", "b", "c"] {
            for ij in ["11", "12", "21", "22"] {
                v.push((format!("{m}{ij}"), VarWeight::zero()));
            }
        }
        VarRegistry::new(&v).unwrap()
    })
}

fn var(n: &str) -> LaurentPoly {
    LaurentPoly::var(conv_registry(), n, 1)
}

fn int(k: i64) -> LaurentPoly {
    LaurentPoly::int(conv_registry(), k)
}

fn det1(mats: &[&str]) -> QuotientReducer {
    QuotientReducer::det1(conv_registry(), mats).unwrap()
}

/// Components (xm, x0, x1) of X.
type XComp = [LaurentPoly; 3];

fn x_plain() -> XComp {
    [var("xm"), var("x0"), var("x1")]
}

fn mat(m: &str) -> [[LaurentPoly; 2]; 2] {
    [[var(&format!("{m}11")), var(&format!("{m}12"))], [var(&format!("{m}21")), var(&format!("{m}22"))]]
}

fn mul2(a: &[[LaurentPoly; 2]; 2], b: &[[LaurentPoly; 2]; 2]) -> [[LaurentPoly; 2]; 2] {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn adj(a: &[[LaurentPoly; 2]; 2]) -> [[LaurentPoly; 2]; 2] {
    [[a[1][1].clone(), -&a[0][1]], [-&a[1][0], a[0][0].clone()]]
}

fn x_matrix(x: &XComp) -> [[LaurentPoly; 2]; 2] {
    [[x[1].clone(), x[2].clone()], [x[0].clone(), -&x[1]]]
}

/// Components of adj(g)·X·g by direct 2×2 multiplication.
fn conjugate(x: &XComp, g: &str) -> XComp {
    let g = mat(g);
    let m = mul2(&mul2(&adj(&g), &x_matrix(x)), &g);
    let half = LaurentPoly::constant(conv_registry(), crate::scalar::qr(1, 2));
    [m[1][0].clone(), &half * &(&m[0][0] - &m[1][1]), m[0][1].clone()]
}

/// x̃₀(g) = 2x₀g₁₁ + x₁g₂₁.
fn xt0(x: &XComp, g: &str) -> LaurentPoly {
    &(&int(2) * &(&x[1] * &var(&format!("{g}11")))) + &(&x[2] * &var(&format!("{g}21")))
}

/// W° = Tr(X(Y₁ − Ad_g Y₂)) in the det g = 1 chart:
/// xm·(y₁ − y₂g₁₁²) + y₂g₂₁x̃₀(g).
pub fn w_circ(x: &[LaurentPoly; 3], ya: &str, yb: &str, g: &str) -> LaurentPoly {
    let g11 = var(&format!("{g}11"));
    let g21 = var(&format!("{g}21"));
    let (ya, yb) = (var(ya), var(yb));
    &(&x[0] * &(&ya - &(&yb * &g11.pow(2)))) + &(&(&yb * &g21) * &xt0(x, g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Named {
    Par,
    Dot,
    Plus,
}

impl Named {
    pub fn name(self) -> &'static str {
        match self {
            Named::Par => "C∥",
            Named::Dot => "C•",
            Named::Plus => "C+",
        }
    }
}

/// Named two-strand presentation in the variables X, y_a, y_b, g.
fn named_rows(kind: Named, x: &XComp, ya: &str, yb: &str, g: &str) -> Vec<(LaurentPoly, LaurentPoly)> {
    let g11 = var(&format!("{g}11"));
    let g21 = var(&format!("{g}21"));
    let (yav, ybv) = (var(ya), var(yb));
    let first = (x[0].clone(), &yav - &(&ybv * &g11.pow(2)));
    let second = match kind {
        Named::Par => (&ybv * &xt0(x, g), g21),
        Named::Dot => (&g21 * &xt0(x, g), ybv),
        Named::Plus => (xt0(x, g), &g21 * &ybv),
    };
    vec![first, second]
}

/// C∥, C•, C+ on X° over the convolution registry (variables X, y1, y2, a),
/// verified against W° modulo det a = 1.
pub fn named_x0(kind: Named) -> Result<KoszulMF, MfError> {
    let x = x_plain();
    KoszulMF::new(conv_registry(), Some(det1(&["a"])), named_rows(kind, &x, "y1", "y2", "a"), w_circ(&x, "y1", "y2", "a"))
}

/// A named presentation with its twist (optionally shifted in parity).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct QTwisted {
    pub named: Named,
    pub twist: GradedTwist,
    pub odd: bool,
}

impl fmt::Display for QTwisted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw = &self.twist;
        let q = if tw.q != 0 { format!("q^{}", tw.q) } else { String::new() };
        let par = if self.odd { "Π" } else { "" };
        write!(f, "{par}{q}{}⟨{},{}⟩", self.named.name(), format_chi(&tw.left), format_chi(&tw.right))
    }
}

/// C•⟨l, r⟩ on the stable locus: trading χ₁-shifts for q-shifts with
/// C•⟨χ′+χ₁, χ″⟩ = q²C•⟨χ′−χ₂, χ″−2χ₂⟩, C•⟨χ′, χ″+χ₁⟩ = q⁻²C•⟨χ′, χ″+χ₂⟩
/// and χ₂-shifts being trivial, C•⟨l, r⟩ ≅ q^{2l₁−2r₁}C•.
pub fn twist_to_q(t: &GradedTwist) -> i64 {
    let l1 = t.left.first().copied().unwrap_or(0);
    let r1 = t.right.first().copied().unwrap_or(0);
    t.q + 2 * l1 - 2 * r1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepStatus {
    Pass,
    Fail,
}

/// One replayable pipeline step.
#[derive(Clone, Debug, Serialize)]
pub struct AuditStep {
    pub step: usize,
    pub operation: String,
    pub params: String,
    pub status: StepStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub state_hash: String,
}

/// Result of a scripted convolution.
#[derive(Clone, Debug, Serialize)]
pub struct Convolution {
    pub left: QTwisted,
    pub right: QTwisted,
    pub log: Vec<AuditStep>,
    #[serde(skip)]
    pub reduced: Option<KoszulMF>,
    pub summands: Vec<QTwisted>,
    /// Summands in the q-form on the stable locus, with the operands also
    /// traded to q-shifts.
    pub q_form: Vec<i64>,
}

impl Convolution {
    pub fn passed(&self) -> bool {
        self.log.iter().all(|s| s.status == StepStatus::Pass)
    }
}

struct Script {
    log: Vec<AuditStep>,
    state: KoszulMF,
}

impl Script {
    fn new(state: KoszulMF) -> Self {
        Script { log: Vec::new(), state }
    }

    fn record(&mut self, op: &str, params: String, witness: Option<String>) -> Result<(), MfError> {
        let status = if witness.is_none() { StepStatus::Pass } else { StepStatus::Fail };
        let step = self.log.len() + 1;
        self.log.push(AuditStep { step, operation: op.into(), params, status, witness: witness.clone(), state_hash: self.state.state_hash() });
        match witness {
            None => Ok(()),
            Some(w) => Err(MfError::StepFailed { step, operation: op.into(), witness: w }),
        }
    }

    /// Every new state must satisfy D² = F.
    fn set(&mut self, op: &str, params: String, m: KoszulMF) -> Result<(), MfError> {
        self.state = m;
        let w = self.state.check_square().err().map(|w| w.to_string());
        self.record(op, params, w)
    }

    fn transform(&mut self, i: usize, j: usize, p: LaurentPoly) -> Result<(), MfError> {
        let (m, _) = self.state.row_transform(i, j, &p)?;
        self.set("row_transform", format!("θ{} ↦ θ{} + ({})θ{}", i + 1, i + 1, p, j + 1), m)
    }

    fn restrict(&mut self, row: usize, v: &str) -> Result<(), MfError> {
        match self.state.restrict_row(row, Some(v))? {
            Elimination::Reduced(m, cert) => self.set("eliminate_row", format!("coordinate {cert:?}"), m),
            Elimination::Contractible(_) => unreachable!(),
        }
    }

    /// Row-for-row comparison with an expected display (after reduction).
    fn compare(&mut self, label: &str, expected: &[(LaurentPoly, LaurentPoly)]) -> Result<(), MfError> {
        let got = self.state.rows();
        let mut witness = None;
        if got.len() != expected.len() {
            witness = Some(format!("{} rows, expected {}", got.len(), expected.len()));
        } else {
            for (k, ((a, b), (ea, eb))) in got.iter().zip(expected).enumerate() {
                let da = self.state.reduce(&(a - ea));
                let db = self.state.reduce(&(b - eb));
                if !da.is_zero() || !db.is_zero() {
                    witness = Some(format!("row {}: ({da} | {db})", k + 1));
                    break;
                }
            }
        }
        self.record("compare", label.into(), witness)
    }
}

/// C•⟨α,β⟩ ⋆ C•⟨γ,δ⟩ replayed step by step.
pub fn blob_square(l: &GradedTwist, r: &GradedTwist) -> Result<Convolution, MfError> {
    let x = x_plain();
    let xp = conjugate(&x, "a");
    let red_ab = det1(&["a", "b"]);
    let m12 = KoszulMF::new(conv_registry(), Some(red_ab.clone()), named_rows(Named::Dot, &x, "y1", "y2", "a"), w_circ(&x, "y1", "y2", "a"))?;
    let mut s = Script::new(m12.clone());
    s.set("pullback", "π12: identity on X, y1, y2, a".into(), m12.clone())?;
    let pull = [("xm", xp[0].clone()), ("x0", xp[1].clone()), ("x1", xp[2].clone()), ("y1", var("y2")), ("y2", var("y3")), ("a11", var("b11")), ("a12", var("b12")), ("a21", var("b21")), ("a22", var("b22"))];
    let m23 = m12.map_ring(&pull, conv_registry(), Some(red_ab.clone()))?;
    s.set("pullback", "π23: X ↦ adj(a)Xa, y1 ↦ y2, y2 ↦ y3, a ↦ b".into(), m23.clone())?;
    let c2 = tensor(&m12, &m23)?;
    s.set("tensor", "π12*C• ⊗ π23*C•".into(), c2)?;

    // total potential is W° for the product ab
    let ab = mul2(&mat("a"), &mat("b"));
    let w_ab = {
        let (g11, g21) = (&ab[0][0], &ab[1][0]);
        let xt = &(&int(2) * &(&x[1] * g11)) + &(&x[2] * g21);
        &(&x[0] * &(&var("y1") - &(&var("y3") * &g11.pow(2)))) + &(&(&var("y3") * g21) * &xt)
    };
    let d = s.state.reduce(&(s.state.potential() - &w_ab));
    s.record("potential", "F = W°(X, y1, y3, ab)".into(), (!d.is_zero()).then(|| d.to_string()))?;

    let (a11, a21, b11, b21) = (var("a11"), var("a21"), var("b11"), var("b21"));
    let xt_a = xt0(&x, "a");
    let xt_b = xt0(&xp, "b");
    let y = |k: usize| var(&format!("y{k}"));
    s.compare(
        "display 1",
        &[
            (x[0].clone(), &y(1) - &(&y(2) * &a11.pow(2))),
            (&a21 * &xt_a, y(2)),
            (xp[0].clone(), &y(2) - &(&y(3) * &b11.pow(2))),
            (&b21 * &xt_b, y(3)),
        ],
    )?;
    s.transform(0, 1, a11.pow(2))?;
    s.transform(2, 3, b11.pow(2))?;
    let a2 = &(-&(&a11.pow(2) * &x[0])) + &(&a21 * &xt_a);
    let a4 = &(-&(&b11.pow(2) * &xp[0])) + &(&b21 * &xt_b);
    s.compare("display 2", &[(x[0].clone(), y(1)), (a2.clone(), y(2)), (xp[0].clone(), y(2)), (a4.clone(), y(3))])?;
    s.transform(1, 2, int(-1))?;
    let zero = int(0);
    s.compare("display 3", &[(x[0].clone(), y(1)), (a2.clone(), zero.clone()), (zero.clone(), y(2)), (a4, y(3))])?;
    s.restrict(2, "y2")?;

    // b = adj(a)·c, so that c = ab when det a = 1
    let bc = mul2(&adj(&mat("a")), &mat("c"));
    let sub = [("b11", bc[0][0].clone()), ("b12", bc[0][1].clone()), ("b21", bc[1][0].clone()), ("b22", bc[1][1].clone())];
    let m = s.state.map_ring(&sub, conv_registry(), Some(det1(&["a", "c"])))?;
    s.set("substitute", "b ↦ adj(a)·c, det a = det c = 1".into(), m)?;
    let c11 = var("c11");
    let a4c = &(-&(&c11.pow(2) * &x[0])) + &(&var("c21") * &xt0(&x, "c"));
    s.compare("display 3 in c", &[(x[0].clone(), y(1)), (a2.clone(), zero.clone()), (a4c, y(3))])?;
    s.transform(0, 2, -&c11.pow(2))?;
    s.transform(0, 1, -&a11.pow(2))?;
    let fa = &a21 * &xt_a;
    s.compare(
        "display 4",
        &[(x[0].clone(), &y(1) - &(&c11.pow(2) * &y(3))), (fa.clone(), zero.clone()), (&var("c21") * &xt0(&x, "c"), y(3))],
    )?;

    // outer rows are π13*C•
    let p13 = KoszulMF::new(conv_registry(), Some(det1(&["c"])), named_rows(Named::Dot, &x, "y1", "y3", "c"), w_circ(&x, "y1", "y3", "c"))?;
    let outer = [s.state.rows()[0].clone(), s.state.rows()[2].clone()];
    let same = outer.iter().zip(p13.rows()).all(|((a, b), (c, d))| s.state.reduce(&(a - c)).is_zero() && s.state.reduce(&(b - d)).is_zero());
    s.record("identify", "rows 1, 3 = π13*C•(c, y1, y3)".into(), (!same).then(|| "outer rows differ".into()))?;

    // Chevalley–Eilenberg step on ℚ[a] with middle twist β + γ
    let mu = add(&l.right, &r.left);
    let (h0, h1, witness) = extract_gl2(&mu)?;
    let params = format!("δ₂ on ℚ[a], μ = {}: H⁰ → {:?}, H¹ → {:?}", format_chi(&mu), h0.iter().map(|p| p.0.clone()).collect::<Vec<_>>(), h1.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
    s.record("ce_homology_rank2", params, witness)?;

    // the remaining row (f, 0) has nonzero middle weight, so f moves every
    // extracted class out of the invariant part
    let f_weight = middle_weight_of_a_part(&fa);
    let trivial = matches!(&f_weight, Some(w) if w.iter().any(|&c| c != 0));
    s.record("f_action", format!("f = {fa}, middle weight {:?}", f_weight), (!trivial).then(|| "f may act nontrivially".into()))?;

    let mut summands = Vec::new();
    for (_, lw) in &h0 {
        summands.push(QTwisted { named: Named::Dot, twist: GradedTwist::chars(&add(&l.left, lw), &r.right).normalized(), odd: false });
    }
    for (_, lw) in &h1 {
        summands.push(QTwisted { named: Named::Dot, twist: GradedTwist::chars(&add(&l.left, lw), &r.right).normalized(), odd: true });
    }
    summands.sort_by_key(|t| t.to_string());
    let lq = twist_to_q(l);
    let rq = twist_to_q(r);
    let q_form = summands.iter().map(|t| twist_to_q(&t.twist) - lq - rq).collect();
    let left = QTwisted { named: Named::Dot, twist: l.clone(), odd: false };
    let right = QTwisted { named: Named::Dot, twist: r.clone(), odd: false };
    Ok(Convolution { left, right, log: s.log, reduced: Some(s.state), summands, q_form })
}

/// Middle torus weight of the a-dependence of p (None if inhomogeneous).
fn middle_weight_of_a_part(p: &LaurentPoly) -> Option<Vec<i64>> {
    let reg = p.registry();
    let mut w: Option<Vec<i64>> = None;
    for e in p.terms().keys() {
        let mut m = vec![0i64, 0];
        for (j, col) in [(1usize, 0usize), (2, 1)] {
            for i in 1..=2 {
                let k = reg.index_of(&format!("a{i}{j}")).unwrap();
                m[col] -= e[k] as i64;
            }
        }
        if w.as_ref().is_some_and(|x| *x != m) {
            return None;
        }
        w = Some(m);
    }
    w
}

/// Weight-μ part of H*(𝔫, ℚ[a][det⁻¹]) as (class, left weight). The det⁻¹
/// localization is handled by moving μ by multiples of χ₁+χ₂ into the
/// polynomial range, separately for H⁰ and H¹.
pub(crate) fn extract_gl2(mu: &[i64]) -> Result<(Vec<(String, Vec<i64>)>, Vec<(String, Vec<i64>)>, Option<String>), MfError> {
    let m1 = mu.first().copied().unwrap_or(0);
    let m2 = mu.get(1).copied().unwrap_or(0);
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    let mut witness = None;
    // H⁰: a11^i a21^j det^{m2}, i + j = m1 − m2
    let k0 = m1 - m2;
    if k0 >= 0 {
        let e = super::ce::extract_weight(&CEPresentation::delta2(k0 as usize), &[k0])?;
        if !e.stable {
            witness = Some("H⁰ extraction not stable".into());
        }
        for p in &e.h0 {
            for b in &p.basis {
                h0.push((det_label(b, m2), add(&p.left, &[m2, m2])));
            }
        }
    }
    // H¹: a12^i a22^j det^{m1+1} ⊗ 𝔫*, i + j = m2 − m1 − 2
    let k1 = m2 - m1 - 2;
    if k1 >= 0 {
        let shift = m1 + 1;
        let e = super::ce::extract_weight(&CEPresentation::delta2(k1 as usize), &[-1, m2 - shift])?;
        for p in &e.h1 {
            for b in &p.basis {
                h1.push((det_label(b, shift), add(&p.left, &[shift, shift])));
            }
        }
    }
    Ok((h0, h1, witness))
}

fn det_label(b: &str, m: i64) -> String {
    if m == 0 {
        b.to_string()
    } else {
        format!("{b}·det^{m}")
    }
}

/// C∥⟨α,β⟩ ⋆ C•⟨γ,δ⟩: the unit law replayed step by step.
pub fn unit_law(l: &GradedTwist, r: &GradedTwist) -> Result<Convolution, MfError> {
    let x = x_plain();
    let xp = conjugate(&x, "a");
    let red_ab = det1(&["a", "b"]);
    let m12 = KoszulMF::new(conv_registry(), Some(red_ab.clone()), named_rows(Named::Par, &x, "y1", "y2", "a"), w_circ(&x, "y1", "y2", "a"))?;
    let dot = KoszulMF::new(conv_registry(), Some(red_ab.clone()), named_rows(Named::Dot, &x, "y1", "y2", "a"), w_circ(&x, "y1", "y2", "a"))?;
    let mut s = Script::new(m12.clone());
    s.set("pullback", "π12*C∥".into(), m12.clone())?;
    let pull = [("xm", xp[0].clone()), ("x0", xp[1].clone()), ("x1", xp[2].clone()), ("y1", var("y2")), ("y2", var("y3")), ("a11", var("b11")), ("a12", var("b12")), ("a21", var("b21")), ("a22", var("b22"))];
    let m23 = dot.map_ring(&pull, conv_registry(), Some(red_ab))?;
    s.set("pullback", "π23*C•".into(), m23.clone())?;
    let c2 = tensor(&m12, &m23)?;
    s.set("tensor", "π12*C∥ ⊗ π23*C•".into(), c2)?;
    // C∥ restricts a to the Borel
    s.restrict(1, "a21")?;
    let a11 = var("a11");
    s.transform(0, 1, a11.pow(2))?;
    s.restrict(1, "y2")?;
    let bc = mul2(&adj(&mat("a")), &mat("c"));
    let z = |p: &LaurentPoly| p.substitute(&[("a21", int(0))], conv_registry());
    let sub = [("b11", z(&bc[0][0])?), ("b12", z(&bc[0][1])?), ("b21", z(&bc[1][0])?), ("b22", z(&bc[1][1])?)];
    let mut ra = QuotientReducer::det_relation(conv_registry(), "a", int(1))?;
    ra.rhs = z(&ra.rhs)?;
    let red = QuotientReducer::new(conv_registry(), vec![ra, QuotientReducer::det_relation(conv_registry(), "c", int(1))?])?;
    let m = s.state.map_ring(&sub, conv_registry(), Some(red))?;
    s.set("substitute", "b ↦ adj(a)·c, a21 = 0, det a = det c = 1".into(), m)?;
    let c11 = var("c11");
    let b11a = s.state.reduce(&(&a11 * &z(&bc[0][0])?));
    s.transform(0, 1, &b11a.pow(2) - &c11.pow(2))?;
    let p13 = named_rows(Named::Dot, &x, "y1", "y3", "c");
    s.compare("π13*C•(c, y1, y3)", &p13)?;

    // gauge: H*(𝔫, ℚ[a11, a12, a22]) on the Borel; a11 and a22 are units, so
    // the weight-μ part is a11^μ₁a22^μ₂ times the weight-zero part
    let borel = borel_registry();
    let v = |n: &str| LaurentPoly::var(&borel, n, 1);
    let e = super::ce::extract_weight(&CEPresentation::new(&borel, &[("a12", -v("a11"))], 2)?, &[])?;
    let basis: Vec<String> = e.h0.iter().flat_map(|p| p.basis.clone()).collect();
    let ok = basis == ["1"] && e.h1.is_empty() && e.stable;
    let mu = add(&l.right, &r.left);
    let unit = format!("a11^{} a22^{}", mu.first().unwrap_or(&0), mu.get(1).unwrap_or(&0));
    s.record("ce_homology_rank2", format!("δ₂ on ℚ[a11^±, a12, a22^±]: weight 0 → {basis:?}, μ = {} → {unit}", format_chi(&mu)), (!ok).then(|| format!("{basis:?}")))?;
    let summands = vec![QTwisted { named: Named::Dot, twist: GradedTwist::chars(&add(&l.left, &mu), &r.right).normalized(), odd: false }];
    let left = QTwisted { named: Named::Par, twist: l.clone(), odd: false };
    let right = QTwisted { named: Named::Dot, twist: r.clone(), odd: false };
    let q_form = summands.iter().map(|t| twist_to_q(&t.twist) - twist_to_q(r)).collect();
    Ok(Convolution { left, right, log: s.log, reduced: Some(s.state), summands, q_form })
}

fn borel_registry() -> Arc<VarRegistry> {
    let g = gl2_registry("a");
    let vars: Vec<(String, VarWeight)> = ["a11", "a12", "a22"].iter().map(|n| (n.to_string(), g.weight(g.index_of(n).unwrap()).clone())).collect();
    VarRegistry::new(&vars).unwrap()
}

/// Scripted pairs: C•⋆C• and C∥⋆C• with arbitrary character twists.
pub fn convolution_n2(left: &QTwisted, right: &QTwisted) -> Result<Convolution, MfError> {
    match (left.named, right.named) {
        (Named::Dot, Named::Dot) => blob_square(&left.twist, &right.twist),
        (Named::Par, Named::Dot) => unit_law(&left.twist, &right.twist),
        _ => Err(MfError::StepFailed { step: 0, operation: "convolution_n2".into(), witness: format!("no script for {} ⋆ {}", left.named.name(), right.named.name()) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_presentations_square() {
        for k in [Named::Par, Named::Dot, Named::Plus] {
            let m = named_x0(k).unwrap();
            assert!(m.check_square().is_ok(), "{}", k.name());
            assert!(m.check_t_weights().is_ok(), "{}", k.name());
        }
    }

    #[test]
    fn conjugation_matches_hand_expansion() {
        let x = x_plain();
        let xp = conjugate(&x, "a");
        let (a11, a21) = (var("a11"), var("a21"));
        let hand = &(&(&a11.pow(2) * &x[0]) - &(&int(2) * &(&(&x[1] * &a11) * &a21))) - &(&x[2] * &a21.pow(2));
        assert_eq!(xp[0], hand);
        let ident = conjugate(&x, "a").iter().map(|p| p.substitute(&[("a11", int(1)), ("a12", int(0)), ("a21", int(0)), ("a22", int(1))], conv_registry()).unwrap()).collect::<Vec<_>>();
        assert_eq!(ident, x.to_vec());
    }

    #[test]
    fn blob_square_replicates() {
        let t = GradedTwist::chars(&[], &[1]);
        let c = blob_square(&t, &t).unwrap();
        assert!(c.passed());
        let s: Vec<String> = c.summands.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["C•⟨χ1,χ1⟩", "C•⟨χ2,χ1⟩"]);
        let mut q = c.q_form.clone();
        q.sort();
        assert_eq!(q, vec![2, 4]);
    }

    #[test]
    fn unit_law_holds() {
        let c = unit_law(&GradedTwist::none(), &GradedTwist::none()).unwrap();
        assert!(c.passed());
        assert_eq!(c.summands, vec![QTwisted { named: Named::Dot, twist: GradedTwist::none(), odd: false }]);
    }
}
