//! The monomial complex `R_A ⊗ Λ` and the operators acting on it.
//!
//! A monomial is `x^γ y^λ e^I`. Write `u = γ A^{-1}` and `c = λ A^{-T}`;
//! `λ` is admissible when `c ≥ 0`, and the monomial is zero in `R_A` as soon
//! as some index has both `γ_i > 0` and `c_i > 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bhmat::BHMatrix;
use crate::clifford::{contract_e, e_op, e_vee_op, ExtElement, PiLaurent, StarTable, Wedge};
use crate::rational::{factorial, fmt_q, pow_q, qi, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("monomial {0} is not in S_A (some entry of γA^-1 is negative)")]
    NotInSA(String),
    #[error("y-exponent {0:?} is not admissible (λA^-T has a negative entry)")]
    NotAdmissible(Vec<u32>),
    #[error("prime {p} divides det A = {det}")]
    PrimeDividesDet { p: u64, det: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub gamma: Vec<u32>,
    pub lam: Vec<u32>,
    pub wedge: Wedge,
}

fn sup(k: u32) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if k == 1 {
        return String::new();
    }
    k.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

impl Monomial {
    pub fn new(gamma: Vec<u32>, lam: Vec<u32>, idx: &[usize]) -> Self {
        assert_eq!(gamma.len(), lam.len());
        Monomial { gamma, lam, wedge: Wedge::from_indices(idx) }
    }

    pub fn one(n: usize) -> Self {
        Monomial { gamma: vec![0; n], lam: vec![0; n], wedge: Wedge::EMPTY }
    }

    /// `x^γ e^I`
    pub fn x(gamma: &[u32], idx: &[usize]) -> Self {
        Monomial::new(gamma.to_vec(), vec![0; gamma.len()], idx)
    }

    /// `y^λ`
    pub fn y(lam: &[u32]) -> Self {
        Monomial::new(vec![0; lam.len()], lam.to_vec(), &[])
    }

    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    pub fn ext(&self) -> usize {
        self.wedge.len()
    }

    pub fn with_wedge(&self, wedge: Wedge) -> Self {
        Monomial { wedge, ..self.clone() }
    }

    /// Human form, e.g. `x1x2²e1e2` or `y1²y2`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, &g) in self.gamma.iter().enumerate() {
            if g > 0 {
                s += &format!("x{}{}", i + 1, sup(g));
            }
        }
        for (i, &l) in self.lam.iter().enumerate() {
            if l > 0 {
                s += &format!("y{}{}", i + 1, sup(l));
            }
        }
        s += &self.wedge.render();
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Finite linear combination of monomials with Laurent coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainElement {
    terms: BTreeMap<Monomial, PiLaurent>,
}

impl ChainElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(m, PiLaurent::one())
    }

    pub fn term(m: Monomial, c: PiLaurent) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PiLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> PiLaurent {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &PiLaurent) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&mut self, other: &ChainElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale(&self, c: &PiLaurent) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    pub fn sub(&self, other: &ChainElement) -> Self {
        let mut out = self.clone();
        out.add(&other.scale(&PiLaurent::int(-1)));
        out
    }

    /// Specializes `π`, giving rational coefficients.
    pub fn eval(&self, pi: &Q) -> BTreeMap<Monomial, Q> {
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), c.eval(pi)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.gamma.iter().chain(m.lam.iter()).copied())
            .max()
            .unwrap_or(0)
    }
}

impl FromIterator<(Monomial, PiLaurent)> for ChainElement {
    fn from_iter<T: IntoIterator<Item = (Monomial, PiLaurent)>>(iter: T) -> Self {
        let mut e = ChainElement::zero();
        for (m, c) in iter {
            e.add_term(m, &c);
        }
        e
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    gamma: &'a [u32],
    lam: &'a [u32],
    #[serde(rename = "I")]
    idx: Vec<usize>,
    coeff: &'a PiLaurent,
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct M<'a> {
            gamma: &'a [u32],
            lam: &'a [u32],
            #[serde(rename = "I")]
            idx: Vec<usize>,
        }
        M { gamma: &self.gamma, lam: &self.lam, idx: self.wedge.indices().map(|i| i + 1).collect() }.serialize(s)
    }
}

impl Serialize for ChainElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                gamma: &m.gamma,
                lam: &m.lam,
                idx: m.wedge.indices().map(|i| i + 1).collect(),
                coeff: c,
            })
            .collect();
        v.serialize(s)
    }
}

/// Eigenvalues of the diagonal (or, for `qhat`, E-diagonal) gradings.
///
/// `qhat` and `qhatvee` are `None` when the wedge part is not an eigenvector
/// of `Q̂`, which happens off the E-adapted basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub q: i64,
    pub qvee: i64,
    pub qhat: Option<i64>,
    pub qhatvee: Option<i64>,
    pub ext: i64,
    pub sharp: i64,
    pub sharpvee: i64,
}

impl GradingReport {
    pub fn total(&self) -> i64 {
        self.q + self.qvee
    }

    /// `(# - #^∨) / 2`, possibly a half-integer, returned doubled.
    pub fn sharp_diff(&self) -> i64 {
        self.sharp - self.sharpvee
    }
}

/// A matrix together with the cached data every operator needs.
#[derive(Debug, Clone)]
pub struct Cx {
    pub m: BHMatrix,
    pub mt: BHMatrix,
    star: StarTable,
    n: usize,
}

impl Cx {
    pub fn new(m: &BHMatrix) -> Self {
        Cx { m: m.clone(), mt: m.transpose(), star: StarTable::new(m), n: m.n() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The complex of the transposed matrix.
    pub fn dual(&self) -> Cx {
        Cx::new(&self.mt)
    }

    pub fn u(&self, gamma: &[u32]) -> Vec<Q> {
        self.m.x_charges(gamma)
    }

    pub fn c(&self, lam: &[u32]) -> Vec<Q> {
        let l: Vec<i64> = lam.iter().map(|&x| x as i64).collect();
        self.m.y_charges(&l)
    }

    pub fn is_admissible(&self, lam: &[u32]) -> bool {
        self.c(lam).iter().all(|c| !c.is_negative())
    }

    pub fn in_sa(&self, gamma: &[u32]) -> bool {
        self.u(gamma).iter().all(|u| !u.is_negative())
    }

    fn vanishes_with(&self, gamma: &[u32], c: &[Q]) -> bool {
        gamma.iter().zip(c).any(|(&g, c)| g > 0 && c.is_positive())
    }

    /// Whether the monomial is the zero class of `R_A`.
    pub fn vanishes(&self, mono: &Monomial) -> bool {
        self.vanishes_with(&mono.gamma, &self.c(&mono.lam))
    }

    /// Drops terms in the quotient ideal.
    pub fn canonical(&self, v: &ChainElement) -> ChainElement {
        v.terms().filter(|(m, _)| !self.vanishes(m)).map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    /// `d_A = sum_i (θ_i + φ_i) e_i`.
    pub fn apply_d(&self, v: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        for i in 0..self.n {
            self.d_index(i, v, &mut out);
        }
        out
    }

    /// `d_{A,i} = (θ_i + φ_i) e_i`.
    pub fn apply_d_i(&self, i: usize, v: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        self.d_index(i, v, &mut out);
        out
    }

    fn d_index(&self, i: usize, v: &ChainElement, out: &mut ChainElement) {
        for (mono, coef) in v.terms() {
            let Some((s, w)) = mono.wedge.mul(i) else { continue };
            let c = self.c(&mono.lam);
            if mono.gamma[i] > 0 {
                let k = qi(s * mono.gamma[i] as i64);
                out.add_term(mono.with_wedge(w), &coef.scale(&k));
            }
            for j in 0..self.n {
                let a = self.m.a(j, i);
                if a == 0 {
                    continue;
                }
                let g: Vec<u32> =
                    mono.gamma.iter().zip(self.m.entries()[j].iter()).map(|(g, r)| g + *r as u32).collect();
                if self.vanishes_with(&g, &c) {
                    continue;
                }
                let t = Monomial { gamma: g, lam: mono.lam.clone(), wedge: w };
                out.add_term(t, &coef.scale(&qi(s * a)).shift(1));
            }
        }
    }

    /// `d_A^∨ = sum_i (T_i^∨ + ψ_i^∨) e_i^∨`.
    pub fn apply_dvee(&self, v: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        for i in 0..self.n {
            self.dvee_index(i, v, &mut out);
        }
        out
    }

    /// `d_{A,i}^∨ = (T_i^∨ + ψ_i^∨) e_i^∨`.
    pub fn apply_dvee_i(&self, i: usize, v: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        self.dvee_index(i, v, &mut out);
        out
    }

    fn dvee_index(&self, i: usize, v: &ChainElement, out: &mut ChainElement) {
        for (mono, coef) in v.terms() {
            let Some((s, w)) = mono.wedge.contract(i) else { continue };
            let c = self.c(&mono.lam);
            if !c[i].is_zero() {
                let k = &c[i] * qi(s);
                out.add_term(mono.with_wedge(w), &coef.scale(&k).shift(-1));
            }
            let lam: Vec<u32> = (0..self.n).map(|k| mono.lam[k] + self.m.a(k, i) as u32).collect();
            let t = Monomial { gamma: mono.gamma.clone(), lam, wedge: w };
            if !self.vanishes(&t) {
                out.add_term(t, &coef.scale(&qi(s)));
            }
        }
    }

    /// Eigenvalue of `Q_{A,i}^∨ = P_i^∨ e_i^∨ e_i` on a monomial.
    pub fn qvee_i(&self, i: usize, mono: &Monomial) -> i64 {
        (!mono.wedge.contains(i) && self.c(&mono.lam)[i].is_positive()) as i64
    }

    /// Eigenvalue of `Q_{A,i} = e_i e_i^∨ + Q_{A,i}^∨`.
    pub fn q_i(&self, i: usize, mono: &Monomial) -> i64 {
        mono.wedge.contains(i) as i64 + self.qvee_i(i, mono)
    }

    /// Applies a diagonal operator given by its eigenvalue on monomials.
    pub fn diagonal(&self, v: &ChainElement, f: impl Fn(&Monomial) -> i64) -> ChainElement {
        v.terms().map(|(m, c)| (m.clone(), c.scale(&qi(f(m))))).collect()
    }

    pub fn apply_total(&self, v: &ChainElement) -> ChainElement {
        let mut out = self.apply_d(v);
        out.add(&self.apply_dvee(v));
        out
    }

    fn check_sa(&self, v: &ChainElement) -> Result<(), ChainError> {
        for (m, _) in v.terms() {
            if !self.in_sa(&m.gamma) {
                return Err(ChainError::NotInSA(m.render()));
            }
        }
        Ok(())
    }

    /// `hat d_{A,i} = (T_i + ψ_i) E_{A,i}`.
    pub fn apply_hat_d(&self, i: usize, v: &ChainElement) -> Result<ChainElement, ChainError> {
        self.check_sa(v)?;
        let mut out = ChainElement::zero();
        for (mono, coef) in v.terms() {
            let ev = e_op(&self.m, i, &ExtElement::monomial(mono.wedge, coef.clone()));
            if ev.is_zero() {
                continue;
            }
            let u = self.u(&mono.gamma)[i].clone();
            let g: Vec<u32> =
                mono.gamma.iter().zip(self.m.entries()[i].iter()).map(|(g, r)| g + *r as u32).collect();
            let shifted = Monomial { gamma: g, lam: mono.lam.clone(), wedge: Wedge::EMPTY };
            let keep_shift = !self.vanishes(&shifted);
            for (w, c) in ev.terms() {
                if !u.is_zero() {
                    out.add_term(mono.with_wedge(w), &c.scale(&u).shift(-1));
                }
                if keep_shift {
                    out.add_term(shifted.with_wedge(w), c);
                }
            }
        }
        Ok(out)
    }

    /// The eigenvalue of `Q̂` on `x^γ e^I`, if `e^I` is an eigenvector.
    fn qhat_eigen(&self, mono: &Monomial) -> Option<i64> {
        let v = ExtElement::monomial(mono.wedge, PiLaurent::one());
        let img = self.qhat_ext(&mono.gamma, &v);
        if img.is_zero() {
            return Some(0);
        }
        let c = img.coeff(mono.wedge);
        let (k, pw) = c.as_monomial()?;
        if pw != 0 || img.terms().count() != 1 || !k.is_integer() {
            return None;
        }
        k.to_integer().try_into().ok()
    }

    /// `Q̂ = sum_i P̂_i E_i E_i^∨` on the wedge part, `P̂_i = [u_i ≠ 0]`.
    fn qhat_ext(&self, gamma: &[u32], v: &ExtElement) -> ExtElement {
        let u = self.u(gamma);
        let mut out = ExtElement::zero();
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                out = &out + &e_op(&self.m, i, &e_vee_op(&self.m, i, v));
            }
        }
        out
    }

    pub fn gradings(&self, mono: &Monomial) -> Result<GradingReport, ChainError> {
        if !self.is_admissible(&mono.lam) {
            return Err(ChainError::NotAdmissible(mono.lam.clone()));
        }
        let u = self.u(&mono.gamma);
        if u.iter().any(|x| x.is_negative()) {
            return Err(ChainError::NotInSA(mono.render()));
        }
        let c = self.c(&mono.lam);
        let ext = mono.ext() as i64;
        let qvee = (0..self.n).filter(|&i| !mono.wedge.contains(i) && c[i].is_positive()).count() as i64;
        let qhat = self.qhat_eigen(mono);
        Ok(GradingReport {
            q: ext + qvee,
            qvee,
            qhat,
            qhatvee: qhat.map(|h| self.n as i64 - ext + h),
            ext,
            sharp: u.iter().filter(|x| !x.is_integer()).count() as i64,
            sharpvee: c.iter().filter(|x| !x.is_integer()).count() as i64,
        })
    }

    /// Scales each monomial by `base^{f(mono)}`.
    fn diag_pow(&self, v: &ChainElement, base: &Q, f: impl Fn(&Monomial) -> i64) -> ChainElement {
        v.terms().map(|(m, c)| (m.clone(), c.scale(&pow_q(base, f(m))))).collect()
    }

    pub fn pow_q(&self, base: &Q, s: i64, v: &ChainElement) -> ChainElement {
        self.diag_pow(v, base, |m| {
            let c = self.c(&m.lam);
            let qv = (0..self.n).filter(|&i| !m.wedge.contains(i) && c[i].is_positive()).count() as i64;
            s * (m.ext() as i64 + qv)
        })
    }

    pub fn pow_qvee(&self, base: &Q, s: i64, v: &ChainElement) -> ChainElement {
        self.diag_pow(v, base, |m| {
            let c = self.c(&m.lam);
            s * (0..self.n).filter(|&i| !m.wedge.contains(i) && c[i].is_positive()).count() as i64
        })
    }

    pub fn pow_ext(&self, base: &Q, s: i64, shift: i64, v: &ChainElement) -> ChainElement {
        self.diag_pow(v, base, |m| s * m.ext() as i64 + shift)
    }

    /// `base^{s Q̂}` through the idempotents `E_i E_i^∨`:
    /// `prod_i (1 + (base^s - 1) P̂_i E_i E_i^∨)`.
    pub fn pow_qhat(&self, base: &Q, s: i64, v: &ChainElement) -> Result<ChainElement, ChainError> {
        self.check_sa(v)?;
        let f = PiLaurent::constant(pow_q(base, s) - Q::one());
        let mut out = ChainElement::zero();
        for (mono, coef) in v.terms() {
            let u = self.u(&mono.gamma);
            let mut w = ExtElement::monomial(mono.wedge, coef.clone());
            for (i, ui) in u.iter().enumerate() {
                if !ui.is_zero() {
                    let proj = e_op(&self.m, i, &e_vee_op(&self.m, i, &w));
                    w = &w + &proj.scale(&f);
                }
            }
            for (wd, c) in w.terms() {
                out.add_term(mono.with_wedge(wd), c);
            }
        }
        Ok(out)
    }

    /// `Δ^A`: swap `γ ↔ λ` and apply `*^A` to the wedge part.
    pub fn delta(&self, v: &ChainElement) -> Result<ChainElement, ChainError> {
        self.check_sa(v)?;
        let mut out = ChainElement::zero();
        for (mono, coef) in v.terms() {
            let swapped = Monomial { gamma: mono.lam.clone(), lam: mono.gamma.clone(), wedge: Wedge::EMPTY };
            for (w, c) in self.star.get(mono.wedge).terms() {
                out.add_term(swapped.with_wedge(w), &(c * coef));
            }
        }
        Ok(out)
    }

    /// `Θ(x^γ e^I) = x^{γ+I} e^I` on an element with no `y` part.
    pub fn embed_de_rham(&self, v: &ChainElement) -> ChainElement {
        v.terms()
            .map(|(m, c)| {
                let gamma: Vec<u32> = (0..self.n).map(|i| m.gamma[i] + m.wedge.contains(i) as u32).collect();
                (Monomial { gamma, lam: m.lam.clone(), wedge: m.wedge }, c.clone())
            })
            .collect()
    }

    /// Twisted de Rham differential `sum_i (∂_i + π ∂_i W) dx_i` on `x`-forms.
    pub fn de_rham(&self, v: &ChainElement) -> ChainElement {
        let n = self.n;
        let mut out = ChainElement::zero();
        for (mono, coef) in v.terms() {
            for i in 0..n {
                let Some((s, w)) = mono.wedge.mul(i) else { continue };
                if mono.gamma[i] > 0 {
                    let mut g = mono.gamma.clone();
                    g[i] -= 1;
                    let t = Monomial { gamma: g, lam: mono.lam.clone(), wedge: w };
                    out.add_term(t, &coef.scale(&qi(s * mono.gamma[i] as i64)));
                }
                for j in 0..n {
                    let a = self.m.a(j, i);
                    if a == 0 {
                        continue;
                    }
                    let mut g: Vec<u32> =
                        mono.gamma.iter().zip(self.m.entries()[j].iter()).map(|(g, r)| g + *r as u32).collect();
                    g[i] -= 1;
                    let t = Monomial { gamma: g, lam: mono.lam.clone(), wedge: w };
                    out.add_term(t, &coef.scale(&qi(s * a)).shift(1));
                }
            }
        }
        out
    }

    fn check_prime(&self, p: u64) -> Result<(), ChainError> {
        if self.m.det().unsigned_abs().is_multiple_of(p) {
            Err(ChainError::PrimeDividesDet { p, det: self.m.det() })
        } else {
            Ok(())
        }
    }

    /// Chain-level Frobenius `Θ'' Θ' p^{Q+Q^∨}`, with the `Z`-series cut at
    /// total added-row count `order`.
    pub fn frobenius_chain(&self, p: u64, order: usize, v: &ChainElement) -> Result<ChainElement, ChainError> {
        self.check_prime(p)?;
        let n = self.n;
        let coeffs: Vec<Q> = (0..=order).map(|m| dwork_c(p, m as u64)).collect();
        let series = multi_indices(2 * n, order);
        let pq = qi(p as i64);
        let scaled = self.pow_q(&pq, 1, &self.pow_qvee(&pq, 1, v));
        let mut out = ChainElement::zero();
        for (mono, coef) in scaled.terms() {
            let pg: Vec<u32> = mono.gamma.iter().map(|g| g * p as u32).collect();
            let pl: Vec<u32> = mono.lam.iter().map(|l| l * p as u32).collect();
            for ms in &series {
                let (mx, my) = ms.split_at(n);
                let mut gamma = pg.clone();
                let mut lam = pl.clone();
                for i in 0..n {
                    for k in 0..n {
                        // x gains m_i copies of row i, y gains m'_j copies of column j
                        gamma[k] += mx[i] * self.m.a(i, k) as u32;
                        lam[k] += my[i] * self.m.a(k, i) as u32;
                    }
                }
                let t = Monomial { gamma, lam, wedge: mono.wedge };
                if self.vanishes(&t) {
                    continue;
                }
                let total: u32 = ms.iter().sum();
                let mut c = ms.iter().fold(Q::one(), |a, &m| a * &coeffs[m as usize]);
                if total % 2 == 1 {
                    c = -c;
                }
                out.add_term(t, &coef.scale(&c).shift(total as i64));
            }
        }
        Ok(out)
    }

    /// Both sides of `Δ Fr_A = Fr_{A^T} Δ p^{2ext-n} p^{-2Q̂} p^{2Q^∨}` on `v`.
    pub fn chain_commutation_sides(
        &self,
        dual: &Cx,
        p: u64,
        order: usize,
        v: &ChainElement,
    ) -> Result<(ChainElement, ChainElement), ChainError> {
        let lhs = self.delta(&self.frobenius_chain(p, order, v)?)?;
        let pq = qi(p as i64);
        let w = self.pow_qvee(&pq, 2, v);
        let w = self.pow_qhat(&pq, -2, &w)?;
        let w = self.pow_ext(&pq, 2, -(self.n as i64), &w);
        let rhs = dual.frobenius_chain(p, order, &self.delta(&w)?)?;
        Ok((lhs, rhs))
    }

    /// `Σ_i γ_i e_i^∨` style contraction helper used by tests: `e_i^∨` on the wedge part.
    pub fn contract(&self, i: usize, v: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        for (mono, coef) in v.terms() {
            let e = contract_e(i, &ExtElement::monomial(mono.wedge, coef.clone()));
            for (w, c) in e.terms() {
                out.add_term(mono.with_wedge(w), c);
            }
        }
        out
    }
}

/// Coefficient `c_m` of `e^{π(t^p - t)} = sum_m c_m (-π)^m t^m` once
/// `π^{p-1} = -p` is imposed.
pub fn dwork_c(p: u64, m: u64) -> Q {
    let mut s = Q::zero();
    let pq = qi(p as i64);
    for a in 0..=m / p {
        let sign = if ((p + 1) * a).is_multiple_of(2) { 1 } else { -1 };
        let den = factorial(a) * factorial(m - p * a);
        s += Q::new(sign.into(), den) / pow_q(&pq, a as i64);
    }
    s
}

/// All vectors in `N^k` with entry sum at most `order`.
pub fn multi_indices(k: usize, order: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, order as u32, &mut cur, &mut out);
    out
}

pub fn render_q(x: &Q) -> String {
    fmt_q(x)
}
