//! Exterior algebra over Laurent polynomials in a formal `π`.
//!
//! Wedge monomials `e^I` are stored as bitmasks and always read in increasing
//! index order; `e_i` and its contraction pick up `(-1)^{#{j in I : j < i}}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bhmat::BHMatrix;
use crate::rational::{fmt_q, pow_q, qi, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("element is not homogeneous in exterior degree")]
    Inhomogeneous,
}

/// Finite Laurent polynomial `sum_k c_k π^k` with exact rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiLaurent {
    coeffs: BTreeMap<i64, Q>,
}

impl PiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Q::one(), 0)
    }

    /// `c π^k`
    pub fn term(c: Q, k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        PiLaurent { coeffs }
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::term(qi(n), 0)
    }

    pub fn pi_pow(k: i64) -> Self {
        Self::term(Q::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    /// The single term `(c, k)` if the element is a monomial in `π`.
    pub fn as_monomial(&self) -> Option<(Q, i64)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(k, c)| (c.clone(), *k))
        } else {
            None
        }
    }

    pub fn min_power(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PiLaurent { coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiplies by `π^s`.
    pub fn shift(&self, s: i64) -> Self {
        PiLaurent { coeffs: self.coeffs.iter().map(|(k, v)| (k + s, v.clone())).collect() }
    }

    /// Specializes `π` to a nonzero rational.
    pub fn eval(&self, pi: &Q) -> Q {
        self.coeffs.iter().fold(Q::zero(), |a, (k, c)| a + c * pow_q(pi, *k))
    }
}

impl From<Q> for PiLaurent {
    fn from(c: Q) -> Self {
        PiLaurent::constant(c)
    }
}

impl AddAssign<&PiLaurent> for PiLaurent {
    fn add_assign(&mut self, rhs: &PiLaurent) {
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, c.clone());
        }
    }
}

impl Add for &PiLaurent {
    type Output = PiLaurent;
    fn add(self, rhs: &PiLaurent) -> PiLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PiLaurent {
    type Output = PiLaurent;
    fn add(mut self, rhs: PiLaurent) -> PiLaurent {
        self += &rhs;
        self
    }
}

impl Neg for &PiLaurent {
    type Output = PiLaurent;
    fn neg(self) -> PiLaurent {
        PiLaurent { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for PiLaurent {
    type Output = PiLaurent;
    fn neg(self) -> PiLaurent {
        -&self
    }
}

impl Sub for &PiLaurent {
    type Output = PiLaurent;
    fn sub(self, rhs: &PiLaurent) -> PiLaurent {
        self + &(-rhs)
    }
}

impl Sub for PiLaurent {
    type Output = PiLaurent;
    fn sub(self, rhs: PiLaurent) -> PiLaurent {
        &self - &rhs
    }
}

impl Mul for &PiLaurent {
    type Output = PiLaurent;
    fn mul(self, rhs: &PiLaurent) -> PiLaurent {
        let mut out = PiLaurent::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for PiLaurent {
    type Output = PiLaurent;
    fn mul(self, rhs: PiLaurent) -> PiLaurent {
        &self * &rhs
    }
}

impl fmt::Display for PiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c < &Q::zero();
            let mag = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let cs = fmt_q(&mag);
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "π")?,
                (1, false) => write!(f, "{cs}π")?,
                (k, true) => write!(f, "π^{k}")?,
                (k, false) => write!(f, "{cs}π^{k}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for PiLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, String)> = self.coeffs.iter().map(|(k, c)| (*k, fmt_q(c))).collect();
        v.serialize(s)
    }
}

/// A wedge monomial `e^I`, bit `i` set when `e_{i+1}` is present.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wedge(pub u32);

impl Wedge {
    pub const EMPTY: Wedge = Wedge(0);

    pub fn from_indices(idx: &[usize]) -> Self {
        Wedge(idx.iter().fold(0, |a, &i| a | (1 << i)))
    }

    pub fn full(n: usize) -> Self {
        Wedge(if n == 0 { 0 } else { u32::MAX >> (32 - n) })
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    fn sign_before(self, i: usize) -> i64 {
        if (self.0 & ((1u32 << i) - 1)).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `e_i ∧ e^I` as a sign and a monomial; `None` when `i ∈ I`.
    pub fn mul(self, i: usize) -> Option<(i64, Wedge)> {
        if self.contains(i) {
            None
        } else {
            Some((self.sign_before(i), Wedge(self.0 | 1 << i)))
        }
    }

    /// Contraction `e_i^∨ ⌟ e^I`; `None` when `i ∉ I`.
    pub fn contract(self, i: usize) -> Option<(i64, Wedge)> {
        if self.contains(i) {
            Some((self.sign_before(i), Wedge(self.0 & !(1 << i))))
        } else {
            None
        }
    }

    pub fn complement(self, n: usize) -> Wedge {
        Wedge(!self.0 & Wedge::full(n).0)
    }

    /// `e1e2`-style rendering, empty string for `e^∅`.
    pub fn render(self) -> String {
        self.indices().map(|i| format!("e{}", i + 1)).collect()
    }
}

/// Element of `Λ(F^n) ⊗ F[π, π^{-1}]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtElement {
    terms: BTreeMap<Wedge, PiLaurent>,
}

impl ExtElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Wedge::EMPTY, PiLaurent::one())
    }

    pub fn monomial(w: Wedge, c: PiLaurent) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &c);
        e
    }

    pub fn basis(idx: &[usize]) -> Self {
        Self::monomial(Wedge::from_indices(idx), PiLaurent::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Wedge, &PiLaurent)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn coeff(&self, w: Wedge) -> PiLaurent {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Wedge, c: &PiLaurent) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &PiLaurent) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(*w, &(x * c));
        }
        out
    }

    /// `|I|` of a homogeneous element.
    pub fn ext_degree(&self) -> Result<usize, CliffordError> {
        let mut it = self.terms.keys().map(|w| w.len());
        let Some(d) = it.next() else { return Ok(0) };
        if it.all(|x| x == d) {
            Ok(d)
        } else {
            Err(CliffordError::Inhomogeneous)
        }
    }
}

impl Add for &ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, c);
        }
        out
    }
}

impl Sub for &ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: &ExtElement) -> ExtElement {
        self + &rhs.scale(&PiLaurent::int(-1))
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let m = w.render();
                if m.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}){m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for ExtElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(Vec<usize>, &PiLaurent)> =
            self.terms.iter().map(|(w, c)| (w.indices().map(|i| i + 1).collect(), c)).collect();
        v.serialize(s)
    }
}

pub fn mul_e(i: usize, v: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (w, c) in v.terms() {
        if let Some((s, w2)) = w.mul(i) {
            out.add_term(w2, &c.scale(&qi(s)));
        }
    }
    out
}

pub fn contract_e(i: usize, v: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (w, c) in v.terms() {
        if let Some((s, w2)) = w.contract(i) {
            out.add_term(w2, &c.scale(&qi(s)));
        }
    }
    out
}

/// `E_{A,i} = π sum_j A_{ij} e_j`, as a left multiplication.
pub fn e_op(m: &BHMatrix, i: usize, v: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for j in 0..m.n() {
        let a = m.a(i, j);
        if a != 0 {
            out = &out + &mul_e(j, v).scale(&PiLaurent::term(qi(a), 1));
        }
    }
    out
}

/// `E^∨_{A,i} = π^{-1} sum_j (A^{-1})_{ji} e_j^∨`, as a contraction.
pub fn e_vee_op(m: &BHMatrix, i: usize, v: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for j in 0..m.n() {
        let a = &m.inv()[j][i];
        if !a.is_zero() {
            out = &out + &contract_e(j, v).scale(&PiLaurent::term(a.clone(), -1));
        }
    }
    out
}

/// `E_{A^T,1} ∧ .. ∧ E_{A^T,n}`.
pub fn volume(m: &BHMatrix) -> ExtElement {
    let t = m.transpose();
    (0..m.n()).rev().fold(ExtElement::one(), |acc, i| e_op(&t, i, &acc))
}

/// Star of a single wedge monomial, coefficient 1.
pub fn star_wedge(m: &BHMatrix, w: Wedge) -> ExtElement {
    let t = m.transpose();
    let idx: Vec<usize> = w.indices().collect();
    idx.iter().rev().fold(volume(m), |acc, &i| e_vee_op(&t, i, &acc))
}

/// The operator `*^A`, extended linearly.
pub fn star(m: &BHMatrix, v: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (w, c) in v.terms() {
        out = &out + &star_wedge(m, w).scale(c);
    }
    out
}

/// Star images of every wedge monomial, indexed by mask.
#[derive(Debug, Clone)]
pub struct StarTable {
    images: Vec<ExtElement>,
}

impl StarTable {
    pub fn new(m: &BHMatrix) -> Self {
        let n = m.n();
        StarTable { images: (0..1u32 << n).map(|w| star_wedge(m, Wedge(w))).collect() }
    }

    pub fn get(&self, w: Wedge) -> &ExtElement {
        &self.images[w.0 as usize]
    }
}

pub fn all_wedges(n: usize) -> impl Iterator<Item = Wedge> {
    (0..1u32 << n).map(Wedge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn m23() -> BHMatrix {
        BHMatrix::validate(vec![vec![2, 1], vec![0, 3]]).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let e2 = ExtElement::basis(&[1]);
        assert_eq!(mul_e(0, &e2), ExtElement::basis(&[0, 1]));
        assert_eq!(contract_e(0, &ExtElement::basis(&[0, 1])), e2);
        assert!(mul_e(0, &ExtElement::basis(&[0])).is_zero());
        // e2 ∧ e1 = -e1e2
        let e1 = ExtElement::basis(&[0]);
        assert_eq!(mul_e(1, &e1), ExtElement::basis(&[0, 1]).scale(&PiLaurent::int(-1)));
    }

    #[test]
    fn e_generators_on_transpose() {
        let t = m23().transpose();
        let one = ExtElement::one();
        assert_eq!(e_op(&t, 0, &one), ExtElement::basis(&[0]).scale(&PiLaurent::term(qi(2), 1)));
        let want = &ExtElement::basis(&[0]).scale(&PiLaurent::pi_pow(1))
            + &ExtElement::basis(&[1]).scale(&PiLaurent::term(qi(3), 1));
        assert_eq!(e_op(&t, 1, &one), want);
    }

    #[test]
    fn star_example() {
        let m = m23();
        assert_eq!(star(&m, &ExtElement::one()), ExtElement::basis(&[0, 1]).scale(&PiLaurent::term(qi(6), 2)));
        assert_eq!(
            star(&m, &ExtElement::basis(&[1])),
            ExtElement::basis(&[0]).scale(&PiLaurent::term(qi(-2), 1))
        );
        // negative with wedges kept in increasing index order
        assert_eq!(star(&m, &ExtElement::basis(&[0, 1])), ExtElement::one().scale(&PiLaurent::int(-1)));
    }

    #[test]
    fn commutator_is_delta() {
        let m = BHMatrix::validate(vec![vec![3, 1, 0], vec![0, 2, 1], vec![1, 0, 2]]).unwrap();
        for w in all_wedges(3) {
            let v = ExtElement::monomial(w, PiLaurent::one());
            for i in 0..3 {
                for j in 0..3 {
                    let c = &e_op(&m, i, &e_vee_op(&m, j, &v)) + &e_vee_op(&m, j, &e_op(&m, i, &v));
                    let want = if i == j { v.clone() } else { ExtElement::zero() };
                    assert_eq!(c, want, "i={i} j={j} w={w:?}");
                }
            }
        }
    }

    #[test]
    fn ext_degree_cases() {
        assert_eq!(ExtElement::basis(&[0, 1]).ext_degree(), Ok(2));
        assert_eq!(ExtElement::one().ext_degree(), Ok(0));
        assert_eq!(ExtElement::basis(&[1]).scale(&PiLaurent::pi_pow(3)).ext_degree(), Ok(1));
        let mixed = &ExtElement::one() + &ExtElement::basis(&[0]);
        assert_eq!(mixed.ext_degree(), Err(CliffordError::Inhomogeneous));
    }

    #[test]
    fn laurent_arithmetic() {
        let a = PiLaurent::term(qf(1, 2), -1) + PiLaurent::int(3);
        let b = PiLaurent::term(qi(2), 1);
        assert_eq!(&a * &b, PiLaurent::int(1) + PiLaurent::term(qi(6), 1));
        assert!((&a - &a).is_zero());
        assert_eq!(a.eval(&qi(2)), qf(13, 4));
        assert_eq!(format!("{}", PiLaurent::term(qi(-6), 2)), "-6π^2");
        assert_eq!(format!("{}", a), "1/2π^-1 + 3");
    }
}
