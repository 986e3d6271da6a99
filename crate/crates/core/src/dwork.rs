//! Ramified p-adic arithmetic and the twisted Frobenius on orbifold cohomology.
//!
//! Values live in `Q(π)` with `π^{p-1} = -p`, stored exactly as
//! `Σ_{r<p-1} b_r π^r` with rational `b_r`. A [`PadicPi`] pairs such a value
//! with an absolute precision: it is known modulo `π^prec`. Valuations are in
//! `π`-units, so `ord(p) = p - 1`.
//!
//! The Frobenius column of a basis monomial factors over coordinates: in each
//! fixed direction the Dwork series `Σ c_m (-π)^m x^{m·row}` meets the
//! reduction `x^{β+kA} = (-π)^{-k}(b)_{(k)} x^β` and the `π`-powers cancel, so
//! every factor is `(-π)^{-a} Σ_m c_m (b)_{(a+m)}`. The tail is bounded using
//! `ord_p(c_m (-π)^m) ≥ m(p-1)/p²` and `ord_p((b)_{(k)}) ≥ ord_p(k!)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bhmat::BHMatrix;
use crate::chaincx::{dwork_c, ChainElement, ChainError, Cx, Monomial};
use crate::clifford::PiLaurent;
use crate::cohoring::{duality_matrix_with, CohBasis, CohError, Reducer};
use crate::rational::{floor_i64, frac, is_prime, pochhammer, qi, residue_mod_p, vp, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DworkError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides det A = {det}")]
    PrimeDividesDet { p: u64, det: i64 },
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("no closed-form target for {0}")]
    OracleFallbackFailed(String),
    #[error(transparent)]
    Coh(#[from] CohError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Exact element `Σ_{r<p-1} b_r π^r` of `Q(π)`, `π^{p-1} = -p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiField {
    p: u64,
    c: Vec<Q>,
}

impl PiField {
    pub fn zero(p: u64) -> Self {
        PiField { p, c: vec![Q::zero(); (p - 1) as usize] }
    }

    pub fn from_q(p: u64, x: Q) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = x;
        z
    }

    /// `π^k` for any integer `k`.
    pub fn pi_pow(p: u64, k: i64) -> Self {
        let e = (p - 1) as i64;
        let (q, r) = (k.div_euclid(e), k.rem_euclid(e));
        let mut z = Self::zero(p);
        z.c[r as usize] = crate::rational::pow_q(&qi(-(p as i64)), q);
        z
    }

    pub fn from_laurent(p: u64, x: &PiLaurent) -> Self {
        let mut z = Self::zero(p);
        for (k, c) in x.terms() {
            z = &z + &Self::pi_pow(p, k).scale(c);
        }
        z
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, x: &Q) -> Self {
        PiField { p: self.p, c: self.c.iter().map(|c| c * x).collect() }
    }

    /// `π`-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let e = (self.p - 1) as i64;
        self.c.iter().enumerate().filter_map(|(r, b)| vp(b, self.p).map(|v| e * v + r as i64)).min()
    }

    /// `π`-adic digits from exponent `start` up to `end` (exclusive).
    /// Requires `valuation ≥ start`.
    pub fn digits(&self, start: i64, end: i64) -> Vec<u64> {
        let mut y = self * &Self::pi_pow(self.p, -start);
        let pinv = Self::pi_pow(self.p, -1);
        let mut out = Vec::new();
        for _ in start..end {
            let d = residue_mod_p(&y.c[0], self.p);
            out.push(d);
            y.c[0] -= qi(d as i64);
            y = &y * &pinv;
        }
        out
    }
}

impl std::ops::Add for &PiField {
    type Output = PiField;
    fn add(self, o: &PiField) -> PiField {
        PiField { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl std::ops::Sub for &PiField {
    type Output = PiField;
    fn sub(self, o: &PiField) -> PiField {
        PiField { p: self.p, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl std::ops::Mul for &PiField {
    type Output = PiField;
    fn mul(self, o: &PiField) -> PiField {
        let e = (self.p - 1) as usize;
        let mut wide = vec![Q::zero(); 2 * e];
        for (i, a) in self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.c.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                wide[i + j] += a * b;
            }
        }
        let mp = qi(-(self.p as i64));
        let mut c = wide[..e].to_vec();
        for r in e..2 * e {
            if !wide[r].is_zero() {
                c[r - e] += &wide[r] * &mp;
            }
        }
        PiField { p: self.p, c }
    }
}

/// A value known modulo `π^prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicPi {
    value: PiField,
    prec: i64,
}

impl PadicPi {
    pub fn new(value: PiField, prec: i64) -> Self {
        PadicPi { value, prec }
    }

    pub fn exact_q(p: u64, x: Q, prec: i64) -> Self {
        PadicPi { value: PiField::from_q(p, x), prec }
    }

    pub fn p(&self) -> u64 {
        self.value.p
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn value(&self) -> &PiField {
        &self.value
    }

    /// Valuation, capped at the precision.
    pub fn valuation(&self) -> i64 {
        self.value.valuation().map_or(self.prec, |v| v.min(self.prec))
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() >= self.prec
    }

    /// Digits `a_j` of `Σ a_j π^j` for `valuation ≤ j < prec`.
    pub fn digits(&self) -> Vec<u64> {
        let v = self.valuation();
        self.value.digits(v, self.prec)
    }

    /// Replaces the exact value by its digit expansion.
    pub fn rounded(&self) -> Self {
        let v = self.valuation();
        let mut z = PiField::zero(self.p());
        for (k, d) in self.digits().into_iter().enumerate() {
            if d != 0 {
                z = &z + &PiField::pi_pow(self.p(), v + k as i64).scale(&qi(d as i64));
            }
        }
        PadicPi { value: z, prec: self.prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        PadicPi { value: &self.value + &o.value, prec: self.prec.min(o.prec) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PadicPi { value: &self.value - &o.value, prec: self.prec.min(o.prec) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.prec + o.valuation()).min(o.prec + self.valuation());
        PadicPi { value: &self.value * &o.value, prec }
    }

    /// Multiplication by an exact field element.
    pub fn mul_exact(&self, x: &PiField) -> Self {
        match x.valuation() {
            None => PadicPi { value: PiField::zero(self.p()), prec: i64::MAX / 4 },
            Some(v) => PadicPi { value: &self.value * x, prec: self.prec + v },
        }
    }
}

impl fmt::Display for PadicPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(π^{})", self.prec);
        }
        let v = self.valuation();
        let parts: Vec<String> = self
            .digits()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(k, d)| format!("{d}π^{}", v + k as i64))
            .collect();
        write!(f, "{} + O(π^{})", parts.join(" + "), self.prec)
    }
}

/// `Σ_r v_r σ^r` with `σ^{p-1} = p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobScalar {
    p: u64,
    comps: BTreeMap<u64, PadicPi>,
}

impl FrobScalar {
    pub fn zero(p: u64) -> Self {
        FrobScalar { p, comps: BTreeMap::new() }
    }

    /// `v · σ^e` for any integer `e`, folding `σ^{p-1} = p`.
    pub fn sigma(v: PadicPi, e: i64) -> Self {
        let p = v.p();
        let k = (p - 1) as i64;
        let (q, r) = (e.div_euclid(k), e.rem_euclid(k));
        let v = v.mul_exact(&PiField::pi_pow(p, q * k).scale(&qi(if q % 2 == 0 { 1 } else { -1 })));
        let mut comps = BTreeMap::new();
        comps.insert(r as u64, v);
        FrobScalar { p, comps }
    }

    pub fn components(&self) -> &BTreeMap<u64, PadicPi> {
        &self.comps
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut comps = self.comps.clone();
        for (r, v) in &o.comps {
            let e = match comps.get(r) {
                Some(w) => w.add(v),
                None => v.clone(),
            };
            comps.insert(*r, e);
        }
        FrobScalar { p: self.p, comps }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let neg = FrobScalar {
            p: o.p,
            comps: o.comps.iter().map(|(r, v)| (*r, v.mul_exact(&PiField::from_q(o.p, qi(-1))))).collect(),
        };
        self.add(&neg)
    }

    pub fn mul_exact(&self, x: &PiField) -> Self {
        FrobScalar { p: self.p, comps: self.comps.iter().map(|(r, v)| (*r, v.mul_exact(x))).collect() }
    }

    /// Smallest valuation over components (capped by their precision).
    pub fn valuation(&self) -> Option<i64> {
        self.comps.values().filter(|v| !v.is_zero()).map(|v| v.valuation()).min()
    }

    pub fn prec(&self) -> i64 {
        self.comps.values().map(|v| v.prec()).min().unwrap_or(i64::MAX / 4)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|v| v.is_zero())
    }
}

/// Dwork coefficients `c_m` of `e^{π(t^p - t)} = Σ c_m (-π)^m t^m`.
#[derive(Debug, Clone)]
pub struct DworkSeries {
    pub p: u64,
    c: Vec<Q>,
}

impl DworkSeries {
    pub fn new(p: u64) -> Self {
        DworkSeries { p, c: Vec::new() }
    }

    pub fn c(&mut self, m: usize) -> &Q {
        while self.c.len() <= m {
            let k = self.c.len() as u64;
            self.c.push(dwork_c(self.p, k));
        }
        &self.c[m]
    }
}

/// The values `c_m (-π)^m` for `m ≤ big_m`, rounded at `prec`, with the
/// valuation bound `ord_p ≥ m(p-1)/p²` checked on each.
pub fn dwork_coeffs(p: u64, big_m: usize, prec: i64) -> Result<Vec<PadicPi>, DworkError> {
    if !is_prime(p) || p == 2 {
        return Err(DworkError::NotPrime(p));
    }
    let mut s = DworkSeries::new(p);
    let mut out = Vec::new();
    for m in 0..=big_m {
        let x = PiField::pi_pow(p, m as i64).scale(&(s.c(m) * qi(if m % 2 == 0 { 1 } else { -1 })));
        if let Some(v) = x.valuation() {
            // v / (p-1) ≥ m (p-1) / p²
            if v * ((p * p) as i64) < (m as i64) * ((p - 1) * (p - 1)) as i64 {
                return Err(DworkError::PrecisionLoss(format!("c_{m} has valuation {v}")));
            }
        }
        out.push(PadicPi::new(x, prec).rounded());
    }
    Ok(out)
}

fn ndigits(mut k: u64, p: u64) -> i64 {
    let mut d = 0;
    while k > 0 {
        k /= p;
        d += 1;
    }
    d
}

/// Least `M` such that every tail term `m > M` of `Σ c_m (b)_{(a+m)}` has
/// `π`-valuation at least `target`.
fn truncation(p: u64, a: u64, target: i64) -> usize {
    let e = (p - 1) as i64;
    let pp = (p * p) as i64;
    // term valuation (π-units) ≥ m(p-1)²/p² - (p-1)·ndigits(a+m)
    let bound = |m: i64| m * e * e / pp - e * ndigits(a + m as u64, p);
    let mut last_bad = 0i64;
    let mut m = 1i64;
    loop {
        if bound(m) < target {
            last_bad = m;
        }
        // past the next power of p the bound only grows
        if m > last_bad + pp && m * e * e / pp > target + e * (ndigits(a + m as u64, p) + 2) {
            return last_bad as usize;
        }
        m += 1;
    }
}

/// `(-π)^{-a} Σ_m c_m (b)_{(a+m)}` known to absolute precision `target` or better.
fn dwork_factor(series: &mut DworkSeries, a: u64, b: &Q, target: i64) -> PadicPi {
    let p = series.p;
    let pre = PiField::pi_pow(p, -(a as i64)).scale(&qi(if a.is_multiple_of(2) { 1 } else { -1 }));
    // raise the sum's own target to absorb the prefactor
    let inner = target + a as i64;
    let big_m = truncation(p, a, inner);
    let mut sum = Q::zero();
    let mut poch = pochhammer(b, a);
    for m in 0..=big_m {
        if m > 0 {
            poch *= b + qi((a + m as u64 - 1) as i64);
        }
        if poch.is_zero() {
            break;
        }
        sum += series.c(m) * &poch;
    }
    PadicPi::new(PiField::from_q(p, sum), inner).mul_exact(&pre)
}

/// One Frobenius column: the target basis index and the scalar there.
#[derive(Debug, Clone)]
struct FrobColumn {
    row: usize,
    value: FrobScalar,
}

/// `TFr_A` on the orbifold basis; `entries[row][col]`.
#[derive(Debug, Clone)]
pub struct FrobMatrix {
    pub p: u64,
    pub prec: i64,
    pub basis: CohBasis,
    pub entries: Vec<Vec<FrobScalar>>,
}

impl FrobMatrix {
    pub fn certified_prec(&self) -> i64 {
        self.entries.iter().flatten().map(|x| x.prec()).min().unwrap_or(self.prec)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    pub fn report(&self) -> Vec<FrobEntryReport> {
        let names = self.basis.table();
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                for (r, v) in x.components() {
                    if v.is_zero() {
                        continue;
                    }
                    out.push(FrobEntryReport {
                        row: names[i].monomial.clone(),
                        col: names[j].monomial.clone(),
                        sigma_power: *r,
                        valuation: v.valuation(),
                        pi_digits: v.digits(),
                        certified_prec: v.prec(),
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobEntryReport {
    pub row: String,
    pub col: String,
    pub sigma_power: u64,
    pub valuation: i64,
    pub pi_digits: Vec<u64>,
    pub certified_prec: i64,
}

fn check_prime(m: &BHMatrix, p: u64) -> Result<(), DworkError> {
    if !is_prime(p) {
        return Err(DworkError::NotPrime(p));
    }
    if m.det() % p as i64 == 0 {
        return Err(DworkError::PrimeDividesDet { p, det: m.det() });
    }
    if p == 2 {
        return Err(DworkError::NotPrime(p));
    }
    Ok(())
}

fn frob_column(red: &Reducer, series: &mut DworkSeries, col: usize, target: i64) -> Result<FrobColumn, DworkError> {
    let p = series.p;
    let pq = qi(p as i64);
    let e = &red.basis.entries[col];
    let (s, mono) = (&e.sector, &e.mono);
    let n = mono.n();
    // target sector: charges p·c reduced mod 1
    let c = red.cx.c(&mono.lam);
    let pc: Vec<Q> = c.iter().map(|x| x * &pq).collect();
    let target_charges: Vec<Q> = pc.iter().map(frac).collect();
    let lam0 = red.matrix().lambda_from_charges(&target_charges);
    let u = red.cx.u(&mono.gamma);
    let pu: Vec<Q> = u.iter().map(|x| x * &pq).collect();
    let key: Vec<Q> = pu.iter().map(frac).collect();
    let row = red
        .basis
        .entries
        .iter()
        .position(|b| b.sector.lambda == lam0 && red.cx.u(&b.mono.gamma).iter().map(frac).collect::<Vec<_>>() == key);
    let Some(row) = row else {
        return Err(DworkError::OracleFallbackFailed(mono.render()));
    };
    let ub = red.cx.u(&red.basis.entries[row].mono.gamma);
    let mut factors = Vec::new();
    for i in 0..n {
        if s.jvee[i] {
            let a = floor_i64(&pc[i]) as u64;
            factors.push((a, target_charges[i].clone()));
        } else {
            let a = &pu[i] - &ub[i];
            if a.is_negative() {
                return Err(DworkError::OracleFallbackFailed(mono.render()));
            }
            factors.push((a.to_integer().to_u64().unwrap(), ub[i].clone()));
        }
    }
    let g = &e.gradings;
    let twist = (p as i64 - 1) * g.sharp_diff();
    assert!(twist % 2 == 0);
    let prefactor = PiField::pi_pow(p, (p as i64 - 1) * g.total()).scale(&qi(if g.total() % 2 == 0 { 1 } else { -1 }));
    // each factor gets enough precision for the product to reach the target
    let slack: i64 = factors.iter().map(|(a, _)| *a as i64).sum::<i64>() + (p as i64 - 1) * (n as i64 + 1);
    let mut acc = PadicPi::new(PiField::from_q(p, Q::one()), i64::MAX / 4);
    for (a, b) in &factors {
        acc = acc.mul(&dwork_factor(series, *a, b, target + slack));
    }
    let value = FrobScalar::sigma(acc.mul_exact(&prefactor), twist / 2);
    Ok(FrobColumn { row, value })
}

/// `H(TFr_A)` on the orbifold basis, certified modulo `π^prec`.
pub fn tfr_matrix(m: &BHMatrix, p: u64, prec: i64) -> Result<FrobMatrix, DworkError> {
    tfr_matrix_with(&Reducer::new(m), p, prec)
}

pub fn tfr_matrix_with(red: &Reducer, p: u64, prec: i64) -> Result<FrobMatrix, DworkError> {
    check_prime(red.matrix(), p)?;
    let n = red.basis.len();
    let mut series = DworkSeries::new(p);
    let mut entries = vec![vec![FrobScalar::zero(p); n]; n];
    for col in 0..n {
        let mut target = prec;
        loop {
            let fc = frob_column(red, &mut series, col, target)?;
            if fc.value.prec() >= prec {
                entries[fc.row][col] = fc.value;
                break;
            }
            target += prec - fc.value.prec();
        }
    }
    Ok(FrobMatrix { p, prec, basis: red.basis.clone(), entries })
}

/// Minimum valuation of `H(Δ)H(TFr_A) - H(TFr_{A^T})H(Δ)`.
#[derive(Debug, Clone, Serialize)]
pub struct CommutationReport {
    pub p: u64,
    pub prec: i64,
    pub certified_prec: i64,
    /// `None` when the difference vanishes to the certified precision.
    pub min_valuation: Option<i64>,
    pub pass: bool,
}

pub fn verify_commutation(m: &BHMatrix, p: u64, prec: i64) -> Result<CommutationReport, DworkError> {
    let ra = Reducer::new(m);
    let rt = Reducer::new(&m.transpose());
    let fa = tfr_matrix_with(&ra, p, prec)?;
    let ft = tfr_matrix_with(&rt, p, prec)?;
    let d = duality_matrix_with(&ra, &rt)?;
    let dx: Vec<Vec<PiField>> =
        d.entries.iter().map(|r| r.iter().map(|x| PiField::from_laurent(p, x)).collect()).collect();
    let n = fa.basis.len();
    let mut certified = i64::MAX / 4;
    let mut min_val: Option<i64> = None;
    for i in 0..n {
        for j in 0..n {
            let mut lhs = FrobScalar::zero(p);
            let mut rhs = FrobScalar::zero(p);
            for k in 0..n {
                if !dx[i][k].is_zero() {
                    lhs = lhs.add(&fa.entries[k][j].mul_exact(&dx[i][k]));
                }
                if !dx[k][j].is_zero() {
                    rhs = rhs.add(&ft.entries[i][k].mul_exact(&dx[k][j]));
                }
            }
            let diff = lhs.sub(&rhs);
            certified = certified.min(diff.prec());
            if let Some(v) = diff.valuation() {
                min_val = Some(min_val.map_or(v, |w: i64| w.min(v)));
            }
        }
    }
    let pass = certified >= prec && min_val.is_none_or(|v| v >= certified);
    Ok(CommutationReport { p, prec, certified_prec: certified, min_valuation: min_val, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainCommutationReport {
    pub p: u64,
    pub order: usize,
    pub checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Exact check of `Δ Fr_A = Fr_{A^T} Δ p^{2ext-n} p^{-2Q̂} p^{2Q^∨}` on monomials.
pub fn verify_chain_commutation(
    m: &BHMatrix,
    p: u64,
    order: usize,
    monos: &[Monomial],
) -> Result<ChainCommutationReport, DworkError> {
    check_prime(m, p)?;
    let cx = Cx::new(m);
    let dual = cx.dual();
    let mut failures = Vec::new();
    for mono in monos {
        let v = ChainElement::from_monomial(mono.clone());
        let (lhs, rhs) = cx.chain_commutation_sides(&dual, p, order, &v)?;
        if lhs != rhs {
            failures.push(mono.render());
        }
    }
    Ok(ChainCommutationReport { p, order, checked: monos.len(), pass: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::factorial;

    fn bh(e: &[&[i64]]) -> BHMatrix {
        BHMatrix::validate(e.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn field_arithmetic() {
        let p = 5;
        let pi4 = PiField::pi_pow(p, 4);
        assert_eq!(pi4, PiField::from_q(p, qi(-5)));
        assert_eq!(&PiField::pi_pow(p, 3) * &PiField::pi_pow(p, -3), PiField::from_q(p, Q::one()));
        assert_eq!(PiField::from_q(p, qi(25)).valuation(), Some(8));
        assert_eq!(PiField::pi_pow(p, -7).valuation(), Some(-7));
        let x = PadicPi::exact_q(p, qi(7), 6);
        assert_eq!(x.digits()[0], 2);
        let r = x.rounded();
        assert!(r.sub(&x).is_zero());
    }

    #[test]
    fn dwork_coefficient_values() {
        let c = dwork_coeffs(5, 50, 20).unwrap();
        assert_eq!(c[0], PadicPi::exact_q(5, Q::one(), 20).rounded());
        let minus_pi = PadicPi::new(PiField::pi_pow(5, 1).scale(&qi(-1)), 20);
        assert!(c[1].sub(&minus_pi).is_zero());
    }

    #[test]
    fn x_squared_frobenius() {
        for p in [5u64, 7] {
            let prec = 2 * (p as i64 - 1);
            let f = tfr_matrix(&bh(&[&[2]]), p, prec).unwrap();
            assert!(f.is_diagonal());
            let (x, y) = (&f.entries[0][0], &f.entries[1][1]);
            assert!(x.sub(y).is_zero());
            let half = (p - 1) / 2;
            let comp = &x.components()[&half];
            // entry = p · π^{-(p-1)/2} · u with u a unit
            let u = comp.mul_exact(&PiField::pi_pow(p, half as i64).scale(&Q::new(1.into(), p.into())));
            assert_eq!(u.valuation(), 0);
            let want = factorial(half) % p;
            assert_eq!(u.digits()[0], want.to_u64().unwrap());
            assert!(f.certified_prec() >= prec);
        }
    }

    #[test]
    fn chain_commutation_example() {
        let m = bh(&[&[2]]);
        let monos: Vec<Monomial> = (0..=3).map(|g| Monomial::x(&[g], &[0])).collect();
        assert!(verify_chain_commutation(&m, 3, 4, &monos).unwrap().pass);
        assert!(matches!(verify_chain_commutation(&m, 2, 1, &monos), Err(DworkError::PrimeDividesDet { .. })));
    }

    #[test]
    fn commutation_small() {
        let r = verify_commutation(&bh(&[&[2]]), 5, 8).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_commutation(&bh(&[&[2, 1], &[0, 3]]), 7, 12).unwrap();
        assert!(r.pass, "{r:?}");
        let f = tfr_matrix(&bh(&[&[2, 1], &[0, 3]]), 7, 12).unwrap();
        assert!(f.is_diagonal());
    }
}
