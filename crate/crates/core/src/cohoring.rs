//! Orbifold cohomology bases, closed-form reduction and the duality matrix.
//!
//! In the sector of `λ` with fixed set `F`, cohomology is spanned by
//! `x^β y^λ e^F` where `β` runs over a Milnor basis of `A^λ` shifted by one in
//! every fixed coordinate. Monomials of the same shape reduce to these by
//!
//! ```text
//! x^{β + kA} y^λ e^F = Π_i (-π)^{-k_i} ((βA^{-1})_i)_{(k_i)} · x^β y^λ e^F
//! y^{λ + k A^T}      = Π_i (-π)^{-k_i} ((λA^{-T})_i)_{(k_i)} · y^λ     (i twisted)
//! ```
//!
//! and anything else is handed to the window oracle.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bhmat::{Atom, BHMatrix, Sector};
use crate::chaincx::{ChainElement, ChainError, Cx, GradingReport, Monomial};
use crate::clifford::{PiLaurent, Wedge};
use crate::homolab::{default_window, truncate, OracleError};
use crate::rational::{fmt_q, frac, pochhammer, qf, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohError {
    #[error("{0} is not a top-degree sector monomial")]
    NotTopDegree(String),
    #[error("terms lie in different sectors")]
    MixedSectors,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Shifted Milnor basis exponents of a chain or loop in canonical form.
pub fn milnor_basis(atom: &Atom) -> Vec<Vec<u32>> {
    let a = atom.exponents();
    let n = a.len();
    match atom {
        Atom::Loop(_) => boxes(&vec![1; n], a),
        Atom::Chain(_) => {
            let mut out = Vec::new();
            for m in 0..=n / 2 {
                let prefix: Vec<u32> = (0..2 * m).map(|k| if k % 2 == 0 { a[k] } else { 1 }).collect();
                let mut hi = a[2 * m..].to_vec();
                if let Some(h) = hi.first_mut() {
                    *h -= 1;
                }
                for tail in boxes(&vec![1; n - 2 * m], &hi) {
                    out.push(prefix.iter().copied().chain(tail).collect());
                }
            }
            out
        }
    }
}

/// All vectors with `lo ≤ v ≤ hi`, lexicographic.
fn boxes(lo: &[u32], hi: &[u32]) -> Vec<Vec<u32>> {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut v = lo.to_vec();
    loop {
        out.push(v.clone());
        let mut pos = v.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if v[pos] < hi[pos] {
                v[pos] += 1;
                break;
            }
            v[pos] = lo[pos];
        }
    }
}

/// Shifted Milnor basis of an arbitrary matrix, in its own variable order.
pub fn milnor_basis_of(m: &BHMatrix) -> Vec<Vec<u32>> {
    let d = m.decomposition();
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for atom in &d.atoms {
        let part = milnor_basis(atom);
        acc = acc.iter().flat_map(|pre| part.iter().map(move |p| [pre.clone(), p.clone()].concat())).collect();
    }
    let mut out: Vec<Vec<u32>> = acc
        .into_iter()
        .map(|canon| {
            let mut g = vec![0u32; m.n()];
            for (k, &orig) in d.permutation.iter().enumerate() {
                g[orig] = canon[k];
            }
            g
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisEntry {
    #[serde(skip)]
    pub sector: Sector,
    pub mono: Monomial,
    pub gradings: GradingReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CohBasis {
    pub entries: Vec<BasisEntry>,
}

/// One line of the basis table: monomial, `Q + Q^∨`, `(# - #^∨)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub monomial: String,
    pub total: i64,
    pub half_sharp: String,
}

impl CohBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.entries.iter().map(|e| e.mono.clone()).collect()
    }

    pub fn index_of(&self, mono: &Monomial) -> Option<usize> {
        self.entries.iter().position(|e| &e.mono == mono)
    }

    pub fn table(&self) -> Vec<TableRow> {
        self.entries
            .iter()
            .map(|e| TableRow {
                monomial: e.mono.render(),
                total: e.gradings.total(),
                half_sharp: fmt_q(&qf(e.gradings.sharp_diff(), 2)),
            })
            .collect()
    }
}

/// `x^{β} y^λ e^F` over all sectors and shifted Milnor vectors `β` of `A^λ`.
pub fn orbifold_basis(m: &BHMatrix) -> CohBasis {
    let cx = Cx::new(m);
    let n = m.n();
    let mut entries = Vec::new();
    for s in m.group_elements() {
        let fixed = s.fixed();
        let lam: Vec<u32> = s.lambda.iter().map(|&l| l as u32).collect();
        for beta in milnor_basis_of(&s.sub) {
            let mut gamma = vec![0u32; n];
            for (k, &i) in fixed.iter().enumerate() {
                gamma[i] = beta[k];
            }
            let mono = Monomial::new(gamma, lam.clone(), &fixed);
            let gradings = cx.gradings(&mono).expect("basis monomials lie in S_A");
            entries.push(BasisEntry { sector: s.clone(), mono, gradings });
        }
    }
    CohBasis { entries }
}

/// Result of closed-form reduction: basis part plus the terms left for the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub reduced: ChainElement,
    pub residual: ChainElement,
}

/// Closed-form reducer for one matrix.
#[derive(Debug, Clone)]
pub struct Reducer {
    pub cx: Cx,
    pub basis: CohBasis,
    /// `(sector λ, frac(βA^{-1}))` to basis indices with their `βA^{-1}`.
    lookup: HashMap<(Vec<i64>, Vec<Q>), Vec<(usize, Vec<Q>)>>,
}

enum Step {
    Zero,
    Basis(usize, PiLaurent),
    Residual(Monomial, PiLaurent),
}

impl Reducer {
    pub fn new(m: &BHMatrix) -> Self {
        let cx = Cx::new(m);
        let basis = orbifold_basis(m);
        let mut lookup: HashMap<_, Vec<_>> = HashMap::new();
        for (k, e) in basis.entries.iter().enumerate() {
            let u = cx.u(&e.mono.gamma);
            let key = (e.sector.lambda.clone(), u.iter().map(frac).collect());
            lookup.entry(key).or_default().push((k, u));
        }
        Reducer { cx, basis, lookup }
    }

    pub fn matrix(&self) -> &BHMatrix {
        &self.cx.m
    }

    /// The sector of a monomial if it has the shape `x^γ y^λ e^F` with
    /// `γ ≥ 1` exactly on the fixed set `F`.
    fn top_sector(&self, mono: &Monomial) -> Option<Sector> {
        let lam: Vec<i64> = mono.lam.iter().map(|&l| l as i64).collect();
        let s = self.cx.m.sector_of(&lam);
        let fixed = s.fixed();
        let shape = mono.wedge == Wedge::from_indices(&fixed)
            && (0..mono.n()).all(|i| (mono.gamma[i] > 0) == !s.jvee[i]);
        shape.then_some(s)
    }

    fn step(&self, mono: &Monomial, s: &Sector) -> Step {
        if self.cx.vanishes(mono) {
            return Step::Zero;
        }
        let n = mono.n();
        let mut pow = 0i64;
        let mut coef = Q::one();
        let c = self.cx.c(&mono.lam);
        for i in s.twisted() {
            let k = (&c[i] - &s.charges[i]).to_integer();
            let k: u64 = k.try_into().expect("admissible charge");
            coef *= pochhammer(&s.charges[i], k);
            pow -= k as i64;
        }
        let lam0: Vec<u32> = s.lambda.iter().map(|&l| l as u32).collect();
        let u = self.cx.u(&mono.gamma);
        let key = (s.lambda.clone(), u.iter().map(frac).collect::<Vec<_>>());
        let found = self
            .lookup
            .get(&key)
            .and_then(|cands| cands.iter().find(|(_, ub)| (0..n).all(|i| u[i] >= ub[i])));
        match found {
            Some((k, ub)) => {
                for i in 0..n {
                    let steps: u64 = (&u[i] - &ub[i]).to_integer().try_into().unwrap();
                    coef *= pochhammer(&ub[i], steps);
                    pow -= steps as i64;
                }
                if pow % 2 != 0 {
                    coef = -coef;
                }
                if coef.is_zero() {
                    Step::Zero
                } else {
                    Step::Basis(*k, PiLaurent::term(coef, pow))
                }
            }
            None => {
                if pow % 2 != 0 {
                    coef = -coef;
                }
                let rest = Monomial { gamma: mono.gamma.clone(), lam: lam0, wedge: mono.wedge };
                Step::Residual(rest, PiLaurent::term(coef, pow))
            }
        }
    }

    /// Reduces a combination of top-degree monomials from one sector.
    pub fn closed_form(&self, v: &ChainElement) -> Result<ClosedForm, CohError> {
        let mut sector: Option<Vec<i64>> = None;
        let mut reduced = ChainElement::zero();
        let mut residual = ChainElement::zero();
        for (mono, c) in v.terms() {
            let s = self.top_sector(mono).ok_or_else(|| CohError::NotTopDegree(mono.render()))?;
            match &sector {
                Some(l) if *l != s.lambda => return Err(CohError::MixedSectors),
                _ => sector = Some(s.lambda.clone()),
            }
            self.apply_step(mono, c, &s, &mut reduced, &mut residual);
        }
        Ok(ClosedForm { reduced, residual })
    }

    fn apply_step(&self, mono: &Monomial, c: &PiLaurent, s: &Sector, reduced: &mut ChainElement, residual: &mut ChainElement) {
        match self.step(mono, s) {
            Step::Zero => {}
            Step::Basis(k, f) => reduced.add_term(self.basis.entries[k].mono.clone(), &(&f * c)),
            Step::Residual(r, f) => residual.add_term(r, &(&f * c)),
        }
    }

    /// Coordinates of a cocycle on the orbifold basis.
    pub fn normal_form(&self, v: &ChainElement, window: u32) -> Result<Vec<PiLaurent>, CohError> {
        let mut reduced = ChainElement::zero();
        let mut residual = ChainElement::zero();
        for (mono, c) in v.terms() {
            match self.top_sector(mono) {
                Some(s) => self.apply_step(mono, c, &s, &mut reduced, &mut residual),
                None => residual.add_term(mono.clone(), c),
            }
        }
        let mut coords = vec![PiLaurent::zero(); self.basis.len()];
        for (mono, c) in reduced.terms() {
            let k = self.basis.index_of(mono).expect("reduced onto basis");
            coords[k] += c;
        }
        if !residual.is_zero() {
            let w = window.max(residual.max_exponent()).max(default_window(&self.cx.m));
            let tc = truncate(&self.cx.m, w, Q::one())?;
            let r = tc.reduce_by_oracle(&residual, &self.basis.monomials())?;
            for (k, c) in r.coords.iter().enumerate() {
                coords[k] += c;
            }
        }
        Ok(coords)
    }
}

/// Closed-form reduction of top-degree monomials within one sector.
pub fn reduce_closed_form(m: &BHMatrix, v: &ChainElement) -> Result<ClosedForm, CohError> {
    Reducer::new(m).closed_form(v)
}

/// Coordinates of a cocycle on [`orbifold_basis`], using the oracle for leftovers.
pub fn normal_form(m: &BHMatrix, v: &ChainElement, window: u32) -> Result<Vec<PiLaurent>, CohError> {
    Reducer::new(m).normal_form(v, window)
}

/// `H(Δ^A)` with columns on the basis of `A` and rows on the basis of `A^T`.
#[derive(Debug, Clone, Serialize)]
pub struct DualityMatrix {
    pub cols: CohBasis,
    pub rows: CohBasis,
    pub entries: Vec<Vec<PiLaurent>>,
}

/// A basis element of `A` with the unique `A^T` basis element it maps to.
#[derive(Debug, Clone, Serialize)]
pub struct DualPair {
    pub source: TableRow,
    pub target: Option<TableRow>,
    pub constant: Option<PiLaurent>,
    /// The full normal form of the image, in basis order.
    pub image: Vec<ImageTerm>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImageTerm {
    pub monomial: String,
    pub coefficient: PiLaurent,
}

impl DualityMatrix {
    pub fn get(&self, row: usize, col: usize) -> &PiLaurent {
        &self.entries[row][col]
    }

    pub fn pairs(&self) -> Vec<DualPair> {
        let (src, dst) = (self.cols.table(), self.rows.table());
        (0..self.cols.len())
            .map(|j| {
                let nz: Vec<usize> = (0..self.rows.len()).filter(|&i| !self.entries[i][j].is_zero()).collect();
                let image = nz
                    .iter()
                    .map(|&i| ImageTerm { monomial: dst[i].monomial.clone(), coefficient: self.entries[i][j].clone() })
                    .collect();
                let (target, constant) = match nz.as_slice() {
                    [i] => (Some(dst[*i].clone()), Some(self.entries[*i][j].clone())),
                    _ => (None, None),
                };
                DualPair { source: src[j].clone(), target, constant, image }
            })
            .collect()
    }

    /// `back · self` is diagonal with nonzero diagonal, `back` being `H(Δ^{A^T})`.
    pub fn inverts_with(&self, back: &DualityMatrix) -> bool {
        let prod = mat_mul(&back.entries, &self.entries);
        self.rows.len() == self.cols.len()
            && is_diagonal(&prod)
            && prod.iter().enumerate().all(|(i, r)| !r[i].is_zero())
    }

    /// On columns that hit a single basis element, `# - #^∨` changes sign.
    pub fn exchanges_gradings(&self) -> bool {
        (0..self.cols.len()).all(|j| {
            let nz: Vec<usize> = (0..self.rows.len()).filter(|&i| !self.entries[i][j].is_zero()).collect();
            match nz.as_slice() {
                [i] => self.rows.entries[*i].gradings.sharp_diff() == -self.cols.entries[j].gradings.sharp_diff(),
                _ => true,
            }
        })
    }

    /// Each column has exactly one nonzero entry and each row is hit once.
    pub fn is_monomial_bijection(&self) -> bool {
        let mut hit = vec![false; self.rows.len()];
        for j in 0..self.cols.len() {
            let nz: Vec<usize> = (0..self.rows.len()).filter(|&i| !self.entries[i][j].is_zero()).collect();
            if nz.len() != 1 || hit[nz[0]] || self.entries[nz[0]][j].as_monomial().is_none() {
                return false;
            }
            hit[nz[0]] = true;
        }
        self.rows.len() == self.cols.len()
    }
}

/// Builds `H(Δ^A)` from two reducers (for `A` and `A^T`).
pub fn duality_matrix_with(src: &Reducer, dst: &Reducer) -> Result<DualityMatrix, CohError> {
    let mut entries = vec![vec![PiLaurent::zero(); src.basis.len()]; dst.basis.len()];
    let window = default_window(dst.matrix());
    for (j, e) in src.basis.entries.iter().enumerate() {
        let image = src.cx.delta(&ChainElement::from_monomial(e.mono.clone()))?;
        for (i, c) in dst.normal_form(&image, window)?.into_iter().enumerate() {
            entries[i][j] = c;
        }
    }
    Ok(DualityMatrix { cols: src.basis.clone(), rows: dst.basis.clone(), entries })
}

pub fn duality_matrix(m: &BHMatrix) -> Result<DualityMatrix, CohError> {
    duality_matrix_with(&Reducer::new(m), &Reducer::new(&m.transpose()))
}

/// Product of two PiLaurent matrices, `a · b`.
pub fn mat_mul(a: &[Vec<PiLaurent>], b: &[Vec<PiLaurent>]) -> Vec<Vec<PiLaurent>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = PiLaurent::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn is_diagonal(m: &[Vec<PiLaurent>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

/// Eigenvalue identity on a basis monomial: `2 ext - n - 2Q̂ + 2Q^∨ = -(# - #^∨)`.
pub fn eigenvalue_identity(g: &GradingReport, n: usize) -> Option<bool> {
    let qhat = g.qhat?;
    Some(2 * g.ext - n as i64 - 2 * qhat + 2 * g.qvee == -g.sharp_diff())
}

/// Number of basis elements per `Q + Q^∨` value.
pub fn total_degree_histogram(b: &CohBasis) -> BTreeMap<i64, usize> {
    let mut h = BTreeMap::new();
    for e in &b.entries {
        *h.entry(e.gradings.total()).or_insert(0) += 1;
    }
    h
}

/// `true` when every basis monomial lies in `S_A`.
pub fn basis_in_sa(b: &CohBasis, cx: &Cx) -> bool {
    b.entries.iter().all(|e| cx.u(&e.mono.gamma).iter().all(|x| !x.is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homolab::milnor_dimension;
    use crate::rational::{double_factorial_odd, qi};

    fn bh(e: &[&[i64]]) -> BHMatrix {
        BHMatrix::validate(e.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn milnor_basis_counts() {
        assert_eq!(milnor_basis(&Atom::Chain(vec![2, 3])), vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1]]);
        assert_eq!(milnor_basis(&Atom::Chain(vec![2])), vec![vec![1]]);
        assert_eq!(milnor_basis(&Atom::Loop(vec![3, 2])).len(), 6);
        for atom in [Atom::Chain(vec![3, 2]), Atom::Chain(vec![2, 2, 2]), Atom::Chain(vec![3, 4, 2]), Atom::Loop(vec![2, 3, 2])] {
            let m = BHMatrix::from_atom(&atom).unwrap();
            assert_eq!(milnor_basis(&atom).len(), milnor_dimension(&m), "{atom}");
        }
        assert_eq!(milnor_basis(&Atom::Chain(vec![3, 2])).len(), 5);
        assert_eq!(milnor_basis(&Atom::Chain(vec![2, 2, 2])).len(), 5);
    }

    #[test]
    fn chain23_bases() {
        let m = bh(&[&[2, 1], &[0, 3]]);
        let rows: Vec<String> = orbifold_basis(&m).table().into_iter().map(|r| r.monomial).collect();
        assert_eq!(
            rows,
            [
                "x1x2e1e2", "x1x2²e1e2", "x1x2³e1e2", "x1²x2e1e2", "x2y1e2", "x2²y1e2", "y1y2", "y1y2²", "y1²y2",
                "y1²y2²"
            ]
        );
        let t: Vec<String> = orbifold_basis(&m.transpose()).table().into_iter().map(|r| r.monomial).collect();
        let mut t = t;
        t.sort();
        let mut expect = vec![
            "x1x2e1e2", "x1x2²e1e2", "x1x2³e1e2", "x1²x2e1e2", "x1²x2²e1e2", "x1y2e1", "x1y2²e1", "y1y2", "y1y2²",
            "y1y2³",
        ];
        expect.sort();
        assert_eq!(t, expect);
        let b = orbifold_basis(&bh(&[&[2]]));
        let r: Vec<String> = b.table().into_iter().map(|r| r.monomial).collect();
        assert_eq!(r, ["x1e1", "y1"]);
    }

    #[test]
    fn x_squared_closed_form() {
        let m = bh(&[&[2]]);
        let red = Reducer::new(&m);
        for k in 0..=5u32 {
            let v = ChainElement::from_monomial(Monomial::x(&[2 * k + 1], &[0]));
            let cf = red.closed_form(&v).unwrap();
            assert!(cf.residual.is_zero());
            let want = Q::from(double_factorial_odd(k as u64)) / Q::from(num_bigint::BigInt::from(-2).pow(k));
            assert_eq!(cf.reduced.coeff(&Monomial::x(&[1], &[0])), PiLaurent::term(want, -(k as i64)));
        }
    }

    #[test]
    fn y_side_closed_form() {
        let m = bh(&[&[2, 1], &[0, 3]]);
        let red = Reducer::new(&m);
        let base = Monomial::new(vec![0, 1], vec![1, 0], &[1]);
        for k in 0..4u32 {
            let mono = Monomial::new(vec![0, 1], vec![1 + 2 * k, 0], &[1]);
            let cf = red.closed_form(&ChainElement::from_monomial(mono)).unwrap();
            let want = pochhammer(&qf(1, 2), k as u64) * if k % 2 == 1 { -qi(1) } else { qi(1) };
            assert_eq!(cf.reduced.coeff(&base), PiLaurent::term(want, -(k as i64)));
        }
    }

    #[test]
    fn zero_pochhammer_base() {
        let m = bh(&[&[2, 0], &[1, 3]]);
        let red = Reducer::new(&m);
        let v = ChainElement::from_monomial(Monomial::x(&[2, 4], &[0, 1]));
        let cf = red.closed_form(&v).unwrap();
        assert!(cf.reduced.is_zero() || cf.residual.is_zero());
        let bad = ChainElement::from_monomial(Monomial::y(&[2, 1]));
        assert!(matches!(red.closed_form(&bad), Err(CohError::NotTopDegree(_))));
        let mut mixed = ChainElement::from_monomial(Monomial::x(&[1, 1], &[0, 1]));
        mixed.add_term(Monomial::new(vec![1, 0], vec![0, 1], &[0]), &PiLaurent::one());
        assert_eq!(red.closed_form(&mixed).unwrap_err(), CohError::MixedSectors);
    }

    #[test]
    fn cross_sector_class_uses_oracle() {
        let m = bh(&[&[2, 0], &[1, 3]]);
        let red = Reducer::new(&m);
        let coords = red.normal_form(&ChainElement::from_monomial(Monomial::y(&[2, 1])), 6).unwrap();
        let k = red.basis.index_of(&Monomial::x(&[1, 3], &[0, 1])).unwrap();
        assert_eq!(coords[k].as_monomial().map(|(c, p)| (c.abs(), p)), Some((qi(3), 1)));
        assert_eq!(coords.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn duality_pairs_chain23() {
        let m = bh(&[&[2, 1], &[0, 3]]);
        let d = duality_matrix(&m).unwrap();
        assert!(d.is_monomial_bijection());
        let pairs: Vec<(String, String)> =
            d.pairs().into_iter().map(|p| (p.source.monomial, p.target.unwrap().monomial)).collect();
        let expect = [
            ("x1x2e1e2", "y1y2"),
            ("x1x2²e1e2", "y1y2²"),
            ("x1x2³e1e2", "y1y2³"),
            ("x1²x2e1e2", "x1x2³e1e2"),
            ("x2y1e2", "x1y2e1"),
            ("x2²y1e2", "x1y2²e1"),
            ("y1y2", "x1x2e1e2"),
            ("y1y2²", "x1x2²e1e2"),
            ("y1²y2", "x1²x2e1e2"),
            ("y1²y2²", "x1²x2²e1e2"),
        ];
        for (p, e) in pairs.iter().zip(expect) {
            assert_eq!((p.0.as_str(), p.1.as_str()), e);
        }
        let back = duality_matrix(&m.transpose()).unwrap();
        assert!(is_diagonal(&mat_mul(&back.entries, &d.entries)));
    }

    #[test]
    fn eigenvalue_identity_on_bases() {
        for e in [vec![vec![2, 1], vec![0, 3]], vec![vec![3, 1], vec![1, 2]], vec![vec![2]]] {
            let m = BHMatrix::validate(e).unwrap();
            let b = orbifold_basis(&m);
            for entry in &b.entries {
                assert_eq!(eigenvalue_identity(&entry.gradings, m.n()), Some(true), "{}", entry.mono);
            }
        }
    }
}
