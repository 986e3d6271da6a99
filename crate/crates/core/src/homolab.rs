//! Brute-force cohomology of finite windows of the monomial complex.
//!
//! The total differential `D = d + d^∨` raises `Q + Q^∨` by one and preserves
//! both the sector of `λ` and the class of `γ A^{-1}` modulo `Z^n`, so the
//! complex splits into small pieces indexed by (sector, class, degree).
//!
//! Cocycles are taken among chains supported in the window `B` and computed
//! without truncating their images; coboundaries come from chains supported
//! in the larger window `B + δ`. Ranks are accepted once the pair
//! `(B, B + δ)` agrees with `(B + δ, B + 2δ)`.
//!
//! Elimination happens at a rational value of `π`. `D` is homogeneous for
//! `deg π = -1`, `deg x^γ = γ·q_A`, `deg y^λ = λ·q_{A^T}`, `deg e_i = 1/2`, so
//! reduction coefficients lift back to monomials in `π`.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bhmat::{BHMatrix, Sector};
use crate::chaincx::{ChainElement, Cx, Monomial};
use crate::clifford::{PiLaurent, Wedge};
use crate::linalg::{self, sparse_from, Echelon, SparseVec};
use crate::rational::{pow_q, qf, qi, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("window {window} is below the largest matrix entry {need}")]
    WindowTooSmall { window: u32, need: u32 },
    #[error("ranks differ between windows {small} and {large}: {a:?} vs {b:?}")]
    Unstable { small: u32, large: u32, a: Vec<usize>, b: Vec<usize> },
    #[error("element is not a cocycle")]
    NotACocycle,
    #[error("monomial {0} lies outside the window")]
    NotInWindow(String),
    #[error("basis does not span the class (or is dependent) in sector {0:?}")]
    BasisDeficient(Vec<i64>),
    #[error("lifted relation failed to verify exactly")]
    LiftFailed,
}

/// `(sector λ, γA^{-1}·|det| mod |det|, Q + Q^∨)`.
type PieceKey = (Vec<i64>, Vec<i64>, usize);

/// The data needed to cut finite pieces out of `B_A` (or `C_A`).
#[derive(Debug, Clone)]
pub struct TruncatedComplex {
    pub cx: Cx,
    pub window: u32,
    pub pi: Q,
    /// Restrict to `S_A ⊗ Λ`, i.e. `C_A`.
    pub sa_only: bool,
    /// Window increment used for coboundaries and the stability test.
    pub step: u32,
    pi_inv: Q,
    /// `|det A|`
    dd: i64,
    /// `A^{-1} · |det A|`, integral.
    inv_num: Vec<Vec<i64>>,
    a: Vec<Vec<i64>>,
    sectors: Vec<Sector>,
}

pub fn truncate(m: &BHMatrix, window: u32, pi: Q) -> Result<TruncatedComplex, OracleError> {
    let need = m.entries().iter().flatten().copied().max().unwrap_or(0) as u32;
    if window < need {
        return Err(OracleError::WindowTooSmall { window, need });
    }
    assert!(!pi.is_zero(), "π must be specialized to a nonzero value");
    let step = m.entries().iter().map(|r| r.iter().sum::<i64>()).max().unwrap_or(1) as u32;
    let dd = m.det().abs();
    let inv_num = m
        .inv()
        .iter()
        .map(|r| r.iter().map(|x| (x * qi(dd)).to_integer().to_i64().unwrap()).collect())
        .collect();
    Ok(TruncatedComplex {
        cx: Cx::new(m),
        window,
        pi_inv: pi.recip(),
        pi,
        sa_only: false,
        step,
        dd,
        inv_num,
        a: m.entries().to_vec(),
        sectors: m.group_elements(),
    })
}

/// One monomial with its image under `D`.
#[derive(Debug, Clone)]
struct Cell {
    mono: Monomial,
    maxexp: u32,
    image: Vec<(Monomial, Q)>,
}

/// Monomials of one sector up to a bound, grouped by piece, with images.
#[derive(Debug, Clone)]
struct SectorCache {
    bound: u32,
    cells: BTreeMap<(Vec<i64>, usize), Vec<Cell>>,
}

impl TruncatedComplex {
    pub fn with_sa_only(mut self, yes: bool) -> Self {
        self.sa_only = yes;
        self
    }

    pub fn with_window(&self, window: u32) -> Self {
        TruncatedComplex { window, ..self.clone() }
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    fn n(&self) -> usize {
        self.cx.n()
    }

    /// `c·|det|` for `c = λA^{-T}`.
    fn c_num(&self, lam: &[u32]) -> Vec<i64> {
        (0..self.n()).map(|i| lam.iter().enumerate().map(|(k, &l)| l as i64 * self.inv_num[i][k]).sum()).collect()
    }

    /// `u·|det|` for `u = γA^{-1}`.
    fn u_num(&self, gamma: &[u32]) -> Vec<i64> {
        (0..self.n()).map(|i| gamma.iter().enumerate().map(|(k, &g)| g as i64 * self.inv_num[k][i]).sum()).collect()
    }

    fn ukey(&self, gamma: &[u32]) -> Vec<i64> {
        self.u_num(gamma).iter().map(|x| x.rem_euclid(self.dd)).collect()
    }

    /// `Q + Q^∨` of a monomial.
    pub fn degree(&self, mono: &Monomial) -> usize {
        let c = self.c_num(&mono.lam);
        mono.ext() + 2 * (0..self.n()).filter(|&i| !mono.wedge.contains(i) && c[i] > 0).count()
    }

    /// Weighted degree times `2|det|`.
    fn wdeg2(&self, mono: &Monomial) -> i64 {
        let s: i64 = self.u_num(&mono.gamma).iter().sum::<i64>() + self.c_num(&mono.lam).iter().sum::<i64>();
        2 * s + mono.ext() as i64 * self.dd
    }

    /// Weighted degree with `deg π = -1`.
    pub fn weighted_degree(&self, mono: &Monomial) -> Q {
        qf(self.wdeg2(mono), 2 * self.dd)
    }

    pub fn sector_of(&self, mono: &Monomial) -> Sector {
        let lam: Vec<i64> = mono.lam.iter().map(|&l| l as i64).collect();
        self.cx.m.sector_of(&lam)
    }

    fn piece_of(&self, mono: &Monomial) -> PieceKey {
        (self.sector_of(mono).lambda, self.ukey(&mono.gamma), self.degree(mono))
    }

    /// `D(mono)` at the chosen `π`, on a nonzero monomial.
    pub fn image(&self, mono: &Monomial) -> Vec<(Monomial, Q)> {
        let n = self.n();
        let c = self.c_num(&mono.lam);
        let vanish = |g: &[u32], c: &[i64]| g.iter().zip(c).any(|(&g, &c)| g > 0 && c > 0);
        let mut out = Vec::new();
        for i in 0..n {
            if let Some((s, w)) = mono.wedge.mul(i) {
                if mono.gamma[i] > 0 {
                    out.push((mono.with_wedge(w), qi(s * mono.gamma[i] as i64)));
                }
                for j in 0..n {
                    let a = self.a[j][i];
                    if a == 0 {
                        continue;
                    }
                    let g: Vec<u32> = (0..n).map(|k| mono.gamma[k] + self.a[j][k] as u32).collect();
                    if !vanish(&g, &c) {
                        out.push((Monomial { gamma: g, lam: mono.lam.clone(), wedge: w }, qi(s * a) * &self.pi));
                    }
                }
            }
            if let Some((s, w)) = mono.wedge.contract(i) {
                if c[i] != 0 {
                    out.push((mono.with_wedge(w), qf(s * c[i], self.dd) * &self.pi_inv));
                }
                let lam: Vec<u32> = (0..n).map(|k| mono.lam[k] + self.a[k][i] as u32).collect();
                let c2: Vec<i64> = (0..n).map(|k| c[k] + if k == i { self.dd } else { 0 }).collect();
                if !vanish(&mono.gamma, &c2) {
                    out.push((Monomial { gamma: mono.gamma.clone(), lam, wedge: w }, qi(s)));
                }
            }
        }
        out
    }

    /// Admissible `λ` in the sector with entries at most `bound`, with the mask of positive charges.
    fn sector_lams(&self, sector: &Sector, bound: u32) -> Vec<(Vec<u32>, Vec<bool>)> {
        let n = self.n();
        let c0: Vec<i64> = sector.charges.iter().map(|c| (c * qi(self.dd)).to_integer().to_i64().unwrap()).collect();
        let mut out = Vec::new();
        let mut k = vec![0i64; n];
        'outer: loop {
            // λ_j = sum_i (c0_i + k_i |det|) A_ji / |det|
            let lam: Option<Vec<u32>> = (0..n)
                .map(|j| {
                    let s: i64 = (0..n).map(|i| (c0[i] + k[i] * self.dd) * self.a[j][i]).sum();
                    let v = s / self.dd;
                    (v <= bound as i64).then_some(v as u32)
                })
                .collect();
            if let Some(l) = lam {
                let mask = (0..n).map(|i| c0[i] > 0 || k[i] > 0).collect();
                out.push((l, mask));
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                k[pos] += 1;
                if k[pos] <= bound as i64 {
                    break;
                }
                k[pos] = 0;
            }
        }
        out
    }

    /// Nonzero monomials of the sector with exponents at most `bound`.
    /// When `degree` is given only that `Q + Q^∨` degree is kept.
    pub fn monomials(&self, sector: &Sector, bound: u32, degree: Option<usize>) -> Vec<Monomial> {
        let n = self.n();
        let mut out = Vec::new();
        for (lam, mask) in self.sector_lams(sector, bound) {
            let free: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
            let mut gamma = vec![0u32; n];
            'g: loop {
                if !self.sa_only || self.u_num(&gamma).iter().all(|&u| u >= 0) {
                    for w in 0..1u32 << n {
                        let wedge = Wedge(w);
                        let t = wedge.len() + 2 * (0..n).filter(|&i| mask[i] && !wedge.contains(i)).count();
                        if degree.is_none_or(|d| d == t) {
                            out.push(Monomial { gamma: gamma.clone(), lam: lam.clone(), wedge });
                        }
                    }
                }
                let mut pos = free.len();
                loop {
                    if pos == 0 {
                        break 'g;
                    }
                    pos -= 1;
                    gamma[free[pos]] += 1;
                    if gamma[free[pos]] <= bound {
                        break;
                    }
                    gamma[free[pos]] = 0;
                }
            }
        }
        out.sort();
        out
    }

    fn cache(&self, sector: &Sector, bound: u32) -> SectorCache {
        let mut cells: BTreeMap<(Vec<i64>, usize), Vec<Cell>> = BTreeMap::new();
        for mono in self.monomials(sector, bound, None) {
            let key = (self.ukey(&mono.gamma), self.degree(&mono));
            let maxexp = mono.gamma.iter().chain(mono.lam.iter()).copied().max().unwrap_or(0);
            let image = self.image(&mono);
            cells.entry(key).or_default().push(Cell { mono, maxexp, image });
        }
        SectorCache { bound, cells }
    }

    /// Sparse rows with columns ordered by decreasing weighted degree, so each
    /// image pivots on its top term.
    fn rows<'a>(&self, cells: impl Iterator<Item = &'a Cell> + Clone, skip: &HashSet<&Monomial>) -> (Vec<SparseVec>, Vec<SparseVec>) {
        let mut cols: Vec<(i64, &Monomial)> = Vec::new();
        let mut seen: HashSet<&Monomial> = HashSet::new();
        for c in cells.clone() {
            for (m, _) in &c.image {
                if seen.insert(m) {
                    cols.push((-self.wdeg2(m), m));
                }
            }
        }
        cols.sort();
        let idx: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(k, (_, m))| (*m, k)).collect();
        let mut full = Vec::new();
        let mut outside = Vec::new();
        for c in cells {
            full.push(sparse_from(c.image.iter().map(|(m, x)| (idx[m], x.clone())).collect()));
            if !skip.is_empty() {
                outside.push(sparse_from(
                    c.image.iter().filter(|(m, _)| !skip.contains(m)).map(|(m, x)| (idx[m], x.clone())).collect(),
                ));
            }
        }
        (full, outside)
    }

    /// `dim H = |V| + rank(I mod V) - rank(I) - rank(D|V)` where `V` is spanned
    /// by the window-`B` monomials and `I` is the image of the larger window.
    fn piece_rank(&self, cyc: &[&Cell], bnd: &[&Cell]) -> usize {
        if cyc.is_empty() {
            return 0;
        }
        let (up, _) = self.rows(cyc.iter().copied(), &HashSet::new());
        let rank_d = linalg::rank(&up);
        if bnd.is_empty() {
            return cyc.len() - rank_d;
        }
        let in_v: HashSet<&Monomial> = cyc.iter().map(|c| &c.mono).collect();
        let (full, outside) = self.rows(bnd.iter().copied(), &in_v);
        cyc.len() + linalg::rank(&outside) - linalg::rank(&full) - rank_d
    }

    fn ranks_from_cache(&self, cache: &SectorCache, small: u32, large: u32) -> Vec<usize> {
        assert!(large <= cache.bound);
        let n = self.n();
        let empty = Vec::new();
        let mut ranks = vec![0usize; 2 * n + 1];
        for ((uk, t), cells) in &cache.cells {
            let cyc: Vec<&Cell> = cells.iter().filter(|c| c.maxexp <= small).collect();
            let bcells = if *t == 0 { &empty } else { cache.cells.get(&(uk.clone(), t - 1)).unwrap_or(&empty) };
            let bnd: Vec<&Cell> = bcells.iter().filter(|c| c.maxexp <= large).collect();
            ranks[*t] += self.piece_rank(&cyc, &bnd);
        }
        ranks
    }

    /// Ranks of `H^t` for `t = 0..=2n` at the window pair `(B, B + step)`.
    pub fn ranks_at(&self, sector: &Sector) -> Vec<usize> {
        let cache = self.cache(sector, self.window + self.step);
        self.ranks_from_cache(&cache, self.window, self.window + self.step)
    }

    /// Ranks per degree for a sector, checked for window stability.
    pub fn cohomology_rank(&self, sector: &Sector) -> Result<Vec<usize>, OracleError> {
        let (b, s) = (self.window, self.step);
        let cache = self.cache(sector, b + 2 * s);
        let first = self.ranks_from_cache(&cache, b, b + s);
        let second = self.ranks_from_cache(&cache, b + s, b + 2 * s);
        if first == second {
            Ok(first)
        } else {
            Err(OracleError::Unstable { small: b, large: b + s, a: first, b: second })
        }
    }

    /// Expresses a cocycle in terms of basis classes.
    pub fn reduce_by_oracle(&self, v: &ChainElement, basis: &[Monomial]) -> Result<OracleReduction, OracleError> {
        for (m, _) in v.terms() {
            if m.gamma.iter().chain(m.lam.iter()).any(|&e| e > self.window) {
                return Err(OracleError::NotInWindow(m.render()));
            }
        }
        if !self.cx.apply_total(v).is_zero() {
            return Err(OracleError::NotACocycle);
        }
        // split v into homogeneous components of each piece
        let mut groups: BTreeMap<(PieceKey, Q), BTreeMap<Monomial, Q>> = BTreeMap::new();
        for (m, c) in v.terms() {
            let key = self.piece_of(m);
            let wd = self.weighted_degree(m);
            for (k, x) in c.terms() {
                let total = &wd - qi(k);
                let e = groups.entry((key.clone(), total)).or_default();
                *e.entry(m.clone()).or_insert_with(Q::zero) += x * pow_q(&self.pi, k);
            }
        }
        let basis_keys: Vec<PieceKey> = basis.iter().map(|b| self.piece_of(b)).collect();
        let mut coords = vec![PiLaurent::zero(); basis.len()];
        let mut primitive = ChainElement::zero();
        let mut caches: HashMap<Vec<i64>, SectorCache> = HashMap::new();
        for ((key, total), comp) in groups {
            let sector = self.sectors.iter().find(|s| s.lambda == key.0).expect("sector");
            let cache = caches
                .entry(key.0.clone())
                .or_insert_with(|| self.cache(sector, self.window + self.step));
            let (cs, prim) = self.solve_piece(cache, &key, &total, &comp, basis, &basis_keys)?;
            for (i, c) in cs {
                coords[i] += &c;
            }
            primitive.add(&prim);
        }
        // exact check with formal π
        let mut resid = v.clone();
        for (b, c) in basis.iter().zip(&coords) {
            resid.add(&ChainElement::term(b.clone(), -c.clone()));
        }
        resid = resid.sub(&self.cx.apply_total(&primitive));
        if !resid.is_zero() {
            return Err(OracleError::LiftFailed);
        }
        Ok(OracleReduction { coords, primitive })
    }

    fn solve_piece(
        &self,
        cache: &SectorCache,
        key: &PieceKey,
        total: &Q,
        comp: &BTreeMap<Monomial, Q>,
        basis: &[Monomial],
        basis_keys: &[PieceKey],
    ) -> Result<(Vec<(usize, PiLaurent)>, ChainElement), OracleError> {
        let (lam0, uk, t) = key;
        let members: Vec<usize> = (0..basis.len())
            .filter(|&i| &basis_keys[i] == key && (self.weighted_degree(&basis[i]) - total).is_integer())
            .collect();
        let empty = Vec::new();
        let gens: Vec<&Cell> = if *t == 0 {
            Vec::new()
        } else {
            cache.cells.get(&(uk.clone(), t - 1)).unwrap_or(&empty).iter().collect()
        };
        let mut idx: HashMap<Monomial, usize> = HashMap::new();
        let mut intern = |m: &Monomial| -> usize {
            let l = idx.len();
            *idx.entry(m.clone()).or_insert(l)
        };
        let mut im = Echelon::<Q>::new(true);
        for g in &gens {
            let v = sparse_from(g.image.iter().map(|(m, c)| (intern(m), c.clone())).collect());
            im.insert(&v);
        }
        let target = sparse_from(comp.iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (intern(m), c.clone())).collect());
        let rv = im.reduce(&target);
        let mut classes = Echelon::<Q>::new(true);
        let mut reds = Vec::new();
        for &i in &members {
            let r = im.reduce(&[(intern(&basis[i]), Q::one())]);
            if !classes.insert(&r.residual) {
                return Err(OracleError::BasisDeficient(lam0.clone()));
            }
            reds.push(r);
        }
        let rc = classes.reduce(&rv.residual);
        if !rc.residual.is_empty() {
            return Err(OracleError::BasisDeficient(lam0.clone()));
        }
        // target = sum_k rc_k (b_k - imcombo_k) + im-part
        let mut coords = Vec::new();
        let mut u_combo = rv.combo.clone();
        for (k, ck) in &rc.combo {
            let i = members[*k];
            let s = (self.weighted_degree(&basis[i]) - total).to_integer().to_i64().unwrap();
            coords.push((i, PiLaurent::term(ck / pow_q(&self.pi, s), s)));
            for (g, x) in &reds[*k].combo {
                *u_combo.entry(*g).or_insert_with(Q::zero) -= ck * x;
            }
        }
        let mut prim = ChainElement::zero();
        let half = qf(1, 2);
        for (g, x) in u_combo {
            if x.is_zero() {
                continue;
            }
            let s = self.weighted_degree(&gens[g].mono) - (total - &half);
            if !s.is_integer() {
                return Err(OracleError::LiftFailed);
            }
            let s = s.to_integer().to_i64().unwrap();
            prim.add_term(gens[g].mono.clone(), &PiLaurent::term(&x / pow_q(&self.pi, s), s));
        }
        Ok((coords, prim))
    }
}

/// Coordinates of a class plus a primitive of the difference.
#[derive(Debug, Clone)]
pub struct OracleReduction {
    pub coords: Vec<PiLaurent>,
    pub primitive: ChainElement,
}

/// `dim F[x]/(∂_1 W, .., ∂_n W)` by graded linear algebra.
pub fn milnor_dimension(m: &BHMatrix) -> usize {
    let n = m.n();
    if n == 0 {
        return 1;
    }
    let q = m.weights();
    let hess = q.iter().fold(Q::zero(), |a, x| a + Q::one() - x - x);
    let mut by_deg: BTreeMap<Q, Vec<Vec<u32>>> = BTreeMap::new();
    let bounds: Vec<u32> = q.iter().map(|x| (&hess / x).floor().to_integer().to_u32().unwrap()).collect();
    let mut g = vec![0u32; n];
    'outer: loop {
        let d = (0..n).fold(Q::zero(), |a, i| a + &q[i] * qi(g[i] as i64));
        if d <= hess {
            by_deg.entry(d).or_default().push(g.clone());
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            g[pos] += 1;
            if g[pos] <= bounds[pos] {
                break;
            }
            g[pos] = 0;
        }
    }
    let mut total = 0;
    for (d, monos) in &by_deg {
        let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let mut rows = Vec::new();
        for j in 0..n {
            let shift = d - (Q::one() - &q[j]);
            let Some(bases) = by_deg.get(&shift) else { continue };
            for alpha in bases {
                let mut v = Vec::new();
                for i in 0..n {
                    let a = m.a(i, j);
                    if a != 0 {
                        let mono: Vec<u32> = (0..n).map(|k| alpha[k] + m.a(i, k) as u32 - (k == j) as u32).collect();
                        v.push((index[&mono], qi(a)));
                    }
                }
                rows.push(sparse_from(v));
            }
        }
        total += monos.len() - linalg::rank(&rows);
    }
    total
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorRanks {
    pub lambda: Vec<i64>,
    pub ranks_b: Vec<usize>,
    pub ranks_c: Vec<usize>,
    pub milnor: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiIsoReport {
    pub window: u32,
    pub sectors: Vec<SectorRanks>,
    pub total_b: usize,
    pub total_milnor: usize,
    pub pass: bool,
}

/// Compares `H(C_A)`, `H(B_A)` and the orbifold Milnor count sector by sector.
pub fn verify_quasi_iso(m: &BHMatrix, window: u32) -> Result<QuasiIsoReport, OracleError> {
    verify_ranks(m, window, true)
}

/// As [`verify_quasi_iso`]; `with_c = false` skips the `C_A` ranks.
pub fn verify_ranks(m: &BHMatrix, window: u32, with_c: bool) -> Result<QuasiIsoReport, OracleError> {
    let tb = truncate(m, window, Q::one())?;
    let tc = tb.clone().with_sa_only(true);
    let mut sectors = Vec::new();
    let mut pass = true;
    for s in tb.sectors() {
        let rb = tb.cohomology_rank(s)?;
        let rc = if with_c { tc.cohomology_rank(s)? } else { rb.clone() };
        let milnor = milnor_dimension(&s.sub);
        pass &= rb == rc && rb.iter().sum::<usize>() == milnor;
        sectors.push(SectorRanks { lambda: s.lambda.clone(), ranks_b: rb, ranks_c: rc, milnor });
    }
    let total_b = sectors.iter().map(|s| s.ranks_b.iter().sum::<usize>()).sum();
    let total_milnor = sectors.iter().map(|s| s.milnor).sum();
    Ok(QuasiIsoReport { window, sectors, total_b, total_milnor, pass: pass && total_b == total_milnor })
}

/// A window the stability protocol accepts on the built-in corpus.
pub fn default_window(m: &BHMatrix) -> u32 {
    m.entries().iter().flatten().copied().max().unwrap_or(1) as u32 + 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bh(e: &[&[i64]]) -> BHMatrix {
        BHMatrix::validate(e.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn milnor_dims() {
        assert_eq!(milnor_dimension(&bh(&[&[2]])), 1);
        assert_eq!(milnor_dimension(&bh(&[&[2, 1], &[0, 3]])), 4);
        assert_eq!(milnor_dimension(&bh(&[&[3, 1], &[1, 2]])), 6);
        assert_eq!(milnor_dimension(&BHMatrix::empty()), 1);
    }

    #[test]
    fn x_squared_ranks() {
        let tc = truncate(&bh(&[&[2]]), 4, Q::one()).unwrap();
        let s = tc.sectors().to_vec();
        assert_eq!(tc.cohomology_rank(&s[0]).unwrap(), vec![0, 1, 0]);
        assert_eq!(tc.cohomology_rank(&s[1]).unwrap(), vec![0, 0, 1]);
        assert!(matches!(truncate(&bh(&[&[3]]), 2, Q::one()), Err(OracleError::WindowTooSmall { .. })));
    }

    #[test]
    fn x_squared_reduction() {
        let tc = truncate(&bh(&[&[2]]), 6, Q::one()).unwrap();
        let basis = vec![Monomial::x(&[1], &[0]), Monomial::y(&[1])];
        let v = ChainElement::from_monomial(Monomial::x(&[3], &[0]));
        let r = tc.reduce_by_oracle(&v, &basis).unwrap();
        assert_eq!(r.coords[0], PiLaurent::term(qf(-1, 2), -1));
        assert!(r.coords[1].is_zero());
        let v = ChainElement::from_monomial(Monomial::x(&[5], &[0]));
        let r = tc.reduce_by_oracle(&v, &basis).unwrap();
        assert_eq!(r.coords[0], PiLaurent::term(qf(3, 4), -2));
    }

    #[test]
    fn oracle_errors() {
        let tc = truncate(&bh(&[&[2]]), 4, Q::one()).unwrap();
        let basis = vec![Monomial::x(&[1], &[0])];
        let v = ChainElement::from_monomial(Monomial::one(1));
        assert_eq!(tc.reduce_by_oracle(&v, &basis).unwrap_err(), OracleError::NotACocycle);
        let v = ChainElement::from_monomial(Monomial::x(&[9], &[0]));
        assert!(matches!(tc.reduce_by_oracle(&v, &basis), Err(OracleError::NotInWindow(_))));
        let v = ChainElement::from_monomial(Monomial::x(&[3], &[0]));
        assert!(matches!(tc.reduce_by_oracle(&v, &[]), Err(OracleError::BasisDeficient(_))));
    }

    #[test]
    fn image_matches_formal_differential() {
        let m = bh(&[&[2, 1], &[0, 3]]);
        let tc = truncate(&m, 4, qi(3)).unwrap();
        for s in tc.sectors().to_vec() {
            for mono in tc.monomials(&s, 4, None) {
                let fast: BTreeMap<Monomial, Q> = tc.image(&mono).into_iter().collect();
                let slow = tc.cx.apply_total(&ChainElement::from_monomial(mono.clone())).eval(&qi(3));
                assert_eq!(fast, slow, "{mono}");
            }
        }
    }

    #[test]
    fn pi_value_does_not_matter() {
        let m = bh(&[&[2, 1], &[0, 3]]);
        let a = truncate(&m, 5, Q::one()).unwrap();
        let b = truncate(&m, 5, qi(2)).unwrap();
        let s = a.sectors()[0].clone();
        assert_eq!(a.cohomology_rank(&s).unwrap(), b.cohomology_rank(&s).unwrap());
        let basis = vec![Monomial::x(&[1], &[0])];
        let v = ChainElement::from_monomial(Monomial::x(&[3], &[0]));
        let m1 = bh(&[&[2]]);
        let r1 = truncate(&m1, 6, Q::one()).unwrap().reduce_by_oracle(&v, &basis).unwrap();
        let r2 = truncate(&m1, 6, qi(3)).unwrap().reduce_by_oracle(&v, &basis).unwrap();
        assert_eq!(r1.coords, r2.coords);
    }
}
