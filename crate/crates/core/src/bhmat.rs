//! Berglund-Hübsch exponent matrices.
//!
//! A matrix `A` encodes the polynomial `W_A(x) = sum_i x^{e_i A}`: row `i` is
//! the exponent vector of the `i`-th monomial. Validity is decided by
//! structurally matching `A` against a direct sum of chain and loop atoms.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{det_int, fmt_q, inverse, qi, QMatrix, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BhError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("singular matrix (det = 0)")]
    Singular,
    #[error("not an invertible polynomial: {0}")]
    NotInvertiblePolynomial(String),
    #[error("matrix is not a single chain or loop atom")]
    NotAnAtom,
}

/// An irreducible invertible polynomial in canonical form.
///
/// `Chain([a1, .., an])` is `x1^a1 x2 + .. + x_{n-1}^a_{n-1} x_n + x_n^a_n`,
/// `Loop([a1, .., an])` closes the cycle with `x_n^a_n x_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Chain(Vec<u32>),
    Loop(Vec<u32>),
}

impl Atom {
    pub fn exponents(&self) -> &[u32] {
        match self {
            Atom::Chain(a) | Atom::Loop(a) => a,
        }
    }

    pub fn len(&self) -> usize {
        self.exponents().len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents().is_empty()
    }

    /// Canonical exponent matrix of the atom.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let a = self.exponents();
        let n = a.len();
        let mut m = vec![vec![0i64; n]; n];
        for k in 0..n {
            m[k][k] = a[k] as i64;
            if k + 1 < n {
                m[k][k + 1] = 1;
            }
        }
        if let Atom::Loop(_) = self {
            m[n - 1][0] += 1;
        }
        m
    }

    /// The atom of the transposed matrix.
    pub fn transposed(&self) -> Atom {
        match self {
            Atom::Chain(a) => Atom::Chain(a.iter().rev().copied().collect()),
            Atom::Loop(a) => Atom::Loop(a.iter().rev().copied().collect()),
        }
    }

    /// Equality up to rotation for loops.
    pub fn equivalent(&self, other: &Atom) -> bool {
        match (self, other) {
            (Atom::Chain(a), Atom::Chain(b)) => a == b,
            (Atom::Loop(a), Atom::Loop(b)) => {
                a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|k| a[(k + s) % a.len()] == b[k]))
            }
            _ => false,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, a) = match self {
            Atom::Chain(a) => ("chain", a),
            Atom::Loop(a) => ("loop", a),
        };
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        write!(f, "{}({})", name, parts.join(","))
    }
}

/// Variable permutation plus the atoms it exposes.
///
/// `permutation[k]` is the original variable sitting at canonical position `k`
/// and `row_order[k]` the original row (monomial) whose leading variable it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomDecomposition {
    pub permutation: Vec<usize>,
    pub row_order: Vec<usize>,
    pub atoms: Vec<Atom>,
}

impl AtomDecomposition {
    /// Block-direct-sum of the canonical atom matrices.
    pub fn canonical_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.permutation.len();
        let mut m = vec![vec![0i64; n]; n];
        let mut off = 0;
        for atom in &self.atoms {
            let block = atom.matrix();
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m[off + i][off + j] = v;
                }
            }
            off += atom.len();
        }
        m
    }
}

/// A validated Berglund-Hübsch matrix with its exact inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BHMatrix {
    entries: Vec<Vec<i64>>,
    det: i64,
    inv: QMatrix,
    decomposition: AtomDecomposition,
}

impl BHMatrix {
    /// Validates a square non-negative integer matrix.
    pub fn validate(entries: Vec<Vec<i64>>) -> Result<Self, BhError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(BhError::BadShape(format!("expected a square {n}x{n} matrix")));
        }
        if entries.iter().flatten().any(|&x| x < 0) {
            return Err(BhError::BadShape("entries must be non-negative".into()));
        }
        let det = det_int(&entries);
        if det.is_zero() {
            return Err(BhError::Singular);
        }
        let det = det
            .to_i64()
            .ok_or_else(|| BhError::BadShape("determinant out of range".into()))?;
        let inv = inverse(&entries).ok_or(BhError::Singular)?;
        let decomposition = find_decomposition(&entries)?;
        let m = BHMatrix { entries, det, inv, decomposition };
        for (i, q) in m.weights().iter().enumerate() {
            if !(q > &Q::zero() && q < &Q::one()) {
                return Err(BhError::NotInvertiblePolynomial(format!(
                    "weight q_{} = {} is not in (0,1)",
                    i + 1,
                    fmt_q(q)
                )));
            }
        }
        Ok(m)
    }

    /// The 0x0 matrix of a fully twisted sector.
    pub fn empty() -> Self {
        BHMatrix {
            entries: Vec::new(),
            det: 1,
            inv: Vec::new(),
            decomposition: AtomDecomposition { permutation: vec![], row_order: vec![], atoms: vec![] },
        }
    }

    pub fn from_atom(atom: &Atom) -> Result<Self, BhError> {
        Self::validate(atom.matrix())
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.entries[i].clone()
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// Exact `A^{-1}`.
    pub fn inv(&self) -> &QMatrix {
        &self.inv
    }

    pub fn decomposition(&self) -> &AtomDecomposition {
        &self.decomposition
    }

    pub fn decompose(&self) -> AtomDecomposition {
        self.decomposition.clone()
    }

    pub fn transpose(&self) -> BHMatrix {
        let n = self.n();
        let t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect();
        BHMatrix::validate(t).expect("the transpose of a BH matrix is BH")
    }

    pub fn direct_sum(&self, other: &BHMatrix) -> Result<BHMatrix, BhError> {
        let (n, m) = (self.n(), other.n());
        let mut e = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            e[i][..n].copy_from_slice(&self.entries[i]);
        }
        for i in 0..m {
            e[n + i][n..].copy_from_slice(&other.entries[i]);
        }
        BHMatrix::validate(e)
    }

    /// Quasi-homogeneous weights `q = A^{-1} (1,..,1)^T`.
    pub fn weights(&self) -> Vec<Q> {
        self.inv.iter().map(|r| r.iter().fold(Q::zero(), |a, x| a + x)).collect()
    }

    /// Milnor number `prod (1/q_i - 1)`.
    pub fn milnor_number(&self) -> i64 {
        let mu = self.weights().iter().fold(Q::one(), |a, q| a * (q.recip() - Q::one()));
        assert!(mu.is_integer(), "Milnor number must be integral");
        mu.to_integer().to_i64().unwrap()
    }

    /// `gamma A^{-1}` for an exponent row vector.
    pub fn x_charges(&self, gamma: &[u32]) -> Vec<Q> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut s = Q::zero();
                for (k, &g) in gamma.iter().enumerate() {
                    if g != 0 && !self.inv[k][i].is_zero() {
                        s += &self.inv[k][i] * qi(g as i64);
                    }
                }
                s
            })
            .collect()
    }

    /// `lambda A^{-T}`, the fractional phases of the group element `lambda`.
    pub fn y_charges(&self, lam: &[i64]) -> Vec<Q> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut s = Q::zero();
                for (k, &l) in lam.iter().enumerate() {
                    if l != 0 && !self.inv[i][k].is_zero() {
                        s += &self.inv[i][k] * qi(l);
                    }
                }
                s
            })
            .collect()
    }

    /// Keeps the rows and columns where `keep` is true.
    pub fn submatrix(&self, keep: &[bool]) -> Vec<Vec<i64>> {
        let idx: Vec<usize> = (0..self.n()).filter(|&i| keep[i]).collect();
        idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect()).collect()
    }

    /// The canonical representatives of `Z^n / Z^n A^T`, sorted by `lambda`.
    pub fn group_elements(&self) -> Vec<Sector> {
        let n = self.n();
        let bounds: Vec<i64> = self.entries.iter().map(|r| r.iter().sum::<i64>()).collect();
        let mut out = Vec::new();
        let mut lam = vec![0i64; n];
        loop {
            let charges = self.y_charges(&lam);
            if charges.iter().all(|c| c >= &Q::zero() && c < &Q::one()) {
                out.push(self.sector_from(lam.clone(), charges));
            }
            // odometer over the bounding box, last coordinate fastest
            let mut k = n;
            loop {
                if k == 0 {
                    debug_assert_eq!(out.len() as i64, self.det.abs());
                    return out;
                }
                k -= 1;
                lam[k] += 1;
                if lam[k] < bounds[k] {
                    break;
                }
                lam[k] = 0;
            }
        }
    }

    fn sector_from(&self, lambda: Vec<i64>, charges: Vec<Q>) -> Sector {
        let jvee: Vec<bool> = charges.iter().map(|c| !c.is_integer()).collect();
        let keep: Vec<bool> = jvee.iter().map(|j| !j).collect();
        let sub = BHMatrix::validate(self.submatrix(&keep)).unwrap_or_else(|_| {
            if keep.iter().all(|k| !k) {
                BHMatrix::empty()
            } else {
                panic!("sector submatrix of a BH matrix must be BH")
            }
        });
        Sector { lambda, charges, jvee, sub }
    }

    /// The sector containing an arbitrary admissible `lambda`.
    pub fn sector_of(&self, lam: &[i64]) -> Sector {
        let charges: Vec<Q> = self.y_charges(lam).iter().map(crate::rational::frac).collect();
        let lambda = self.lambda_from_charges(&charges);
        self.sector_from(lambda, charges)
    }

    /// `f A^T` for a charge vector `f`; must be integral.
    pub fn lambda_from_charges(&self, f: &[Q]) -> Vec<i64> {
        let n = self.n();
        (0..n)
            .map(|j| {
                let s = (0..n).fold(Q::zero(), |a, i| a + &f[i] * qi(self.entries[j][i]));
                assert!(s.is_integer(), "non-integral group element");
                s.to_integer().to_i64().unwrap()
            })
            .collect()
    }

    /// The blocks `(lambda, A^lambda)` of `A^orb`.
    pub fn orbifold_matrix(&self) -> Vec<(Sector, BHMatrix)> {
        self.group_elements()
            .into_iter()
            .map(|s| {
                let sub = s.sub.clone();
                (s, sub)
            })
            .collect()
    }

    /// Whether the matrix is exactly one canonical chain or loop (identity permutation).
    pub fn as_atom(&self) -> Option<Atom> {
        let d = &self.decomposition;
        let ident = d.permutation.iter().enumerate().all(|(k, &p)| k == p);
        if d.atoms.len() == 1 && ident && d.canonical_matrix() == self.entries {
            Some(d.atoms[0].clone())
        } else {
            None
        }
    }

    /// Checks how non-integrality of `beta A^{-1}` and `beta A^{-T}` spreads
    /// through an atom.
    ///
    /// From `beta_i = u_{i-1} + a_i u_i` (with `u = beta A^{-1}`) a non-integral
    /// `u_{i-1}` forces a non-integral `u_i`, and from `beta_i = a_i w_i + w_{i+1}`
    /// (with `w = beta A^{-T}`) a non-integral `w_{i+1}` forces `w_i`. For chains
    /// the non-integral indices of `u` are therefore upward closed and those of
    /// `w` downward closed; for loops both are all-or-nothing.
    pub fn check_noninteger_propagation(&self, beta: &[i64]) -> Result<bool, BhError> {
        let atom = self.as_atom().ok_or(BhError::NotAnAtom)?;
        let n = self.n();
        let u: Vec<bool> = (0..n)
            .map(|i| {
                let s = (0..n).fold(Q::zero(), |a, k| a + qi(beta[k]) * &self.inv[k][i]);
                !s.is_integer()
            })
            .collect();
        let w: Vec<bool> = self.y_charges(beta).iter().map(|c| !c.is_integer()).collect();
        Ok(match atom {
            Atom::Chain(_) => {
                let up = (0..n).all(|i| !u[i] || (i..n).all(|k| u[k]));
                let down = (0..n).all(|i| !w[i] || (0..=i).all(|j| w[j]));
                up && down
            }
            Atom::Loop(_) => {
                let all_or_none = |v: &[bool]| v.iter().all(|&x| x) || v.iter().all(|&x| !x);
                all_or_none(&u) && all_or_none(&w)
            }
        })
    }
}

impl fmt::Display for BHMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A group element of `G_A` together with the data it determines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub lambda: Vec<i64>,
    /// `lambda A^{-T}`, each entry in `[0, 1)`.
    pub charges: Vec<Q>,
    /// Directions moved by the group element.
    pub jvee: Vec<bool>,
    /// `A^lambda`, possibly 0x0.
    pub sub: BHMatrix,
}

impl Sector {
    /// Indices fixed by the group element, in increasing order.
    pub fn fixed(&self) -> Vec<usize> {
        (0..self.jvee.len()).filter(|&i| !self.jvee[i]).collect()
    }

    pub fn twisted(&self) -> Vec<usize> {
        (0..self.jvee.len()).filter(|&i| self.jvee[i]).collect()
    }

    pub fn is_untwisted(&self) -> bool {
        self.jvee.iter().all(|j| !j)
    }

    pub fn is_fully_twisted(&self) -> bool {
        self.jvee.iter().all(|&j| j)
    }
}

/// Enumerates every chain/loop structure and keeps the lexicographically
/// smallest canonical variable order.
fn find_decomposition(a: &[Vec<i64>]) -> Result<AtomDecomposition, BhError> {
    let n = a.len();
    let mut supports = Vec::with_capacity(n);
    for (r, row) in a.iter().enumerate() {
        let s: Vec<usize> = (0..n).filter(|&c| row[c] > 0).collect();
        if s.is_empty() || s.len() > 2 {
            return Err(BhError::NotInvertiblePolynomial(format!(
                "monomial {} has {} variables",
                r + 1,
                s.len()
            )));
        }
        supports.push(s);
    }
    let mut best: Option<AtomDecomposition> = None;
    let mut main = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(a, &supports, 0, &mut main, &mut used, &mut best);
    best.ok_or_else(|| BhError::NotInvertiblePolynomial("no chain/loop decomposition".into()))
}

fn search(
    a: &[Vec<i64>],
    supports: &[Vec<usize>],
    r: usize,
    main: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut Option<AtomDecomposition>,
) {
    let n = a.len();
    if r == n {
        if let Some(d) = structure(a, supports, main) {
            if best.as_ref().is_none_or(|b| d.permutation < b.permutation) {
                *best = Some(d);
            }
        }
        return;
    }
    for &c in &supports[r] {
        if used[c] {
            continue;
        }
        if let Some(&other) = supports[r].iter().find(|&&o| o != c) {
            if a[r][other] != 1 {
                continue;
            }
        }
        used[c] = true;
        main[r] = c;
        search(a, supports, r + 1, main, used, best);
        used[c] = false;
    }
}

fn structure(a: &[Vec<i64>], supports: &[Vec<usize>], main: &[usize]) -> Option<AtomDecomposition> {
    let n = a.len();
    let mut row_of = vec![0usize; n];
    let mut next: Vec<Option<usize>> = vec![None; n];
    let mut pointed = vec![false; n];
    for r in 0..n {
        let v = main[r];
        row_of[v] = r;
        if let Some(&o) = supports[r].iter().find(|&&o| o != v) {
            if pointed[o] {
                return None;
            }
            pointed[o] = true;
            next[v] = Some(o);
        }
    }
    let mut seen = vec![false; n];
    let mut seqs: Vec<(bool, Vec<usize>)> = Vec::new();
    for s in 0..n {
        if pointed[s] {
            continue;
        }
        let mut seq = vec![s];
        seen[s] = true;
        let mut cur = s;
        while let Some(nx) = next[cur] {
            seq.push(nx);
            seen[nx] = true;
            cur = nx;
        }
        seqs.push((false, seq));
    }
    for s in 0..n {
        if seen[s] {
            continue;
        }
        // s is the smallest unseen variable of its cycle
        let mut seq = vec![s];
        seen[s] = true;
        let mut cur = next[s].expect("cycle");
        while cur != s {
            seq.push(cur);
            seen[cur] = true;
            cur = next[cur].expect("cycle");
        }
        seqs.push((true, seq));
    }
    seqs.sort_by_key(|(_, s)| s[0]);
    let mut permutation = Vec::with_capacity(n);
    let mut row_order = Vec::with_capacity(n);
    let mut atoms = Vec::new();
    for (is_loop, seq) in seqs {
        let exps: Vec<u32> = seq.iter().map(|&v| a[row_of[v]][v] as u32).collect();
        permutation.extend(seq.iter().copied());
        row_order.extend(seq.iter().map(|&v| row_of[v]));
        atoms.push(if is_loop { Atom::Loop(exps) } else { Atom::Chain(exps) });
    }
    Some(AtomDecomposition { permutation, row_order, atoms })
}

/// The JSON matrix input format `{"matrix": [[...], ...]}`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct MatrixJson {
    pub matrix: Vec<Vec<i64>>,
}

/// Parses either `{"matrix": ...}` or a bare nested array.
pub fn parse_matrix_json(s: &str) -> Result<Vec<Vec<i64>>, serde_json::Error> {
    match serde_json::from_str::<MatrixJson>(s) {
        Ok(m) => Ok(m.matrix),
        Err(_) => serde_json::from_str::<Vec<Vec<i64>>>(s),
    }
}

/// Serialized form of a sector; rationals are `"num/den"` strings.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SectorJson {
    pub lambda: Vec<i64>,
    pub charges: Vec<String>,
    pub jvee: Vec<bool>,
    pub sub: Vec<Vec<i64>>,
}

impl From<&Sector> for SectorJson {
    fn from(s: &Sector) -> Self {
        SectorJson {
            lambda: s.lambda.clone(),
            charges: s.charges.iter().map(fmt_q).collect(),
            jvee: s.jvee.clone(),
            sub: s.sub.entries().to_vec(),
        }
    }
}

pub fn abs_det(m: &BHMatrix) -> u64 {
    m.det().unsigned_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn bh(e: &[&[i64]]) -> Result<BHMatrix, BhError> {
        BHMatrix::validate(e.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn validate_examples() {
        let m = bh(&[&[2]]).unwrap();
        assert_eq!(m.decomposition().atoms, vec![Atom::Chain(vec![2])]);
        let m = bh(&[&[2, 1], &[0, 3]]).unwrap();
        assert_eq!(m.decomposition().atoms, vec![Atom::Chain(vec![2, 3])]);
        assert_eq!(m.decomposition().permutation, vec![0, 1]);
        assert_eq!(bh(&[&[1, 1], &[1, 1]]), Err(BhError::Singular));
    }

    #[test]
    fn shape_and_structure_errors() {
        assert!(matches!(bh(&[&[1, 2]]), Err(BhError::BadShape(_))));
        assert!(matches!(bh(&[&[-1]]), Err(BhError::BadShape(_))));
        // three variables in one monomial
        assert!(matches!(
            bh(&[&[2, 1, 1], &[0, 2, 0], &[0, 0, 2]]),
            Err(BhError::NotInvertiblePolynomial(_))
        ));
        // x^1 alone has weight 1
        assert!(matches!(bh(&[&[1]]), Err(BhError::NotInvertiblePolynomial(_))));
        // pointer exponent 2 is not a chain
        assert!(matches!(bh(&[&[2, 2], &[0, 3]]), Err(BhError::NotInvertiblePolynomial(_))));
        // x1 x2 + x2^2 x1 has a zero weight
        assert!(matches!(bh(&[&[1, 1], &[1, 2]]), Err(BhError::NotInvertiblePolynomial(_))));
    }

    #[test]
    fn decompose_examples() {
        let m = bh(&[&[3, 1], &[1, 2]]).unwrap();
        assert_eq!(m.decompose().atoms, vec![Atom::Loop(vec![3, 2])]);
        let m = bh(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(m.decompose().atoms, vec![Atom::Chain(vec![2]), Atom::Chain(vec![3])]);
        // x1^2 + x1 x2^3: chain through x2 then x1
        let m = bh(&[&[2, 0], &[1, 3]]).unwrap();
        let d = m.decompose();
        assert_eq!(d.atoms, vec![Atom::Chain(vec![3, 2])]);
        assert_eq!(d.permutation, vec![1, 0]);
    }

    #[test]
    fn decomposition_reproduces_matrix() {
        let m = bh(&[&[0, 3, 0], &[1, 0, 2], &[0, 0, 2]]);
        // x2^3 + x1 x3^2 + x3^2: two monomials in x3 only -> x3 would be main twice
        assert!(m.is_err());
        let m = bh(&[&[0, 3, 1], &[0, 0, 2], &[4, 0, 0]]).unwrap();
        let d = m.decompose();
        let c = d.canonical_matrix();
        for k in 0..3 {
            for l in 0..3 {
                assert_eq!(c[k][l], m.a(d.row_order[k], d.permutation[l]));
            }
        }
    }

    #[test]
    fn chain23_sectors() {
        let m = bh(&[&[2, 1], &[0, 3]]).unwrap();
        let g = m.group_elements();
        let lams: Vec<Vec<i64>> = g.iter().map(|s| s.lambda.clone()).collect();
        assert_eq!(lams, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        let ch: Vec<Vec<Q>> = g.iter().map(|s| s.charges.clone()).collect();
        assert_eq!(ch[1], vec![qf(1, 2), qf(0, 1)]);
        assert_eq!(ch[3], vec![qf(1, 6), qf(2, 3)]);
        assert_eq!(ch[4], vec![qf(5, 6), qf(1, 3)]);
        let t = m.transpose().group_elements();
        let lams: Vec<Vec<i64>> = t.iter().map(|s| s.lambda.clone()).collect();
        assert_eq!(lams, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![1, 3]]);
        assert_eq!(t[5].charges, vec![qf(1, 2), qf(5, 6)]);
    }

    #[test]
    fn one_variable_sectors() {
        let g = bh(&[&[2]]).unwrap().group_elements();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].jvee, vec![false]);
        assert_eq!(g[1].charges, vec![qf(1, 2)]);
        assert_eq!(g[1].jvee, vec![true]);
        assert_eq!(g[1].sub.n(), 0);
        assert_eq!(bh(&[&[3]]).unwrap().group_elements().len(), 3);
    }

    #[test]
    fn orbifold_blocks() {
        let m = bh(&[&[2, 1], &[0, 3]]).unwrap();
        let orb = m.orbifold_matrix();
        assert_eq!(orb[0].1, m);
        assert_eq!(orb[1].1.entries(), &[vec![3]]);
        assert!(orb[2..].iter().all(|(_, b)| b.n() == 0));
        let orb = bh(&[&[2]]).unwrap().orbifold_matrix();
        assert_eq!(orb[0].1.entries(), &[vec![2]]);
        assert_eq!(orb[1].1.n(), 0);
    }

    #[test]
    fn weights_examples() {
        assert_eq!(bh(&[&[2, 1], &[0, 3]]).unwrap().weights(), vec![qf(1, 3), qf(1, 3)]);
        assert_eq!(bh(&[&[2]]).unwrap().weights(), vec![qf(1, 2)]);
        assert_eq!(bh(&[&[3, 1], &[1, 2]]).unwrap().weights(), vec![qf(1, 5), qf(2, 5)]);
    }

    #[test]
    fn propagation_examples() {
        let chain = bh(&[&[2, 1], &[0, 3]]).unwrap();
        assert_eq!(chain.check_noninteger_propagation(&[1, 1]), Ok(true));
        assert_eq!(chain.check_noninteger_propagation(&[0, 0]), Ok(true));
        assert_eq!(chain.check_noninteger_propagation(&[0, 1]), Ok(true));
        let lp = bh(&[&[3, 1], &[1, 2]]).unwrap();
        assert_eq!(lp.check_noninteger_propagation(&[1, 0]), Ok(true));
        let two = bh(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(two.check_noninteger_propagation(&[1, 0]), Err(BhError::NotAnAtom));
    }

    #[test]
    fn empty_matrix() {
        let e = BHMatrix::validate(vec![]).unwrap();
        assert_eq!(e.det(), 1);
        assert!(e.decompose().atoms.is_empty());
        assert_eq!(e.group_elements().len(), 1);
    }
}
