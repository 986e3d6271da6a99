//! Incremental sparse row echelon form with combination tracking.
//!
//! Elimination is generic over the scalar. [`Small`] (`i128` fractions with
//! checked arithmetic) is tried first; any overflow aborts and the caller
//! reruns over `BigRational`, so every answer stays exact.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};

use crate::rational::Q;

pub type Small = Ratio<i128>;

/// Exact field scalar with fallible arithmetic.
pub trait Scalar: Clone + Zero + One + PartialEq + std::fmt::Debug {
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self>;
    fn mul_(&self, o: &Self) -> Option<Self>;
    fn add_(&self, o: &Self) -> Option<Self>;
    fn inv(&self) -> Option<Self>;
    fn from_q(q: &Q) -> Option<Self>;
    fn to_q(&self) -> Q;
}

impl Scalar for Q {
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        Some(self - a * b)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add_(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn inv(&self) -> Option<Self> {
        Some(self.recip())
    }
    fn from_q(q: &Q) -> Option<Self> {
        Some(q.clone())
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
}

impl Scalar for Small {
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(&a.checked_mul(b)?)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn add_(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn inv(&self) -> Option<Self> {
        Small::one().checked_div(self)
    }
    fn from_q(q: &Q) -> Option<Self> {
        use num_traits::ToPrimitive;
        Some(Small::new(q.numer().to_i128()?, q.denom().to_i128()?))
    }
    fn to_q(&self) -> Q {
        Q::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Sparse vector as a sorted list of `(column, value)` with no zeros.
pub type Sparse<F> = Vec<(usize, F)>;
pub type SparseVec = Sparse<Q>;

/// Arithmetic overflow in the small scalar type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// `v - a * row`
fn axpy<F: Scalar>(v: &[(usize, F)], a: &F, row: &[(usize, F)]) -> Result<Sparse<F>, Overflow> {
    let mut out = Vec::with_capacity(v.len() + row.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < row.len() {
        if j == row.len() || (i < v.len() && v[i].0 < row[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || row[j].0 < v[i].0 {
            let x = F::zero().sub_mul(a, &row[j].1).ok_or(Overflow)?;
            out.push((row[j].0, x));
            j += 1;
        } else {
            let x = v[i].1.sub_mul(a, &row[j].1).ok_or(Overflow)?;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn add_into<F: Scalar>(combo: &mut HashMap<usize, F>, g: usize, x: F) -> Result<(), Overflow> {
    let e = combo.entry(g).or_insert_with(F::zero);
    *e = e.add_(&x).ok_or(Overflow)?;
    if e.is_zero() {
        combo.remove(&g);
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Row<F> {
    vec: Sparse<F>,
    combo: HashMap<usize, F>,
}

/// Semi-reduced echelon basis: each row has leading coefficient 1 at its pivot.
#[derive(Debug, Clone)]
pub struct Echelon<F = Q> {
    rows: Vec<Row<F>>,
    pivots: HashMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// `v = residual + sum combo_g * generator_g`
#[derive(Debug, Clone)]
pub struct Reduction<F = Q> {
    pub residual: Sparse<F>,
    pub combo: HashMap<usize, F>,
}

impl<F: Scalar> Echelon<F> {
    pub fn new(track: bool) -> Self {
        Echelon { rows: Vec::new(), pivots: HashMap::new(), track, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn try_reduce(&self, v: &[(usize, F)]) -> Result<Reduction<F>, Overflow> {
        let mut v = v.to_vec();
        let mut combo = HashMap::new();
        let mut pos = 0usize;
        while pos < v.len() {
            let (col, coef) = (v[pos].0, v[pos].1.clone());
            let Some(&r) = self.pivots.get(&col) else {
                pos += 1;
                continue;
            };
            let row = &self.rows[r];
            // entries before pos are untouched: row starts at col
            let tail = axpy(&v[pos..], &coef, &row.vec)?;
            v.truncate(pos);
            v.extend(tail);
            if self.track {
                for (g, x) in &row.combo {
                    add_into(&mut combo, *g, coef.mul_(x).ok_or(Overflow)?)?;
                }
            }
        }
        Ok(Reduction { residual: v, combo })
    }

    /// Inserts a generator; returns whether the rank grew.
    pub fn try_insert(&mut self, v: &[(usize, F)]) -> Result<bool, Overflow> {
        let id = self.inserted;
        self.inserted += 1;
        let Reduction { residual, combo } = self.try_reduce(v)?;
        let Some((lead, lc)) = residual.first().cloned() else { return Ok(false) };
        let inv = lc.inv().ok_or(Overflow)?;
        let vec = residual
            .iter()
            .map(|(c, x)| Ok((*c, x.mul_(&inv).ok_or(Overflow)?)))
            .collect::<Result<Sparse<F>, Overflow>>()?;
        let mut c = HashMap::new();
        if self.track {
            for (g, x) in combo {
                c.insert(g, F::zero().sub_mul(&x, &inv).ok_or(Overflow)?);
            }
            c.insert(id, inv);
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(Row { vec, combo: c });
        Ok(true)
    }
}

impl Echelon<Q> {
    pub fn reduce(&self, v: &[(usize, Q)]) -> Reduction<Q> {
        self.try_reduce(v).expect("rational arithmetic cannot overflow")
    }

    pub fn insert(&mut self, v: &[(usize, Q)]) -> bool {
        self.try_insert(v).expect("rational arithmetic cannot overflow")
    }

    pub fn contains(&self, v: &[(usize, Q)]) -> bool {
        self.reduce(v).residual.is_empty()
    }
}

/// Normalizes an unsorted list into a sparse vector.
pub fn sparse_from<F: Scalar>(mut entries: Vec<(usize, F)>) -> Sparse<F> {
    entries.sort_by_key(|e| e.0);
    let mut out: Sparse<F> = Vec::with_capacity(entries.len());
    for (c, x) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = last.1.add_(&x).expect("sum"),
            _ => out.push((c, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

fn try_rank<F: Scalar>(vs: &[SparseVec]) -> Result<usize, Overflow> {
    let mut e = Echelon::<F>::new(false);
    for v in vs {
        let w = v.iter().map(|(c, x)| Ok((*c, F::from_q(x).ok_or(Overflow)?))).collect::<Result<Vec<_>, _>>()?;
        e.try_insert(&w)?;
    }
    Ok(e.rank())
}

/// Exact rank, trying machine-sized fractions first.
pub fn rank(vs: &[SparseVec]) -> usize {
    try_rank::<Small>(vs).unwrap_or_else(|_| try_rank::<Q>(vs).expect("exact"))
}

/// Kernel of the linear map sending generator `k` to `images[k]`.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::<Q>::new(true);
    let mut out = Vec::new();
    for (k, v) in images.iter().enumerate() {
        let red = e.reduce(v);
        if red.residual.is_empty() {
            let mut ker: Vec<(usize, Q)> = red.combo.into_iter().map(|(g, x)| (g, -x)).collect();
            ker.push((k, Q::one()));
            out.push(sparse_from(ker));
        }
        e.insert(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn sv(e: &[(usize, i64)]) -> SparseVec {
        e.iter().map(|(c, x)| (*c, qi(*x))).collect()
    }

    fn combine(gens: &[SparseVec], combo: &[(usize, Q)]) -> SparseVec {
        let mut all = Vec::new();
        for (g, x) in combo {
            all.extend(gens[*g].iter().map(|(c, y)| (*c, x * y)));
        }
        sparse_from(all)
    }

    #[test]
    fn rank_and_kernel() {
        let vs = vec![sv(&[(0, 1), (1, 2)]), sv(&[(1, 1)]), sv(&[(0, 2), (1, 5)]), sv(&[(0, 3)])];
        assert_eq!(rank(&vs), 2);
        let k = kernel(&vs);
        assert_eq!(k.len(), 2);
        for ker in &k {
            assert!(combine(&vs, ker).is_empty());
        }
    }

    #[test]
    fn tracked_reduction() {
        let mut e = Echelon::<Q>::new(true);
        let g = vec![sv(&[(0, 2), (2, 1)]), sv(&[(1, 3), (2, 1)])];
        for v in &g {
            e.insert(v);
        }
        let target = sv(&[(0, 4), (1, 3), (2, 3)]);
        let red = e.reduce(&target);
        assert!(red.residual.is_empty());
        let combo: Vec<(usize, Q)> = red.combo.into_iter().collect();
        assert_eq!(combine(&g, &combo), target);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 3;
        let vs: Vec<SparseVec> = (0..6)
            .map(|k| sv(&[(0, big - k), (1, big + k * 7), (2, k * k * (big / 25) + 1)]))
            .collect();
        assert_eq!(rank(&vs), try_rank::<Q>(&vs).unwrap());
    }
}
