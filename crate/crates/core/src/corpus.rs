//! Built-in test matrices: every chain and loop with `n ≤ 3` and exponents in
//! `2..=4`, loops taken up to rotation.

use crate::bhmat::{Atom, BHMatrix};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub atom: Atom,
    pub matrix: BHMatrix,
}

fn exponent_vectors(n: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<u32>| (lo..=hi).map(move |a| [v.clone(), vec![a]].concat())).collect();
    }
    out
}

fn push(out: &mut Vec<CorpusEntry>, atom: Atom) {
    if out.iter().any(|e| e.atom.equivalent(&atom)) {
        return;
    }
    if let Ok(matrix) = BHMatrix::from_atom(&atom) {
        out.push(CorpusEntry { atom, matrix });
    }
}

/// Chains and loops with at most `max_n` variables and exponents up to `max_exp`.
pub fn atoms(max_n: usize, max_exp: u32) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for a in exponent_vectors(n, 2, max_exp) {
            push(&mut out, Atom::Chain(a));
        }
    }
    for n in 2..=max_n {
        for a in exponent_vectors(n, 2, max_exp) {
            push(&mut out, Atom::Loop(a));
        }
    }
    out
}

/// The default corpus (`n ≤ 3`, exponents `≤ 4`).
pub fn corpus() -> Vec<CorpusEntry> {
    atoms(3, 4)
}

/// A smaller corpus for expensive suites (`n ≤ 2` plus a few `n = 3` atoms).
pub fn small_corpus() -> Vec<CorpusEntry> {
    let mut out = atoms(2, 4);
    for a in [Atom::Chain(vec![2, 2, 2]), Atom::Loop(vec![2, 2, 2]), Atom::Chain(vec![3, 2, 2])] {
        push(&mut out, a);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_size() {
        let c = corpus();
        assert!(c.len() >= 30);
        assert_eq!(c.iter().filter(|e| matches!(e.atom, Atom::Chain(_))).count(), 3 + 9 + 27);
        assert!(c.iter().all(|e| e.matrix.n() <= 3));
    }
}
