//! The cohomology-level duality matrix for a chain and a loop.

use bhlab::bhmat::BHMatrix;
use bhlab::cohoring::{duality_matrix, mat_mul};

fn main() {
    for e in [vec![vec![2, 1], vec![0, 3]], vec![vec![2, 1], vec![1, 2]]] {
        let m = BHMatrix::validate(e).unwrap();
        let d = duality_matrix(&m).unwrap();
        println!("{m}");
        for p in d.pairs() {
            let image: Vec<String> = p.image.iter().map(|t| format!("({})·{}", t.coefficient, t.monomial)).collect();
            println!("  {:<12} -> {}", p.source.monomial, image.join(" + "));
        }
        let back = duality_matrix(&m.transpose()).unwrap();
        let diag: Vec<String> = mat_mul(&back.entries, &d.entries).iter().enumerate().map(|(i, r)| r[i].to_string()).collect();
        println!("  H(Δ')H(Δ) = diag({})", diag.join(", "));
    }
}
