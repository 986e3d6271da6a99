//! Validate a few exponent matrices and list their sectors.

use bhlab::bhmat::BHMatrix;
use bhlab::rational::fmt_q;

fn main() {
    for e in [vec![vec![2, 1], vec![0, 3]], vec![vec![3, 1], vec![1, 2]], vec![vec![2, 0], vec![0, 3]], vec![vec![1, 1], vec![1, 1]]] {
        match BHMatrix::validate(e.clone()) {
            Ok(m) => {
                let atoms: Vec<String> = m.decomposition().atoms.iter().map(|a| a.to_string()).collect();
                println!("{m}: {} det={}", atoms.join(" + "), m.det());
                for s in m.group_elements() {
                    let c: Vec<String> = s.charges.iter().map(fmt_q).collect();
                    println!("  lambda={:?} charges=({}) fixed={:?}", s.lambda, c.join(","), s.fixed());
                }
            }
            Err(err) => println!("{e:?}: {err}"),
        }
    }
}
