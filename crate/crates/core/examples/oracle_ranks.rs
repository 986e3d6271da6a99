//! Cohomology ranks of truncated complexes against the orbifold Milnor count.

use bhlab::bhmat::BHMatrix;
use bhlab::homolab::{default_window, verify_quasi_iso};

fn main() {
    for e in [vec![vec![2]], vec![vec![2, 1], vec![0, 3]], vec![vec![2, 1], vec![1, 2]]] {
        let m = BHMatrix::validate(e).unwrap();
        let r = verify_quasi_iso(&m, default_window(&m)).unwrap();
        println!("{m} window={} total={} milnor={} pass={}", r.window, r.total_b, r.total_milnor, r.pass);
        for s in &r.sectors {
            println!("  lambda={:?} B={:?} C={:?} milnor={}", s.lambda, s.ranks_b, s.ranks_c, s.milnor);
        }
    }
}
