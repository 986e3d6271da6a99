//! Twisted Frobenius for x1^2 and its commutation with duality.

use bhlab::bhmat::BHMatrix;
use bhlab::dwork::{tfr_matrix, verify_commutation};

fn main() {
    let m = BHMatrix::validate(vec![vec![2]]).unwrap();
    for p in [5u64, 7, 11] {
        let prec = 2 * (p as i64 - 1);
        let f = tfr_matrix(&m, p, prec).unwrap();
        for e in f.report() {
            println!("p={p} {} <- {}: σ^{} π^{} digits {:?}", e.row, e.col, e.sigma_power, e.valuation, &e.pi_digits[..6]);
        }
    }
    let a = BHMatrix::validate(vec![vec![2, 1], vec![0, 3]]).unwrap();
    println!("{:?}", verify_commutation(&a, 7, 12).unwrap());
}
