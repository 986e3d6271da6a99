//! Orbifold cohomology bases and Pochhammer reduction onto them.

use bhlab::bhmat::BHMatrix;
use bhlab::chaincx::{ChainElement, Monomial};
use bhlab::cohoring::{orbifold_basis, Reducer};

fn main() {
    let m = BHMatrix::validate(vec![vec![2, 1], vec![0, 3]]).unwrap();
    for row in orbifold_basis(&m).table() {
        println!("{:<12} {:>2} {:>3}", row.monomial, row.total, row.half_sharp);
    }
    let red = Reducer::new(&BHMatrix::validate(vec![vec![2]]).unwrap());
    for k in 0..4 {
        let mono = Monomial::x(&[2 * k + 1], &[0]);
        let v = ChainElement::from_monomial(mono.clone());
        println!("{} = {}", mono.render(), red.closed_form(&v).unwrap().reduced);
    }
}
