//! Differentials, gradings and the duality map on individual monomials.

use bhlab::bhmat::BHMatrix;
use bhlab::chaincx::{ChainElement, Cx, Monomial};

fn main() {
    let m = BHMatrix::validate(vec![vec![2, 1], vec![0, 3]]).unwrap();
    let cx = Cx::new(&m);
    let v = ChainElement::from_monomial(Monomial::x(&[2, 1], &[0, 1]));
    println!("v      = {v}");
    println!("d v    = {}", cx.apply_d(&v));
    println!("D v    = {}", cx.apply_total(&v));
    println!("D D v  = {}", cx.apply_total(&cx.apply_total(&v)));
    println!("Δ v    = {}", cx.delta(&v).unwrap());
    let g = cx.gradings(&Monomial::x(&[2, 1], &[0, 1])).unwrap();
    println!("gradings: Q={} Q^v={} ext={} #-#^v={}", g.q, g.qvee, g.ext, g.sharp_diff());
}
