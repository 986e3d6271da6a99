//! The star operator on the exterior algebra and its intertwining rules.

use bhlab::bhmat::BHMatrix;
use bhlab::clifford::{contract_e, e_op, star, ExtElement, PiLaurent, Wedge};

fn main() {
    let m = BHMatrix::validate(vec![vec![2, 1], vec![0, 3]]).unwrap();
    let t = m.transpose();
    for w in 0..4u32 {
        let v = ExtElement::monomial(Wedge(w), PiLaurent::one());
        println!("*({v}) = {}    ** = {}", star(&m, &v), star(&t, &star(&m, &v)));
    }
    let v = ExtElement::monomial(Wedge(0b01), PiLaurent::one());
    println!("*(E_2 e1) = {}", star(&m, &e_op(&m, 1, &v)));
    println!("e2^v *(e1) = {}", contract_e(1, &star(&m, &v)));
}
